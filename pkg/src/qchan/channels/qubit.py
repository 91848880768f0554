"""Unital qubit channels in Pauli-weight form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import WeightsInvalid


def qubit_lambdas(alphas) -> tuple[float, float, float]:
    """Bloch-axis contractions ``lambda_i = 2(alpha_0 + alpha_i) - 1``."""
    al = np.asarray(alphas, dtype=float)
    if al.shape != (4,) or np.any(al < 0) or abs(al.sum() - 1) > 1e-12:
        raise WeightsInvalid("alphas must be four non-negative reals summing to 1")
    return tuple(float(2 * (al[0] + al[i]) - 1) for i in (1, 2, 3))


@dataclass(frozen=True)
class QubitUnitalParams:
    alphas: tuple[float, float, float, float]

    @property
    def lambdas(self) -> tuple[float, float, float]:
        return qubit_lambdas(self.alphas)

    def axis_eigenvalues(self, i: int) -> tuple[float, float]:
        """Output eigenvalues (1 +- lambda_i)/2 for the inputs (I +- sigma_i)/2."""
        lam = self.lambdas[i - 1]
        return (0.5 * (1 + lam), 0.5 * (1 - lam))
