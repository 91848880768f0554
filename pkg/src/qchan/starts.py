"""Random pure start states for the multi-start ascents."""

from __future__ import annotations

import numpy as np

from .errors import BadRecipe

RECIPES = ("random_pure", "random_bipartite", "max_entangled_phases", "product_sum")

# |1>|3> + |2>|4> + |3>|2> + |4>|1>, zero-based
_PATTERN_4 = (2, 3, 1, 0)


def random_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    """Unit vector whose raw entries have real and imaginary parts uniform on [-1, 1]."""
    v = rng.uniform(-1, 1, d) + 1j * rng.uniform(-1, 1, d)
    return v / np.linalg.norm(v)


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    v = random_vector(d, rng)
    return np.outer(v, v.conj())


def _pattern(d: int) -> tuple[int, ...]:
    if d == 4:
        return _PATTERN_4
    return tuple((j + 1) % d for j in range(d))


def random_start_vector(recipe: str, dims, rng: np.random.Generator) -> np.ndarray:
    """Draw a unit vector according to ``recipe``.

    ``dims`` is an int for single-system recipes or a pair ``(d1, d2)``.
    ``max_entangled_phases`` uses sum_j c_j |j>|pi(j)> with |c_j| = 1/sqrt(d);
    for d = 4 the pairing is 1-3, 2-4, 3-2, 4-1 and otherwise j -> j+1 mod d.
    ``product_sum`` normalises sum_{i<d} |phi_i>|phi_i> with random phi_i.
    """
    if isinstance(dims, (int, np.integer)):
        d1, d2 = int(dims), None
    else:
        d1, d2 = (int(x) for x in dims)
    if recipe == "random_pure":
        return random_vector(d1 if d2 is None else d1 * d2, rng)
    if d2 is None:
        raise BadRecipe(f"recipe {recipe!r} needs bipartite dims")
    if recipe == "random_bipartite":
        return random_vector(d1 * d2, rng)
    if recipe == "max_entangled_phases":
        if d1 != d2:
            raise BadRecipe("max_entangled_phases needs equal local dimensions")
        theta = rng.uniform(0, 2 * np.pi, d1)
        v = np.zeros(d1 * d2, dtype=complex)
        for j, k in enumerate(_pattern(d1)):
            v[j * d2 + k] = np.exp(1j * theta[j]) / np.sqrt(d1)
        return v
    if recipe == "product_sum":
        if d1 != d2:
            raise BadRecipe("product_sum needs equal local dimensions")
        v = np.zeros(d1 * d2, dtype=complex)
        for _ in range(d1):
            phi = random_vector(d1, rng)
            v += np.kron(phi, phi)
        return v / np.linalg.norm(v)
    raise BadRecipe(f"unknown start recipe {recipe!r}")


def random_start(recipe: str, dims, rng: np.random.Generator) -> np.ndarray:
    """Density matrix of :func:`random_start_vector`."""
    v = random_start_vector(recipe, dims, rng)
    return np.outer(v, v.conj())


def start_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for start ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))
