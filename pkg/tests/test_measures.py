import math

import numpy as np
import pytest

from oracles import entropy_bits, random_density, random_full_rank_density, random_ket
from qchan.ascent import pnorm_ascent, relent_ascent
from qchan.channels import DoublyDepolarizing, Qutrit, build, build_depolarizing, choi_matrix, identity_channel
from qchan.errors import DimensionMismatch, LengthMismatch, NotAState, OutOfRange, SupportViolation
from qchan.matcore import proj
from qchan.measures import (
    depol_reference,
    entropy,
    is_ppt,
    majorizes,
    max_output_p_norm,
    min_output_entropy,
    min_pt_eigenvalue,
    relative_entropy,
    submajorizes,
)

SPEC_0_6 = [11 / 15, 2 / 15, 2 / 15]


def test_entropy_examples(rng):
    assert entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-14)
    assert entropy(proj(random_ket(3, rng))) == pytest.approx(0.0, abs=1e-12)
    out = build_depolarizing(3, 0.6)(proj(random_ket(3, rng)))
    assert entropy(out) == pytest.approx(entropy_bits(SPEC_0_6), abs=1e-13)


def test_entropy_rejects_non_states():
    with pytest.raises(NotAState):
        entropy(np.eye(2))
    with pytest.raises(NotAState):
        entropy(np.diag([1.2, -0.2]))


def test_relative_entropy_examples(rng):
    rho = random_density(3, rng)
    assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)
    for _ in range(20):
        r = random_density(4, rng)
        assert relative_entropy(r, np.eye(4) / 4) == pytest.approx(2 - entropy(r), abs=1e-12)
    assert relative_entropy(np.diag([1.0, 0.0]), np.diag([0.75, 0.25])) == pytest.approx(-math.log2(0.75), abs=1e-15)


def test_relative_entropy_support_violation():
    with pytest.raises(SupportViolation):
        relative_entropy(np.eye(2) / 2, np.diag([1.0, 0.0]))
    # rank-deficient gamma is fine when rho lives in its support
    assert relative_entropy(np.diag([1.0, 0.0]), np.diag([1.0, 0.0])) == pytest.approx(0.0, abs=1e-15)


def test_relative_entropy_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        relative_entropy(np.eye(2) / 2, np.eye(3) / 3)


def test_relative_entropy_zero_only_at_equality(rng):
    rho = random_full_rank_density(3, rng)
    sigma = 0.999 * rho + 0.001 * np.eye(3) / 3
    assert relative_entropy(sigma, rho) > 0


def test_p_norm_identity_channel():
    for p in (1.5, 2.0, np.inf):
        rep = max_output_p_norm(identity_channel(3), p, starts=3)
        assert rep.optimum_value == pytest.approx(1.0, abs=1e-12)


def test_p_norm_depolarizing_closed_form():
    rep = max_output_p_norm(build_depolarizing(3, 0.6), 2.0, starts=3)
    assert rep.optimum_value == pytest.approx(math.sqrt((0.6 + 0.4 / 3) ** 2 + 2 * (0.4 / 3) ** 2), abs=1e-12)


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, np.inf])
def test_p_norm_qutrit_matches_depolarizing(p):
    spec = Qutrit((0.35, 0.15, 0.1, 0.05), theta=0.3)
    rep = max_output_p_norm(build(spec), p, starts=20, seed=4)
    assert rep.optimum_value == pytest.approx(depol_reference(3, spec.a, p), abs=1e-8)
    assert rep.all_converged
    assert all(t.is_monotone() for t in rep.traces)
    # the maximiser is the common eigenvector e_0
    assert abs(rep.argmax_state[0, 0]) == pytest.approx(1.0, abs=1e-6)


def test_min_entropy_identity_channel():
    assert min_output_entropy(identity_channel(2), starts=2).optimum_value == pytest.approx(0.0, abs=1e-12)


def test_min_entropy_qutrit_achieved_at_e0():
    spec = Qutrit((0.3, 0.2, 0.1, 0.05))
    rep = min_output_entropy(build(spec), starts=20, seed=1)
    a = spec.a
    expect = entropy_bits([a + (1 - a) / 3, (1 - a) / 3, (1 - a) / 3])
    assert rep.optimum_value == pytest.approx(expect, abs=1e-8)
    assert abs(rep.argmax_state[0, 0]) == pytest.approx(1.0, abs=1e-6)
    assert all(t.is_monotone() for t in rep.traces)


def test_min_entropy_dd_achieved_on_first_block():
    a = 0.7
    rep = min_output_entropy(build(DoublyDepolarizing(4, 2, a, 0.6)), starts=20, seed=2)
    assert rep.optimum_value == pytest.approx(entropy_bits([a + (1 - a) / 4] + [(1 - a) / 4] * 3), abs=1e-8)
    assert np.trace(rep.argmax_state[:2, :2]).real == pytest.approx(1.0, abs=1e-6)


def test_purity_report_shape():
    rep = max_output_p_norm(build_depolarizing(2, 0.5), 2.0, starts=4, seed=9)
    assert rep.starts_used == 4
    assert np.trace(rep.argmax_state).real == pytest.approx(1.0, abs=1e-10)
    assert np.linalg.matrix_rank(rep.argmax_state, tol=1e-10) == 1
    assert len(rep.per_start_values) == 4


def test_purity_inputs_checked():
    with pytest.raises(OutOfRange):
        max_output_p_norm(identity_channel(2), 1.0)
    with pytest.raises(OutOfRange):
        min_output_entropy(identity_channel(2), starts=0)


def test_multistart_is_deterministic():
    chan = build(Qutrit((0.3, 0.2, 0.1, 0.05)))
    a = min_output_entropy(chan, starts=5, seed=11)
    b = min_output_entropy(chan, starts=5, seed=11)
    assert a.per_start_values == b.per_start_values


def test_relent_ascent_stationary_start_converges_immediately():
    chan = build(Qutrit((0.3, 0.2, 0.1, 0.05)))
    log_a = -math.log2(3) * np.eye(3)
    t = relent_ascent(chan, log_a, np.array([1, 0, 0], dtype=complex))
    assert t.converged
    assert t.iterations <= 2
    assert np.ptp(t.trace) < 1e-15


def test_pnorm_ascent_residual_at_convergence(rng):
    chan = build(DoublyDepolarizing(4, 2, 0.6, 0.3))
    t = pnorm_ascent(chan, 2.0, random_ket(4, rng))
    assert t.converged
    assert t.residual <= 1e-8


def test_majorizes_examples(rng):
    for _ in range(10):
        w = np.linalg.eigvalsh(random_density(3, rng))
        assert majorizes([1, 0, 0], w)
    assert majorizes([0.6, 0.3, 0.1], [0.5, 0.3, 0.2])
    assert not majorizes([0.5, 0.3, 0.2], [0.6, 0.3, 0.1])
    with pytest.raises(LengthMismatch):
        majorizes([1, 0], [1, 0, 0])


def test_majorizes_needs_equal_totals():
    assert not majorizes([0.6, 0.3], [0.5, 0.3])


def test_submajorizes_examples():
    assert submajorizes([0.4, 0.3], [0.4, 0.3])
    assert not submajorizes([0.5, 0.2], [0.6, 0.3])
    assert submajorizes([0.6, 0.3], [0.5, 0.2])
    with pytest.raises(LengthMismatch):
        submajorizes([1.0], [0.5, 0.5])


def test_depol_reference_examples():
    for d in (2, 3, 5):
        assert depol_reference(d, 1.0, 2.0) == pytest.approx(1.0)
        assert depol_reference(d, 1.0) == pytest.approx(0.0, abs=1e-15)
        for p in (1.5, 2.0, 4.0):
            assert depol_reference(d, 0.0, p) == pytest.approx(d ** (1 / p - 1), rel=1e-14)
        assert depol_reference(d, 0.0) == pytest.approx(math.log2(d), abs=1e-14)
    assert depol_reference(3, 0.6) == pytest.approx(entropy_bits(SPEC_0_6), abs=1e-15)
    with pytest.raises(OutOfRange):
        depol_reference(3, 1.5)


def test_ppt_examples():
    c = choi_matrix(build_depolarizing(2, 1 / 3))
    assert is_ppt(c, 2, 2)
    assert abs(min_pt_eigenvalue(c, 2, 2)) < 1e-12
    c5 = choi_matrix(build_depolarizing(2, 0.5))
    assert not is_ppt(c5, 2, 2)
    # 4x4 oracle: PT of the a = 0.5 Choi has eigenvalues 3/8 (x3) and -1/8
    assert min_pt_eigenvalue(c5, 2, 2) == pytest.approx(-1 / 8, abs=1e-14)
    assert not is_ppt(choi_matrix(identity_channel(3)), 3, 3)
    with pytest.raises(DimensionMismatch):
        is_ppt(np.eye(4) / 4, 2, 3)
