import json
import math

import numpy as np
import pytest

from oracles import blahut_arimoto_naive, brute_argmax, entropy_bits, random_density, successive_basis_output
from qchan.capacity import (
    Ensemble,
    capacity_candidate,
    classical_capacity,
    cq_matrix,
    dd_capacity_objective,
    diagonal_family_capacity,
    doubly_depol_optimal_ensemble,
    holevo_chi,
    qutrit_capacity_objective,
    qutrit_optimal_ensemble,
    random_start,
    random_start_vector,
    capacity_ascent,
    start_rng,
    tensor_square_candidate,
    verify_candidate,
)
from qchan.channels import (
    Diagonal,
    DoublyDepolarizing,
    Qutrit,
    Successive,
    apply,
    build,
    build_depolarizing,
    identity_channel,
    qutrit_basis,
    tensor,
)
from qchan.errors import BadRecipe, NotAState, NotStochastic, OutOfRange, SupportViolation
from qchan.matcore import proj
from qchan.measures import depol_reference, relative_entropy

QUTRIT_REF = Qutrit((0.45, 0.25 / 3, 0.25 / 3, 0.25 / 3))  # a = 0.7, a_0 = 0.45, rest equal


def _basis(d):
    return [proj(np.eye(d)[:, j]) for j in range(d)]


# ---------------------------------------------------------------- ascent


def test_capacity_ascent_depolarizing_reaches_capacity(rng):
    chan = build_depolarizing(3, 0.6)
    rep = capacity_ascent(chan, np.eye(3) / 3, random_density(3, rng))
    assert rep.converged
    assert rep.objective == pytest.approx(math.log2(3) - depol_reference(3, 0.6), abs=1e-10)
    assert rep.monotone()


def test_capacity_ascent_stationary_start():
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    rep = capacity_ascent(build(QUTRIT_REF), opt.avg_output, proj([1, 0, 0]))
    assert rep.converged
    assert rep.iterations <= 2
    assert np.ptp(rep.trace) < 1e-14


def test_capacity_ascent_residual_and_monotone(rng):
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    chan = build(QUTRIT_REF)
    for i in range(10):
        rep = capacity_ascent(chan, opt.avg_output, random_start("random_pure", 3, start_rng(5, i)))
        assert rep.converged and rep.residual <= 1e-8
        assert np.all(np.diff(rep.trace) >= -1e-12)
        assert rep.objective <= opt.c_star + 1e-9


def test_capacity_ascent_needs_full_support():
    with pytest.raises(SupportViolation):
        capacity_ascent(build_depolarizing(2, 0.5), np.diag([1.0, 0.0]), proj([1, 0]))


# ---------------------------------------------------------------- verification


def test_verify_reference_qutrit_point():
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    cert = verify_candidate(build(QUTRIT_REF), opt.avg_output, opt.c_star, starts=50, seed=0)
    assert cert.verified
    assert cert.worst_violation <= 1e-9
    assert cert.all_converged
    assert cert.best_challenger is None


def test_verify_detects_lowered_candidate():
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    cert = verify_candidate(build(QUTRIT_REF), opt.avg_output, opt.c_star - 0.01, starts=10, seed=0)
    assert not cert.verified
    assert cert.worst_violation == pytest.approx(0.01, abs=1e-9)
    assert cert.best_challenger is not None


def test_verify_additivity_dd4():
    spec = DoublyDepolarizing(4, 2, 0.7, 0.7)
    chan = build(spec)
    cand = tensor_square_candidate(capacity_candidate(spec))
    cert = verify_candidate(
        tensor(chan, chan),
        cand.avg_output,
        cand.c_star,
        starts=30,
        seed=0,
        recipes=("random_bipartite", "max_entangled_phases", "product_sum"),
        dims=(4, 4),
    )
    assert cert.verified, cert.worst_violation


def test_verify_diagonal_family_candidate():
    spec = Diagonal(3, (0.4, 0.3), [[0, 0, 0], [0, 2 * math.pi / 3, 4 * math.pi / 3]])
    chan = build(spec)
    cert = verify_candidate(chan, apply(chan, np.eye(3) / 3), math.log2(3) - depol_reference(3, spec.a), starts=30)
    assert cert.verified


def test_verify_is_deterministic_and_worker_independent():
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    chan = build(QUTRIT_REF)
    a = verify_candidate(chan, opt.avg_output, opt.c_star, starts=6, seed=7)
    b = verify_candidate(chan, opt.avg_output, opt.c_star, starts=6, seed=7, workers=2)
    assert a.worst_violation == b.worst_violation
    assert a.iterations_max == b.iterations_max


def test_certificate_record_is_json():
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    cert = verify_candidate(build(QUTRIT_REF), opt.avg_output, opt.c_star, starts=3, seed=1)
    rec = json.loads(json.dumps(cert.record("qutrit", {"a_k": list(QUTRIT_REF.a_k)})))
    assert set(rec) == {"family", "params", "candidate_capacity", "worst_violation", "verified", "seed", "starts", "iterations_max"}


def test_maximiser_lives_on_e0_or_its_complement():
    # with equal Pauli weights every pure state in span{e1, e2} is optimal
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    cert = verify_candidate(build(QUTRIT_REF), opt.avg_output, opt.c_star, starts=20, seed=3)
    assert abs(cert.best_objective - opt.c_star) <= 1e-9
    w0 = cert.best_state[0, 0].real
    assert min(w0, 1 - w0) < 1e-6
    assert np.linalg.matrix_rank(cert.best_state, tol=1e-8) == 1


# ---------------------------------------------------------------- Holevo quantity


def test_holevo_single_state_is_zero(rng):
    ens = Ensemble([1.0], [random_density(3, rng)])
    assert holevo_chi(build(QUTRIT_REF), ens) == pytest.approx(0.0, abs=1e-14)


def test_holevo_orthogonal_basis_depolarizing():
    ens = Ensemble([1 / 3] * 3, _basis(3))
    chi = holevo_chi(build_depolarizing(3, 0.6), ens)
    assert chi == pytest.approx(math.log2(3) - entropy_bits([11 / 15, 2 / 15, 2 / 15]), abs=1e-13)


def test_holevo_relative_entropy_identity(rng):
    chan = build(DoublyDepolarizing(4, 2, 0.6, 0.3))
    w = rng.dirichlet(np.ones(4))
    ens = Ensemble(w, [random_density(4, rng) for _ in range(4)])
    avg = apply(chan, ens.average)
    rhs = sum(p * relative_entropy(apply(chan, s), avg) for p, s in zip(w, ens.states))
    assert holevo_chi(chan, ens) == pytest.approx(rhs, abs=1e-11)


def test_holevo_qutrit_optimum_matches_objective():
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    assert holevo_chi(build(QUTRIT_REF), opt.ensemble) == pytest.approx(opt.c_star, abs=1e-13)
    assert opt.c_star == pytest.approx(qutrit_capacity_objective(opt.x, QUTRIT_REF.a, QUTRIT_REF.lambda1), abs=1e-15)


def test_ensemble_validation():
    with pytest.raises(NotAState):
        Ensemble([0.5, 0.6], _basis(2))
    with pytest.raises(NotAState):
        Ensemble([1.0], [np.eye(2)])
    with pytest.raises(NotAState):
        Ensemble([0.5, 0.5], _basis(3))


# ---------------------------------------------------------------- closed-form ensembles


def test_qutrit_degenerate_gives_one_third():
    opt = qutrit_optimal_ensemble(Qutrit((0.35, 0.25, 0.0, 0.0)))
    assert opt.delta_s == 0.0
    assert opt.x == 1 / 3


@pytest.mark.parametrize("a_k", [(0.3, 0.2, 0.1, 0.05), (0.45, 0.1, 0.1, 0.05), (0.5, 0.2, 0.15, 0.05), (0.4, 0.02, 0.02, 0.01)])
def test_qutrit_x_below_one_third(a_k):
    opt = qutrit_optimal_ensemble(Qutrit(a_k))
    assert 0 < opt.x < 1 / 3


@pytest.mark.parametrize("a_k", [(0.4, 0.3, 0.0, 0.0), (0.45, 0.1, 0.1, 0.05), (0.3, 0.15, 0.1, 0.05)])
def test_qutrit_x_matches_brute_force(a_k):
    spec = Qutrit(a_k)
    opt = qutrit_optimal_ensemble(spec)
    x_bf = brute_argmax(lambda x: qutrit_capacity_objective(x, spec.a, spec.lambda1), 0.0, 0.5)
    assert opt.x == pytest.approx(x_bf, abs=1e-6)


def test_qutrit_x_matches_printed_form():
    # the displayed expression and the rearranged one agree numerically
    spec = Qutrit((0.3, 0.15, 0.1, 0.05))
    opt = qutrit_optimal_ensemble(spec)
    a = spec.a
    r = 2 ** (-opt.delta_s / a)
    printed = ((1 + 2 * a) * r - (1 - a)) / (3 * a * (1 + 2 * r))
    assert opt.x == pytest.approx(printed, abs=1e-14)


def test_dd_b1_gives_uniform():
    opt = doubly_depol_optimal_ensemble(4, 2, 0.7, 1.0)
    assert opt.t == pytest.approx(0.25, abs=1e-15)
    assert opt.t_perp == pytest.approx(0.25, abs=1e-15)


def test_dd_d3_m1_agrees_with_qutrit():
    a, b = 0.7, 0.4
    dd = doubly_depol_optimal_ensemble(3, 1, a, b)
    spec = DoublyDepolarizing(3, 1, a, b)
    q = Qutrit(tuple(spec.weights()))
    qo = qutrit_optimal_ensemble(q)
    assert dd.t_perp == pytest.approx(qo.x, abs=1e-12)
    assert dd.c_star == pytest.approx(qo.c_star, abs=1e-12)


def test_dd_t_perp_matches_brute_force():
    d, m, a, b = 4, 2, 0.7, 0.6
    opt = doubly_depol_optimal_ensemble(d, m, a, b)
    tp_bf = brute_argmax(lambda tp: dd_capacity_objective(tp, d, m, a, b), 0.0, 1 / (d - m))
    assert opt.t_perp == pytest.approx(tp_bf, abs=1e-6)
    assert opt.t > 1 / d > opt.t_perp


@pytest.mark.parametrize("d,m", [(5, 2), (5, 1), (6, 2), (7, 3)])
def test_dd_general_partition_matches_brute_force(d, m):
    a, b = 0.65, 0.3
    opt = doubly_depol_optimal_ensemble(d, m, a, b)
    tp_bf = brute_argmax(lambda tp: dd_capacity_objective(tp, d, m, a, b), 0.0, 1 / (d - m))
    assert opt.t_perp == pytest.approx(tp_bf, abs=1e-6)
    assert m * opt.t + (d - m) * opt.t_perp == pytest.approx(1.0, abs=1e-14)
    assert holevo_chi(build(DoublyDepolarizing(d, m, a, b)), opt.ensemble) == pytest.approx(opt.c_star, abs=1e-12)


def test_diagonal_family_capacity_examples():
    assert diagonal_family_capacity(3, 1.0) == pytest.approx(math.log2(3), abs=1e-15)
    assert diagonal_family_capacity(4, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert diagonal_family_capacity(3, 0.6) == pytest.approx(math.log2(3) - entropy_bits([11 / 15, 2 / 15, 2 / 15]), abs=1e-15)
    with pytest.raises(OutOfRange):
        diagonal_family_capacity(3, 2.0)


@pytest.mark.parametrize("spec", [QUTRIT_REF, Qutrit((0.3, 0.2, 0.1, 0.05)), DoublyDepolarizing(4, 2, 0.6, 0.5), DoublyDepolarizing(5, 2, 0.8, 0.2)])
def test_strict_gap_and_non_uniform_average(spec):
    cand = capacity_candidate(spec)
    d = spec.d
    assert math.log2(d) - cand.s_min - cand.c_star > 1e-6
    assert np.linalg.norm(cand.ensemble.average - np.eye(d) / d) > 1e-4


# ---------------------------------------------------------------- classical reduction


def test_cq_matrix_dd4_entries():
    a, b = 0.7, 0.6
    g = cq_matrix(build(DoublyDepolarizing(4, 2, a, b)))
    assert g[0, 0] == pytest.approx(a + (1 - a) / 4, abs=1e-14)
    assert g[2, 2] == pytest.approx(a * b + a * (1 - b) / 2 + (1 - a) / 4, abs=1e-14)
    np.testing.assert_allclose(g.sum(axis=0), 1, atol=1e-11)
    np.testing.assert_allclose(g.sum(axis=1), 1, atol=1e-11)


def test_cq_matrix_identity():
    np.testing.assert_allclose(cq_matrix(identity_channel(3)), np.eye(3), atol=1e-15)


def test_cq_matrix_successive_matches_display():
    x = (0.8, 0.7, 0.6)
    g = cq_matrix(build(Successive(4, x)))
    expect = np.column_stack([np.diag(successive_basis_output(4, x, k)) for k in range(4)])
    np.testing.assert_allclose(g, expect, atol=1e-12)


def test_classical_capacity_examples():
    c, p = classical_capacity(np.eye(3))
    assert c == pytest.approx(math.log2(3), abs=1e-12)
    np.testing.assert_allclose(p, 1 / 3, atol=1e-9)
    c0, _ = classical_capacity(np.full((3, 3), 1 / 3))
    assert c0 == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(NotStochastic):
        classical_capacity(np.array([[0.5, 0.2], [0.4, 0.8]]))
    with pytest.raises(NotStochastic):
        classical_capacity(np.array([[1.1, 0.0], [-0.1, 1.0]]))


def test_classical_capacity_matches_naive_oracle(rng):
    for _ in range(5):
        g = rng.uniform(size=(3, 4))
        g /= g.sum(axis=0)
        c, p = classical_capacity(g)
        c_ref, p_ref = blahut_arimoto_naive(g, iters=3000)
        assert c == pytest.approx(c_ref, abs=1e-8)


def test_classical_capacity_dd4_matches_closed_form():
    a, b = 0.7, 0.6
    c, p = classical_capacity(cq_matrix(build(DoublyDepolarizing(4, 2, a, b))))
    opt = doubly_depol_optimal_ensemble(4, 2, a, b)
    assert c == pytest.approx(opt.c_star, abs=1e-8)
    np.testing.assert_allclose(p, [opt.t, opt.t, opt.t_perp, opt.t_perp], atol=1e-6)


def test_classical_capacity_qutrit_in_plus_minus_basis():
    opt = qutrit_optimal_ensemble(QUTRIT_REF)
    c, p = classical_capacity(cq_matrix(build(QUTRIT_REF), qutrit_basis()))
    assert c == pytest.approx(opt.c_star, abs=1e-8)
    np.testing.assert_allclose(p, [1 - 2 * opt.x, opt.x, opt.x], atol=1e-6)


def test_successive_candidate_verifies():
    spec = Successive(4, (0.8, 0.7, 0.6))
    cand = capacity_candidate(spec)
    cert = verify_candidate(build(spec), cand.avg_output, cand.c_star, starts=20, seed=0)
    assert cert.verified


# ---------------------------------------------------------------- start recipes


def test_random_pure_start_norm():
    v = random_start_vector("random_pure", 3, start_rng(0, 0))
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-14)
    rho = random_start("random_pure", 3, start_rng(0, 0))
    np.testing.assert_allclose(rho, np.outer(v, v.conj()), atol=1e-15)


def test_max_entangled_phases_marginals():
    for i in range(5):
        v = random_start_vector("max_entangled_phases", (4, 4), start_rng(1, i)).reshape(4, 4)
        np.testing.assert_allclose(v @ v.conj().T, np.eye(4) / 4, atol=1e-12)
        np.testing.assert_allclose(v.T @ v.conj(), np.eye(4) / 4, atol=1e-12)
        # pairing 1-3, 2-4, 3-2, 4-1
        assert set(zip(*np.nonzero(v))) == {(0, 2), (1, 3), (2, 1), (3, 0)}


def test_product_sum_schmidt_rank():
    for d in (3, 4):
        c = random_start_vector("product_sum", (d, d), start_rng(2, d)).reshape(d, d)
        gram = c @ c.conj().T
        assert np.trace(gram).real == pytest.approx(1.0, abs=1e-14)
        assert np.sum(np.linalg.eigvalsh(gram) > 1e-12) <= d


def test_random_bipartite_and_streams():
    v1 = random_start_vector("random_bipartite", (3, 3), start_rng(4, 0))
    v2 = random_start_vector("random_bipartite", (3, 3), start_rng(4, 0))
    v3 = random_start_vector("random_bipartite", (3, 3), start_rng(4, 1))
    assert v1.shape == (9,)
    np.testing.assert_array_equal(v1, v2)
    assert not np.allclose(v1, v3)


def test_bad_recipe():
    with pytest.raises(BadRecipe):
        random_start_vector("gaussian", 3, start_rng(0, 0))
    with pytest.raises(BadRecipe):
        random_start_vector("max_entangled_phases", 4, start_rng(0, 0))
