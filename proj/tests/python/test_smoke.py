"""Smoke tests for the Python module: thin checks that the bindings expose the
core operations faithfully; the heavy numerical validation lives in the C++
suites."""

import math

import numpy as np
import pytest

import acara


def test_norms_and_svd():
    eye = np.eye(3, dtype=complex)
    assert acara.schatten_norm(eye, 2.0) == pytest.approx(math.sqrt(3.0))
    assert acara.lp_norm(eye, 1.0) == pytest.approx(3.0)
    assert acara.schatten_quasinorm(np.diag([1.0 + 0j, 4.0, 9.0]), 0.5) == pytest.approx(36.0)

    rng = np.random.default_rng(7)
    m = rng.normal(size=(5, 4)) + 1j * rng.normal(size=(5, 4))
    u, s, v = acara.svd(m)
    assert np.max(np.abs(u @ np.diag(s) @ v.conj().T - m)) <= 1e-10
    assert np.max(np.abs(u.conj().T @ u - np.eye(u.shape[1]))) <= 1e-10

    with pytest.raises(ValueError):
        acara.schatten_norm(eye, 0.5)


def test_derivatives_match_finite_differences():
    rng = np.random.default_rng(11)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    x = (a + a.conj().T) / 2
    b = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    y = (b + b.conj().T) / 2
    h = 1e-6
    for p in (4.0 / 3.0, 2.0, 4.0):
        fd = (acara.schatten_norm(x + h * y, p) - acara.schatten_norm(x - h * y, p)) / (2 * h)
        an = acara.schatten_directional_derivative(x, y, p)
        assert an == pytest.approx(fd, abs=1e-4, rel=1e-4)
        fd_lp = (acara.lp_norm(x + h * y, p) - acara.lp_norm(x - h * y, p)) / (2 * h)
        an_lp = acara.lp_directional_derivative(x, y, p)
        assert an_lp == pytest.approx(fd_lp, abs=1e-4, rel=1e-4)


def test_solver_on_a_random_instance():
    target = acara.build_random_instance(5, seed=3)
    assert np.abs(target).sum() == pytest.approx(1.0)
    oracle = acara.basis_atoms(1, 5)
    assert oracle.size == 25
    diam = oracle.diameter(2.0, "lp")
    assert diam == pytest.approx(math.sqrt(2.0))

    result = acara.approx_caratheodory(target.astype(complex), oracle, p=2.0, norm_kind="lp",
                                       method="greedy", k_max=500, seed=3)
    errors = np.asarray(result.errors)
    bounds = np.asarray(result.bounds)
    assert np.all(errors <= bounds + 1e-9)
    assert result.k == 500
    assert len(result.atom_ids) == 500
    assert sum(result.weights) == pytest.approx(1.0)
    reconstructed = sum(w * np.asarray(oracle.atom(i)) for i, w in zip(result.atom_ids, result.weights))
    assert np.max(np.abs(reconstructed - target)) <= errors[-1]
    assert result.trace_csv().startswith("k,atom_id,error,bound,derivative\n")


def test_solver_infeasibility_signal():
    oracle = acara.basis_atoms(1, 2)
    outside = -np.eye(2, dtype=complex) / 2
    with pytest.raises(acara.SolverInfeasible):
        acara.approx_caratheodory(outside, oracle, p=2.0, norm_kind="lp", method="greedy",
                                  k_max=50)


def test_bounds_and_budgets():
    assert acara.required_k(1.0, 2.0, 2.0, "schatten") == 437
    assert acara.budget_sep(2.0, 2.0).value == 110
    assert acara.budget_nn(0.1, 2.0, 1.0).value == 43679
    assert acara.error_bound(100, 2.0, 2.0, "lp") == pytest.approx(
        math.exp(2.0) * math.sqrt(2.0 / 100.0) * 2.0)
    b2 = acara.budget_rank(1.0, 2.0, 1.0)
    assert acara.budget_schatten1(1.0, b2, d=2, n=1).value == 4 * b2.value
    with pytest.raises(ValueError):
        acara.error_bound(10, 2.0, 3.0, "schatten")


def test_gauge_and_sqrt_pipeline():
    rho = np.array([0.25, 0.25, 0.25, 0.25])
    assert acara.mu1_diagonal_exact(rho) == pytest.approx(1.0)
    lower, upper = acara.mu_sqrt_bounds_diagonal(rho, 2.0)
    assert lower <= upper
    out = acara.approx_sqrt_pipeline(rho, epsilon=0.5, p=2.0, method="greedy")
    assert out.achieved_error <= 0.5
    assert out.k <= out.budget.value
    assert np.allclose(np.asarray(out.rho_prime), np.asarray(out.sqrt_iterate) ** 2)


def test_wsc_and_actions():
    circle = acara.build_circle(4)
    ok, message = acara.validate_wsc(circle)
    assert ok, message
    assert acara.is_connected(circle)
    assert len(acara.facets(circle)) == 4
    action = acara.build_cyclic_action(circle)
    assert action.size == 4
    ok, message = acara.validate_group_action(circle, action)
    assert ok, message
    assert acara.is_free_action(circle, action)

    round_trip = acara.parse_wsc(acara.format_wsc(circle))
    assert acara.facets(round_trip) == acara.facets(circle)


def test_instances():
    euclid = acara.build_euclid_instance(3)
    assert euclid[0, 2] == pytest.approx(4.0 / 12.0)
    assert np.abs(euclid).sum() == pytest.approx(1.0)
    slack = acara.build_slack_instance(5)
    assert np.abs(slack).sum() == pytest.approx(1.0)
    assert np.count_nonzero(slack == 0.0) == 10  # two incidences per facet
    rank1 = acara.build_rank1_instance(6, seed=1)
    s = np.linalg.svd(rank1, compute_uv=False)
    assert s[1] <= 1e-12 * s[0]


def test_decompositions_roundtrip_and_symmetrize():
    circle = acara.build_circle(3)
    action = acara.build_cyclic_action(circle)
    dec_json = """
    {"wsc": "facet 0 1 weight 1\\nfacet 0 2 weight 1\\nfacet 1 2 weight 1\\n",
     "action": "element ()\\ncopies 0 1 2\\n",
     "index_set_size": 1,
     "local_dims": [2, 2, 2],
     "families": [
       [{"beta": [0, 0], "tensor": [1.0, 0.0, 0.0, 0.0]}],
       [{"beta": [0, 0], "tensor": [0.0, 0.0, 1.0, 0.0]}],
       [{"beta": [0, 0], "tensor": [1.0, 0.0, 0.0, 0.0]}]]}
    """
    dec = acara.decomposition_from_json(dec_json)
    value = np.asarray(acara.evaluate(dec))
    assert value.shape == (2, 2, 2)
    assert value[0, 1, 0] == pytest.approx(1.0)  # e0 x e1 x e0
    ok, message = acara.check_g_compatibility(dec)
    assert ok, message

    averaged, equivariant = acara.symmetrize(value, action, dec)
    averaged = np.asarray(averaged)
    assert averaged[0, 1, 0] == pytest.approx(1.0 / 3.0)
    assert averaged[0, 0, 1] == pytest.approx(1.0 / 3.0)
    assert averaged[1, 0, 0] == pytest.approx(1.0 / 3.0)
    assert equivariant.index_set_size == 3
    ok, message = acara.check_g_compatibility(equivariant)
    assert ok, message
    assert np.allclose(np.asarray(acara.evaluate(equivariant)), averaged)
    round_trip = acara.decomposition_from_json(acara.decomposition_to_json(equivariant))
    assert np.allclose(np.asarray(acara.evaluate(round_trip)), averaged)
