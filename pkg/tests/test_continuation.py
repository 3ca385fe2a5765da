"""Path tracking: start systems, correctors, deformation, epsilon checks."""

import numpy as np
import pytest

from tensegrity import (ContinuationError, FrameworkError, Homotopy,
                        MultiPoly, PathBudgetError, PolySystem, TrackOptions,
                        deform_framework, epsilon_rigidity_check, load_fixture,
                        numerical_nullspace, pin_moving_frame,
                        pinned_member_system, solve_total_degree, track_path)
from tensegrity.framework import build_constraints


def _close_multisets(found, expected, tol):
    """Greedy min-distance pairing; order-independent root comparison."""
    pool = list(found)
    for z in expected:
        if not pool:
            return False
        k = min(range(len(pool)), key=lambda i: abs(pool[i] - z))
        if abs(pool[k] - z) > tol:
            return False
        pool.pop(k)
    return not pool


def _univariate(coeffs):
    return PolySystem([MultiPoly.from_univariate(np.asarray(coeffs, dtype=complex))])


def test_multipoly_arithmetic_matches_pointwise_evaluation():
    rng = np.random.default_rng(61)
    for _ in range(50):
        nvars = int(rng.integers(1, 4))
        def rand_poly():
            terms = {}
            for _ in range(int(rng.integers(1, 5))):
                e = tuple(int(v) for v in rng.integers(0, 3, size=nvars))
                terms[e] = complex(rng.normal(), rng.normal())
            return MultiPoly(nvars, terms)
        a, b = rand_poly(), rand_poly()
        x = rng.normal(size=nvars) + 1j * rng.normal(size=nvars)
        fa, fb = a.evaluate(x), b.evaluate(x)
        assert (a + b).evaluate(x) == pytest.approx(fa + fb, rel=1e-12, abs=1e-12)
        assert (a - b).evaluate(x) == pytest.approx(fa - fb, rel=1e-12, abs=1e-12)
        assert (a * b).evaluate(x) == pytest.approx(fa * fb, rel=1e-11, abs=1e-11)
        assert (a ** 2).evaluate(x) == pytest.approx(fa * fa, rel=1e-11, abs=1e-11)


def test_multipoly_derivative_of_monomial():
    # d/dx0 (x0^3 x1) = 3 x0^2 x1
    p = MultiPoly(2, {(3, 1): 2.0 + 0j})
    dp = p.diff(0)
    assert dp.terms == {(2, 1): 6.0 + 0j}
    assert p.diff(1).terms == {(3, 0): 2.0 + 0j}


def test_system_jacobian_matches_finite_differences():
    rng = np.random.default_rng(67)
    polys = [MultiPoly(2, {(2, 0): 1.0, (0, 1): -3.0, (1, 1): 2.0}),
             MultiPoly(2, {(0, 2): 1.0, (1, 0): 5.0})]
    system = PolySystem(polys)
    x = rng.normal(size=2) + 1j * rng.normal(size=2)
    J = system.jacobian(x)
    h = 1e-7
    for k in range(2):
        e = np.zeros(2, dtype=complex)
        e[k] = h
        fd = (system.evaluate(x + e) - system.evaluate(x - e)) / (2 * h)
        assert np.max(np.abs(J[:, k] - fd)) <= 1e-5


def test_cubic_root_multisets():
    res = solve_total_degree(_univariate([1, -7, 17, -15]), seed=0)
    assert all(r.status == "converged" for r in res)
    assert _close_multisets([r.endpoint[0] for r in res], [3, 2 + 1j, 2 - 1j], 1e-8)

    res = solve_total_degree(_univariate([1, -5, -7, 51]), seed=0)
    assert all(r.status == "converged" for r in res)
    assert _close_multisets([r.endpoint[0] for r in res], [-3, 4 + 1j, 4 - 1j], 1e-8)


def test_random_univariate_agrees_with_companion_roots():
    rng = np.random.default_rng(71)
    for _ in range(10):
        deg = int(rng.integers(2, 9))
        # sample well-separated roots so every root is simple
        while True:
            roots = rng.uniform(-2, 2, size=deg) + 1j * rng.uniform(-2, 2, size=deg)
            if min(abs(a - b) for i, a in enumerate(roots)
                   for b in roots[i + 1:]) > 0.2:
                break
        coeffs = np.poly(roots)
        res = solve_total_degree(_univariate(coeffs), seed=1)
        assert all(r.status == "converged" for r in res)
        oracle = np.roots(coeffs)
        assert _close_multisets([r.endpoint[0] for r in res], oracle, 1e-8)


def test_two_variable_product_system():
    f = PolySystem([MultiPoly(2, {(2, 0): 1.0, (0, 0): -1.0}),
                    MultiPoly(2, {(0, 2): 1.0, (0, 0): -4.0})])
    res = solve_total_degree(f, seed=2)
    assert len(res) == 4
    assert all(r.status == "converged" for r in res)
    pts = sorted((round(r.endpoint[0].real, 6), round(r.endpoint[1].real, 6))
                 for r in res)
    assert pts == [(-1.0, -2.0), (-1.0, 2.0), (1.0, -2.0), (1.0, 2.0)]
    assert all(r.max_imag <= 1e-8 for r in res)


def test_converged_residual_bound():
    f = _univariate([1, 0, 0, -8])
    for r in solve_total_degree(f, seed=3):
        assert r.status == "converged"
        norm = np.linalg.norm(r.endpoint)
        assert r.residual <= 1e-8 * (1.0 + norm ** 3)


def test_tracking_is_deterministic_given_seed():
    f = _univariate([1, -1, 0, 2, -5])
    first = solve_total_degree(f, seed=9)
    second = solve_total_degree(f, seed=9)
    for a, b in zip(first, second):
        assert np.array_equal(a.endpoint, b.endpoint)
        assert a.steps == b.steps


def test_gamma_redraw_preserves_endpoint_multiset():
    f = _univariate([1, -1, 0, 2, -5])
    ends1 = [r.endpoint[0] for r in solve_total_degree(f, seed=4)]
    ends2 = [r.endpoint[0] for r in solve_total_degree(f, seed=5)]
    assert _close_multisets(ends1, ends2, 1e-6)


def test_rk4_predictor_reaches_same_roots():
    f = _univariate([1, -7, 17, -15])
    opts = TrackOptions(predictor="rk4")
    res = solve_total_degree(f, seed=0, opts=opts)
    assert _close_multisets([r.endpoint[0] for r in res], [3, 2 + 1j, 2 - 1j], 1e-8)


def test_path_budget_is_enforced():
    f = PolySystem([MultiPoly(2, {(2, 0): 1.0, (0, 0): -1.0}),
                    MultiPoly(2, {(0, 2): 1.0, (0, 0): -4.0})])
    with pytest.raises(PathBudgetError):
        solve_total_degree(f, seed=0, budget=3)
    assert len(solve_total_degree(f, seed=0, budget=4)) == 4


def test_homotopy_validates_inputs():
    f = _univariate([1, 0, -2])
    g = _univariate([1, 0, -1])
    with pytest.raises(ContinuationError):
        Homotopy(target=f, start=g, gamma=2.0)  # not on the unit circle
    h = Homotopy(target=f, start=g, gamma=1.0)
    with pytest.raises(ContinuationError):
        # start point does not satisfy the start system
        track_path(h, np.array([5.0 + 0j]))


def test_non_square_system_rejected():
    f = PolySystem([MultiPoly(2, {(1, 0): 1.0})])
    with pytest.raises(ContinuationError):
        solve_total_degree(f, seed=0)


def test_pinned_member_system_prism(prism):
    graph, p, sys_ = prism
    pp = pin_moving_frame(p)
    sysp = build_constraints(graph, pp, rest_sq_lengths=sys_.rest_sq_lengths)
    members, free, values = pinned_member_system(sysp, pp)
    assert len(free) == graph.n * graph.d - 6
    assert len(members) == graph.m
    # residuals vanish at the pinned embedding, and the reduced Jacobian
    # keeps exactly the one flex
    res = members.evaluate(values.astype(complex))
    assert np.max(np.abs(res)) <= 1e-12
    J = members.jacobian(values.astype(complex)).real
    assert numerical_nullspace(J).shape[1] == 1


def test_deform_zero_offset_returns_input_exactly(prism):
    graph, p, sys_ = prism
    pp = pin_moving_frame(p)
    sysp = build_constraints(graph, pp, rest_sq_lengths=sys_.rest_sq_lengths)
    steps = deform_framework(sysp, pp, epsilon=0.0, steps=1, seed=0)
    assert steps[0].result.status == "converged"
    assert np.array_equal(steps[0].point, pp.coords.astype(complex))


def test_deform_moves_along_the_flex(prism):
    graph, p, sys_ = prism
    pp = pin_moving_frame(p)
    sysp = build_constraints(graph, pp, rest_sq_lengths=sys_.rest_sq_lengths)
    steps = deform_framework(sysp, pp, epsilon=0.05, steps=1, seed=0)
    assert len(steps) == 1
    step = steps[0]
    assert step.result.status in ("converged", "no_real_solution")
    assert 1e-8 < step.member_residual < 1e-1
    disp = (step.point.real - pp.coords).reshape(-1)
    members, free, _ = pinned_member_system(sysp, pp)
    J = members.jacobian(pp.coords.reshape(-1)[
        [i * graph.d + k for i, k in free]].astype(complex)).real
    flex = numerical_nullspace(J)[:, 0]
    disp_free = np.array([disp[i * graph.d + k] for i, k in free])
    cos = abs(disp_free @ flex) / np.linalg.norm(disp_free)
    assert cos > 0.9


def test_deform_requires_a_flex():
    graph, p, sys_ = load_fixture("triangle")
    pp = pin_moving_frame(p)
    sysp = build_constraints(graph, pp, rest_sq_lengths=sys_.rest_sq_lengths)
    with pytest.raises(FrameworkError):
        deform_framework(sysp, pp, epsilon=0.05, steps=1, seed=0)


def test_epsilon_check_refuses_over_budget(prism):
    graph, p, sys_ = prism
    pp = pin_moving_frame(p)
    sysp = build_constraints(graph, pp, rest_sq_lengths=sys_.rest_sq_lengths)
    with pytest.raises(PathBudgetError):
        epsilon_rigidity_check(sysp, pp, epsilon=0.1, seed=0, budget=1000)
