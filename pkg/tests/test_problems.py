import math

import numpy as np
import pytest
import sympy as sp

from stencil_lab.problems import (
    PROBLEM_NAMES,
    BlowUpError,
    UnknownProblemError,
    assemble_steady,
    catalog,
    differentiate,
    eigen_domain,
    hamiltonian,
    solve_bvp,
    solve_eigen,
    solve_helmholtz,
    solve_hyperbolic,
    solve_navier_stokes,
)
from stencil_lab.stencils import make_weights

X = sp.symbols("x", real=True)
T = sp.symbols("t", real=True)

# --------------------------------------------------------------------------
# Catalog


def test_catalog_lists_every_problem():
    for name in PROBLEM_NAMES:
        spec = catalog(name)
        assert spec.name == name
        assert spec.grid.N == spec.N


def test_unknown_problem():
    with pytest.raises(UnknownProblemError, match="diff-smallk"):
        catalog("diff-hugek")
    with pytest.raises(TypeError):
        catalog("diff-smallk", wavenumber=3)


@pytest.mark.parametrize("name,N,a,b,topology", [
    ("diff-smallk", 201, 0.0, 2 * math.pi, "bounded"),
    ("bvp-boyd", 201, -30.0, 30.0, "bounded"),
    ("bvp-confined", 601, -3.0, 3.0, "bounded"),
    ("helm-const", 526, 0.0, 1.0, "bounded"),
    ("helm-multi", 526, 0.0, math.pi, "bounded"),
    ("hyp-few", 101, -1.0, 1.0, "periodic"),
    ("ns-2d", 51, 0.0, 2 * math.pi, "periodic"),
    ("eigen-ho", 51, -8.7, 8.7, "bounded"),
])
def test_default_discretizations(name, N, a, b, topology):
    spec = catalog(name)
    assert (spec.N, spec.a, spec.b, spec.topology) == (N, a, b, topology)


def test_time_settings():
    hyp = catalog("hyp-few")
    assert hyp.steps * hyp.dt == pytest.approx(hyp.t_final)
    ns = catalog("ns-2d")
    assert ns.t_final == pytest.approx(1e-2)


def test_helmholtz_points_per_wavelength_near_two():
    assert catalog("helm-const").ppw() == pytest.approx(2.1, abs=0.01)
    assert catalog("eigen-ho").ppw() is None


def test_boyd_packet_sits_at_two_points_per_wavelength():
    spec = catalog("bvp-boyd")
    assert spec.params["k"] * spec.h == pytest.approx(math.pi / 2)


def test_overrides_reach_the_builder():
    assert catalog("diff-smallk", k=10).params["k"] == 10
    assert catalog("eigen-ho", N=201).b == 17.6
    assert catalog("eigen-ho", N=101).b == pytest.approx(eigen_domain(101))
    with pytest.raises(ValueError):
        catalog("helm-multi", k=7)


def test_boundary_policies_follow_the_kind():
    assert catalog("hyp-comb").boundary_policy().kind == "periodic-wrap"
    assert catalog("eigen-ho").boundary_policy().kind == "zero-exterior"
    assert catalog("bvp-wide").boundary_policy().kind == "exact-exterior"


def test_to_keyvalue():
    text = catalog("hyp-few").to_keyvalue()
    lines = dict(line.split(" = ", 1) for line in text.splitlines())
    assert lines["name"] == "'hyp-few'"
    assert float(lines["h"]) == pytest.approx(2 / 101)
    assert lines["param.k"] == "10"
    assert "np." not in text


# --------------------------------------------------------------------------
# Exact solutions satisfy their equations


def _lambdify(expr):
    return sp.lambdify(X, expr, "numpy")


@pytest.mark.parametrize("name", ["bvp-boyd", "bvp-confined", "bvp-wide"])
def test_bvp_source_matches_exact_solution(name):
    spec = catalog(name)
    x = np.linspace(spec.a, spec.b, 2001)
    u = spec.exact
    h = 1e-3
    # sixth-order central second difference as an independent check
    c = np.array([1 / 90, -3 / 20, 3 / 2, -49 / 18, 3 / 2, -3 / 20, 1 / 90])
    upp = sum(cj * u(x + (j - 3) * h) for j, cj in enumerate(c)) / h**2
    scale = np.max(np.abs(spec.rhs(x)))
    np.testing.assert_allclose(upp - u(x), spec.rhs(x), atol=1e-6 * scale)


def test_boyd_source_symbolic():
    spec = catalog("bvp-boyd")
    c = spec.params["k"]
    u = sp.sech(X) * sp.cos(c * X)
    f = _lambdify(sp.diff(u, X, 2) - u)
    x = np.linspace(-5, 5, 41)
    np.testing.assert_allclose(spec.rhs(x), f(x), atol=1e-10)


@pytest.mark.parametrize("k", [10.0, 500 * math.pi])
def test_helm_const_equation_and_robin_end(k):
    spec = catalog("helm-const", k=k)
    ks = sp.nsimplify(k) if k == 10.0 else 500 * sp.pi
    u = ((1 - sp.cos(ks * X) - sp.sin(ks) * sp.sin(ks * X))
         + sp.I * (sp.cos(ks) - 1) * sp.sin(ks * X)) / ks**2
    assert sp.simplify(-sp.diff(u, X, 2) - ks**2 * u) == -1
    x = np.linspace(0, 1, 17)
    np.testing.assert_allclose(spec.exact(x), _lambdify(u)(x), atol=1e-14)
    np.testing.assert_allclose(spec.derivative(x), _lambdify(sp.diff(u, X))(x),
                               atol=1e-12)
    assert spec.exact(0.0) == 0
    # outgoing condition u' = i k u at x = 1
    assert abs(spec.derivative(1.0) - 1j * k * spec.exact(1.0)) < 1e-12 / k
    assert np.allclose(spec.rhs(x), -1)
    np.testing.assert_allclose(spec.coef2 * _lambdify(sp.diff(u, X, 2))(x)
                               + spec.coef0 * spec.exact(x), spec.rhs(x),
                               atol=1e-9)


def test_helm_const_is_complex_away_from_even_multiples():
    assert np.max(np.abs(catalog("helm-const", k=10.0).exact(
        np.linspace(0, 1, 9)).imag)) > 1e-3


def test_helm_multi_source():
    spec = catalog("helm-multi", k=12, N=81)
    js = range(7)
    u = sum(sp.cos(2 * j * X) for j in js)
    f = _lambdify(sp.diff(u, X, 2) + 144 * u)
    x = np.linspace(0, math.pi, 33)
    np.testing.assert_allclose(spec.rhs(x), f(x), atol=1e-9)
    assert spec.exact(0.0) == spec.params["boundary_value"]


@pytest.mark.parametrize("name", ["hyp-few", "hyp-comb"])
def test_transport_solution(name):
    spec = catalog(name)
    x = np.linspace(-1, 1, 13)
    t, dt = 0.7, 1e-6
    ut = (spec.exact(t + dt, x) - spec.exact(t - dt, x)) / (2 * dt)
    ux = (spec.exact(t, x + dt) - spec.exact(t, x - dt)) / (2 * dt)
    np.testing.assert_allclose(ut, -t * t * ux, atol=1e-4 * np.max(np.abs(ux)))
    np.testing.assert_allclose(spec.exact(t, x), spec.exact(t, x + 2.0), atol=1e-9)


def test_taylor_green_symbolic():
    spec = catalog("ns-2d")
    k, Re = spec.params["k"], spec.params["Re"]
    y = sp.symbols("y", real=True)
    e = sp.exp(-2 * k**2 * T / Re)
    u = -sp.cos(k * X) * sp.sin(k * y) * e
    v = sp.sin(k * X) * sp.cos(k * y) * e
    p = -sp.Rational(1, 4) * (sp.cos(2 * k * X) + sp.cos(2 * k * y)) * e**2
    assert sp.simplify(sp.diff(u, X) + sp.diff(v, y)) == 0
    lap = lambda f: sp.diff(f, X, 2) + sp.diff(f, y, 2)  # noqa: E731
    mom_u = (sp.diff(u, T) + u * sp.diff(u, X) + v * sp.diff(u, y)
             + sp.diff(p, X) - lap(u) / Re)
    mom_v = (sp.diff(v, T) + u * sp.diff(v, X) + v * sp.diff(v, y)
             + sp.diff(p, y) - lap(v) / Re)
    assert sp.simplify(mom_u) == 0 and sp.simplify(mom_v) == 0
    pts = np.array([0.3, 1.1, 2.5])
    got = spec.exact(0.01, pts, pts[::-1])
    want = [sp.lambdify((T, X, y), f)(0.01, pts, pts[::-1]) for f in (u, v, p)]
    for g, w in zip(got, want):
        np.testing.assert_allclose(g, w, atol=1e-14)


def test_expdecay_derivative():
    spec = catalog("diff-expdecay")
    x = np.linspace(0, 2 * math.pi, 11)
    h = 1e-6
    np.testing.assert_allclose((spec.exact(x + h) - spec.exact(x - h)) / (2 * h),
                               spec.derivative(x), rtol=1e-6)


# --------------------------------------------------------------------------
# Steady solvers


def test_diff_smallk_fd_three_point_closed_form():
    spec = catalog("diff-smallk")
    h = spec.h
    sol = differentiate(spec, make_weights("FD", 1, 1, h))
    # the three-point centered difference scales exp(ikx) by i sin(kh)/h
    assert sol.error == pytest.approx(abs(45 - math.sin(45 * h) / h), rel=1e-10)


def test_differentiate_rejects_wrong_order():
    spec = catalog("diff-smallk")
    with pytest.raises(ValueError):
        differentiate(spec, make_weights("FD", 2, 1, spec.h))
    with pytest.raises(ValueError):
        differentiate(catalog("bvp-boyd"), make_weights("FD", 1, 1, 0.3))


@pytest.mark.parametrize("name,scheme,M", [
    ("bvp-boyd", "FD", 6), ("bvp-boyd", "Sech", 8),
    ("bvp-confined", "DSC-RSK", 10), ("bvp-wide", "MEuler", 12),
])
def test_bvp_pbcg_agrees_with_dense(name, scheme, M):
    spec = catalog(name)
    w = make_weights(scheme, 2, M, spec.h, r=3.0, D=0.6)
    it = solve_bvp(spec, w, solver="pbcg")
    lu = solve_bvp(spec, w, solver="dense")
    assert np.max(np.abs(it.values - lu.values)) < 1e-9 * np.max(np.abs(lu.values))
    assert it.error == pytest.approx(lu.error, rel=1e-3, abs=1e-11)


def test_bvp_dirichlet_ends_are_exact():
    spec = catalog("bvp-boyd")
    sol = solve_bvp(spec, make_weights("FD", 2, 4, spec.h))
    x = spec.grid.x
    assert sol.values[0] == spec.exact(x[0])
    assert sol.values[-1] == spec.exact(x[-1])


def test_bvp_converges_with_fd_order():
    spec = catalog("bvp-boyd", N=801)
    errors = [solve_bvp(spec, make_weights("FD", 2, M, spec.h)).error for M in (1, 2, 4)]
    assert errors[0] > errors[1] > errors[2]


def test_unknown_solver():
    spec = catalog("bvp-boyd")
    with pytest.raises(ValueError, match="solver"):
        solve_bvp(spec, make_weights("FD", 2, 2, spec.h), solver="magic")


def test_helm_const_robin_row_is_unknown():
    spec = catalog("helm-const", k=10.0, N=41)
    A, rhs, unknown, _ = assemble_steady(spec, make_weights("FD", 2, 2, spec.h))
    assert not unknown[0] and unknown[-1]
    assert A.shape == (40, 40)
    assert np.iscomplexobj(rhs)


def test_helm_const_complex_solution_at_moderate_k():
    spec = catalog("helm-const", k=10.0, N=101)
    d2 = make_weights("FD", 2, 6, spec.h)
    d1 = make_weights("FD", 1, 6, spec.h)
    sol = solve_helmholtz(spec, d2, d1, solver="dense")
    assert np.max(np.abs(sol.values.imag)) > 1e-3
    assert sol.error < 1e-7
    it = solve_helmholtz(spec, d2, d1, solver="pbcg")
    assert it.error == pytest.approx(sol.error, rel=1e-3, abs=1e-11)


@pytest.mark.parametrize("name,scheme", [("helm-const", "DSC-RSK"), ("helm-multi", "FD"),
                                         ("helm-multi", "Sech")])
def test_helmholtz_pbcg_agrees_with_dense(name, scheme):
    spec = catalog(name)
    w2 = make_weights(scheme, 2, 20, spec.h, r=3.5, D=0.8)
    w1 = make_weights(scheme, 1, 20, spec.h, r=3.5, D=0.8)
    a = solve_helmholtz(spec, w2, w1, solver="pbcg")
    b = solve_helmholtz(spec, w2, w1, solver="dense")
    scale = np.max(np.abs(b.values))
    assert np.max(np.abs(a.values - b.values)) < 1e-8 * scale


def test_helmholtz_h1_needs_first_derivative():
    spec = catalog("helm-const")
    w2 = make_weights("FD", 2, 3, spec.h)
    with pytest.raises(ValueError, match="first-derivative"):
        solve_helmholtz(spec, w2)
    with pytest.raises(ValueError):
        solve_helmholtz(spec, w2, w2)


def test_helm_multi_uses_linf():
    spec = catalog("helm-multi", k=12, N=81)
    sol = solve_helmholtz(spec, make_weights("FD", 2, 8, spec.h))
    assert sol.error == pytest.approx(np.max(np.abs(sol.values - spec.exact(spec.grid.x))))


# --------------------------------------------------------------------------
# Transport


def test_hyperbolic_zero_steps_is_exact():
    spec = catalog("hyp-few", t_final=0.0)
    assert spec.steps == 0
    sol = solve_hyperbolic(spec, make_weights("FD", 1, 3, spec.h))
    assert sol.error == 0.0


def test_hyperbolic_short_run_converges_with_fd_order():
    spec = catalog("hyp-comb", t_final=0.2, dt=1e-3)
    errors = [solve_hyperbolic(spec, make_weights("FD", 1, M, spec.h)).error
              for M in (5, 10, 20, 40)]
    assert all(e1 > e2 for e1, e2 in zip(errors, errors[1:]))
    assert errors[-1] < 2e-3


def test_hyperbolic_blow_up():
    spec = catalog("hyp-few", dt=0.2, t_final=200.0)
    with pytest.raises(BlowUpError) as info:
        solve_hyperbolic(spec, make_weights("FD", 1, 4, spec.h))
    assert info.value.step >= 0


def test_hyperbolic_input_checks():
    spec = catalog("hyp-few")
    with pytest.raises(ValueError):
        solve_hyperbolic(spec, make_weights("FD", 2, 2, spec.h))
    with pytest.raises(ValueError):
        solve_hyperbolic(catalog("ns-2d"), make_weights("FD", 1, 2, 0.1))


# --------------------------------------------------------------------------
# Navier-Stokes


def _ns_weights(spec, scheme, M):
    return (make_weights(scheme, 1, M, spec.h, r=3.0),
            make_weights(scheme, 2, M, spec.h, r=3.0))


def test_ns_zero_steps():
    spec = catalog("ns-2d", steps=0)
    state, err = solve_navier_stokes(spec, *_ns_weights(spec, "FD", 4))
    assert err == 0.0 and state.t == 0.0


def test_ns_short_run():
    spec = catalog("ns-2d", steps=20)
    state, err = solve_navier_stokes(spec, *_ns_weights(spec, "DSC-RSK", 20))
    _, err_fd = solve_navier_stokes(spec, *_ns_weights(spec, "FD", 2))
    assert err < 1e-4 and err < err_fd
    assert state.t == pytest.approx(20 * spec.dt)
    assert state.u.shape == (51, 51)


def test_ns_projection_is_discretely_solenoidal():
    spec = catalog("ns-2d", steps=10)
    state, _ = solve_navier_stokes(spec, *_ns_weights(spec, "FD", 3),
                                   pressure="projection")
    assert state.max_divergence < 1e-11


def test_ns_laplacian_pressure_leaves_fd_divergence():
    spec = catalog("ns-2d", steps=10)
    state, _ = solve_navier_stokes(spec, *_ns_weights(spec, "FD", 3))
    assert state.max_divergence > 1e-8


def test_ns_divergence_guard():
    spec = catalog("ns-2d", steps=5)
    with pytest.raises(ArithmeticError, match="divergence"):
        solve_navier_stokes(spec, *_ns_weights(spec, "FD", 3), divergence_tol=1e-14)


def test_ns_input_checks():
    spec = catalog("ns-2d", steps=1)
    d1, d2 = _ns_weights(spec, "FD", 2)
    with pytest.raises(ValueError):
        solve_navier_stokes(spec, d2, d1)
    with pytest.raises(ValueError, match="pressure"):
        solve_navier_stokes(spec, d1, d2, pressure="spectral")


# --------------------------------------------------------------------------
# Eigenproblem


def test_hamiltonian_symmetric_with_potential_diagonal():
    spec = catalog("eigen-ho")
    H = hamiltonian(spec, make_weights("FD", 2, 1, spec.h))
    np.testing.assert_array_equal(H, H.T)
    x = spec.grid.x
    np.testing.assert_allclose(np.diag(H), 1 / spec.h**2 + x * x / 2)


def test_sinc_eigenvalues():
    spec = catalog("eigen-ho")
    res = solve_eigen(spec, make_weights("Sinc", 2, spec.N - 1, spec.h))
    assert len(res) == spec.N
    assert [r.mode for r in res[:3]] == [0, 1, 2]
    assert max(r.relative_error for r in res[:11]) < 1e-10
    assert res[20].exact == 20.5


def test_eigen_input_checks():
    spec = catalog("eigen-ho")
    with pytest.raises(ValueError):
        hamiltonian(spec, make_weights("FD", 1, 2, spec.h))
    with pytest.raises(ValueError):
        solve_eigen(catalog("bvp-boyd"), make_weights("FD", 2, 2, 0.3))
