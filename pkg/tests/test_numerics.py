import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stencil_lab.numerics import (
    ConvergenceError,
    LinearOperator,
    SingularSystemError,
    aslinearoperator,
    dense_solve,
    dft_spectrum,
    gauss_legendre,
    pbcg_solve,
    svd_lstsq,
    sym_eigen,
)

# --------------------------------------------------------------------------
# Gauss-Legendre


@pytest.mark.parametrize("n", [1, 2, 3, 8, 31, 64])
def test_gauss_legendre_matches_reference_rule(n):
    ref_x, ref_w = np.polynomial.legendre.leggauss(n)
    rule = gauss_legendre(n)
    np.testing.assert_allclose(rule.nodes, ref_x, atol=1e-14)
    np.testing.assert_allclose(rule.weights, ref_w, rtol=1e-12, atol=1e-15)


def test_gauss_legendre_512_against_high_precision_oracle():
    # numpy's companion-matrix rule loses ~1e-10 here, so use Newton in 60 digits
    n = 512
    rule = gauss_legendre(n)

    def legendre(t):
        p0, p1 = mpmath.mpf(1), t
        for k in range(2, n + 1):
            p0, p1 = p1, ((2 * k - 1) * t * p1 - (k - 1) * p0) / k
        return p1, n * (t * p1 - p0) / (t * t - 1)

    with mpmath.workdps(60):
        for i in (0, 1, 100, 255, 256, 511):
            x = mpmath.mpf(rule.nodes[i])
            for _ in range(8):
                p, dp = legendre(x)
                x -= p / dp
            p, dp = legendre(x)
            w = 2 / ((1 - x * x) * dp * dp)
            assert rule.nodes[i] == pytest.approx(float(x), abs=1e-15)
            assert rule.weights[i] == pytest.approx(float(w), rel=1e-12)


def test_gauss_legendre_nodes_sorted_and_symmetric():
    rule = gauss_legendre(101, -math.pi, math.pi)
    assert np.all(np.diff(rule.nodes) > 0)
    np.testing.assert_allclose(rule.nodes, -rule.nodes[::-1], atol=1e-14)
    assert rule.weights.sum() == pytest.approx(2 * math.pi, rel=1e-14)
    assert rule.interval == (-math.pi, math.pi)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(1, 40), a=st.floats(-3, 0), width=st.floats(0.1, 4),
       data=st.data())
def test_gauss_legendre_exact_for_degree_2n_minus_1(n, a, width, data):
    degree = data.draw(st.integers(0, 2 * n - 1))
    b = a + width
    rule = gauss_legendre(n, a, b)
    c = 0.5 * (a + b)
    exact = ((b - c) ** (degree + 1) - (a - c) ** (degree + 1)) / (degree + 1)
    got = rule.integrate(lambda x: (x - c) ** degree)
    assert got == pytest.approx(exact, abs=1e-12 * max(1.0, width ** (degree + 1)))


def test_gauss_legendre_smooth_integrand():
    rule = gauss_legendre(40, 0.0, 2.0)
    assert rule.integrate(np.exp) == pytest.approx(math.exp(2) - 1, rel=1e-14)


@pytest.mark.parametrize("args", [(0,), (4, 1.0, 1.0), (4, 2.0, 1.0)])
def test_gauss_legendre_rejects_bad_input(args):
    with pytest.raises(ValueError):
        gauss_legendre(*args)


# --------------------------------------------------------------------------
# Truncated SVD


def test_svd_lstsq_full_rank_matches_solve():
    rng = np.random.default_rng(1)
    G = rng.normal(size=(6, 6))
    chi = rng.normal(size=6)
    np.testing.assert_allclose(svd_lstsq(G, chi), np.linalg.solve(G, chi),
                               rtol=1e-10)


def test_svd_lstsq_rank_deficient_is_minimum_norm():
    rng = np.random.default_rng(2)
    B = rng.normal(size=(8, 3))
    G = B @ B.T  # rank 3
    chi = rng.normal(size=8)
    x = svd_lstsq(G, chi, truncation=1e-10)
    np.testing.assert_allclose(x, np.linalg.pinv(G, rcond=1e-10) @ chi, rtol=1e-8)


def test_svd_lstsq_truncation_drops_tiny_directions():
    G = np.diag([1.0, 1e-14])
    x = svd_lstsq(G, np.array([2.0, 1.0]), truncation=1e-12)
    np.testing.assert_allclose(x, [2.0, 0.0])


def test_svd_lstsq_errors():
    with pytest.raises(SingularSystemError):
        svd_lstsq(np.zeros((3, 3)), np.ones(3))
    with pytest.raises(ValueError):
        svd_lstsq(np.eye(2), np.ones(2), truncation=0.0)


# --------------------------------------------------------------------------
# PBCG


def _diag_dominant(n, rng, dtype=float):
    A = rng.normal(size=(n, n)) * 0.1
    if dtype is complex:
        A = A + 1j * rng.normal(size=(n, n)) * 0.1
    return A + np.diag(np.full(n, 3.0))


@pytest.mark.parametrize("dtype", [float, complex])
def test_pbcg_matches_dense(dtype):
    rng = np.random.default_rng(3)
    A = _diag_dominant(40, rng, dtype)
    b = rng.normal(size=40) + (1j * rng.normal(size=40) if dtype is complex else 0)
    x, its = pbcg_solve(A, b, tol=1e-13)
    np.testing.assert_allclose(x, dense_solve(A, b), rtol=1e-10, atol=1e-12)
    assert 0 < its <= 400
    assert np.linalg.norm(A @ x - b) <= 1e-13 * np.linalg.norm(b) * 1.0001


def test_pbcg_spd_tridiagonal():
    n = 60
    A = 2 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    b = np.ones(n)
    x, _ = pbcg_solve(A, b, preconditioner=None)
    np.testing.assert_allclose(x, np.linalg.solve(A, b), rtol=1e-9)


def test_pbcg_complex_symmetric_indefinite():
    # the structure of a discretized Helmholtz problem
    n = 80
    h = 1.0 / n
    k = 30.0
    A = (-2 * np.eye(n) + np.eye(n, k=1) + np.eye(n, k=-1)) / h**2 + k * k * np.eye(n)
    A = A.astype(complex)
    A[-1, -1] += 1j * k / h
    b = np.ones(n, dtype=complex)
    x, _ = pbcg_solve(A, b, tol=1e-12)
    np.testing.assert_allclose(x, np.linalg.solve(A, b), rtol=1e-8, atol=1e-12)


def test_pbcg_zero_rhs():
    x, its = pbcg_solve(np.eye(3), np.zeros(3))
    assert its == 0 and not x.any()


def test_pbcg_reports_nonconvergence():
    rng = np.random.default_rng(4)
    A = rng.normal(size=(50, 50))
    with pytest.raises(ConvergenceError) as info:
        pbcg_solve(A, rng.normal(size=50), tol=1e-14, maxit=3)
    assert info.value.iterations == 3
    assert info.value.x is not None
    assert info.value.residual > 1e-14


def test_pbcg_accepts_linear_operator():
    rng = np.random.default_rng(5)
    A = _diag_dominant(20, rng)
    op = LinearOperator(A.shape, lambda v: A @ v, lambda v: A.T @ v,
                        diagonal=np.diag(A))
    b = rng.normal(size=20)
    x, _ = pbcg_solve(op, b)
    np.testing.assert_allclose(x, np.linalg.solve(A, b), rtol=1e-10)


def test_aslinearoperator_rejects_nonsquare():
    with pytest.raises(ValueError):
        aslinearoperator(np.ones((2, 3)))


def test_dense_solve_singular():
    with pytest.raises(np.linalg.LinAlgError):
        dense_solve(np.zeros((2, 2)), np.ones(2))


# --------------------------------------------------------------------------
# Eigenvalues


def test_sym_eigen_tridiagonal_closed_form():
    n = 30
    A = 2 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)
    vals, vecs = sym_eigen(A)
    k = np.arange(1, n + 1)
    np.testing.assert_allclose(vals, 2 - 2 * np.cos(k * np.pi / (n + 1)), atol=1e-13)
    np.testing.assert_allclose(A @ vecs, vecs * vals, atol=1e-12)


def test_sym_eigen_rejects_asymmetric():
    with pytest.raises(ValueError):
        sym_eigen(np.array([[1.0, 2.0], [0.0, 1.0]]))


# --------------------------------------------------------------------------
# DFT spectrum


def test_dft_spectrum_single_mode():
    N, m = 64, 5
    j = np.arange(N)
    u = 3.0 * np.exp(2j * np.pi * m * j / N)
    rep = dft_spectrum(u, h=0.1)
    peak = np.argmax(rep.magnitude)
    assert rep.K[peak] == pytest.approx(2 * np.pi * m / N)
    assert rep.magnitude[peak] == pytest.approx(3.0)
    assert np.sort(rep.magnitude)[-2] < 1e-12
    assert rep.K.min() == pytest.approx(-np.pi)
    np.testing.assert_allclose(rep.magnitude * N,
                               np.abs(np.fft.fftshift(np.fft.fft(u))), atol=1e-9)


def test_dft_spectrum_csv():
    text = dft_spectrum(np.ones(4)).to_csv()
    lines = text.splitlines()
    assert lines[0] == "K,magnitude"
    assert len(lines) == 5
    assert "np." not in text
    assert float(lines[3].split(",")[1]) == pytest.approx(1.0)


def test_dft_spectrum_needs_samples():
    with pytest.raises(ValueError):
        dft_spectrum([1.0])
