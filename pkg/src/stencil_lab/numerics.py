"""Numerical kernels used by the stencil builders and the experiments.

Gauss-Legendre quadrature, truncated-SVD least squares, a preconditioned
biconjugate gradient solver for real or complex systems, a symmetric
eigensolver and a direct DFT for frequency-response plots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "ConvergenceError",
    "BreakdownError",
    "SingularSystemError",
    "QuadratureRule",
    "LinearOperator",
    "SpectrumReport",
    "gauss_legendre",
    "svd_lstsq",
    "aslinearoperator",
    "pbcg_solve",
    "dense_solve",
    "sym_eigen",
    "dft_spectrum",
]


class ConvergenceError(RuntimeError):
    """An iterative method stopped without meeting its tolerance."""

    def __init__(self, message, *, residual=float("nan"), iterations=0, x=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
        self.x = x


class BreakdownError(ConvergenceError):
    """A Krylov recurrence hit a zero inner product."""


class SingularSystemError(np.linalg.LinAlgError):
    """No singular value survived truncation."""


# --------------------------------------------------------------------------
# Quadrature


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def integrate(self, f: Callable) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


def _legendre_and_derivative(n: int, x: np.ndarray):
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    # derivative from the three-term relation
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


def gauss_legendre(npoints: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """Gauss-Legendre rule with ``npoints`` nodes on ``[a, b]``.

    Roots of the Legendre polynomial are found by Newton iteration started
    from Tricomi's asymptotic guesses; every root stays inside its bracket
    between consecutive Chebyshev-Gauss angles, so the iteration converges.
    """
    if npoints < 1:
        raise ValueError("npoints must be >= 1")
    if not a < b:
        raise ValueError("need a < b")
    n = npoints
    if n == 1:
        x = np.array([0.0])
        w = np.array([2.0])
    else:
        m = (n + 1) // 2
        i = np.arange(1, m + 1)
        theta = math.pi * (i - 0.25) / (n + 0.5)
        x = np.cos(theta) * (1.0 - (n - 1) / (8.0 * n**3))
        for _ in range(100):
            p, dp = _legendre_and_derivative(n, x)
            dx = p / dp
            x = x - dx
            if np.max(np.abs(dx)) < 1e-16:
                break
        p, dp = _legendre_and_derivative(n, x)
        w_half = 2.0 / ((1.0 - x * x) * dp * dp)
        # mirror the positive roots; the middle root is x = 0 for odd n
        if n % 2:
            x_full = np.concatenate([-x[:-1], x[::-1]])
            w_full = np.concatenate([w_half[:-1], w_half[::-1]])
            x_full[m - 1] = 0.0
        else:
            x_full = np.concatenate([-x, x[::-1]])
            w_full = np.concatenate([w_half, w_half[::-1]])
        x, w = x_full, w_full
    half = 0.5 * (b - a)
    return QuadratureRule(half * x + 0.5 * (a + b), half * w, (a, b))


# --------------------------------------------------------------------------
# Least squares


def svd_lstsq(G, chi, truncation: float = 1e-12) -> np.ndarray:
    """Minimum-norm least-squares solution of ``G x = chi`` by truncated SVD.

    Singular values below ``truncation * s_max`` are discarded.
    """
    if not 0.0 < truncation < 1.0:
        raise ValueError("truncation must lie in (0, 1)")
    G = np.asarray(G)
    chi = np.asarray(chi)
    U, s, Vt = np.linalg.svd(G)
    if s.size == 0 or not s[0] > 0:
        raise SingularSystemError("matrix has no nonzero singular value")
    keep = s >= truncation * s[0]
    coef = (U[:, keep].conj().T @ chi) / s[keep]
    return Vt[keep].conj().T @ coef


# --------------------------------------------------------------------------
# Linear operators and PBCG


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """Square operator given by its action and its adjoint action."""

    shape: tuple[int, int]
    matvec: Callable[[np.ndarray], np.ndarray]
    rmatvec: Callable[[np.ndarray], np.ndarray]
    diagonal: np.ndarray | None = None
    dense: np.ndarray | None = None

    @property
    def dimension(self) -> int:
        return self.shape[0]

    def __call__(self, x):
        return self.matvec(x)

    def __matmul__(self, x):
        return self.matvec(x)


def aslinearoperator(A) -> LinearOperator:
    if isinstance(A, LinearOperator):
        return A
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"need a square matrix, got shape {A.shape}")
    AH = A.conj().T
    return LinearOperator(A.shape, lambda x: A @ x, lambda x: AH @ x,
                          diagonal=np.diag(A).copy(), dense=A)


def pbcg_solve(A, b, tol: float = 1e-12, maxit: int | None = None,
               preconditioner: str | None = "jacobi") -> tuple[np.ndarray, int]:
    """Preconditioned biconjugate gradient solve of ``A x = b``.

    Works for real and complex systems; the shadow recurrence uses the
    adjoint. Returns ``(x, iterations)`` with ``||A x - b|| <= tol ||b||``.

    Raises
    ------
    BreakdownError
        A recurrence inner product vanished.
    ConvergenceError
        The tolerance was not met after ``maxit`` iterations; the exception
        carries the last iterate and its relative residual.
    """
    op = aslinearoperator(A)
    b = np.asarray(b)
    n = op.dimension
    if maxit is None:
        maxit = 10 * n
    dtype = np.result_type(b.dtype, np.float64,
                           op.dense.dtype if op.dense is not None else np.float64)
    bnorm = np.linalg.norm(b)
    x = np.zeros(n, dtype=dtype)
    if bnorm == 0.0:
        return x, 0

    if preconditioner == "jacobi" and op.diagonal is not None:
        d = np.asarray(op.diagonal, dtype=dtype)
        d = np.where(d == 0, 1.0, d)
        inv_d, inv_dh = 1.0 / d, 1.0 / d.conj()
    else:
        inv_d = inv_dh = np.ones(n, dtype=dtype)

    r = b.astype(dtype, copy=True)
    rt = r.copy()
    z = inv_d * r
    zt = inv_dh * rt
    rho = np.vdot(rt, z)
    p, pt = z.copy(), zt.copy()
    for it in range(1, maxit + 1):
        if rho == 0:
            raise BreakdownError("rho = 0 in PBCG", iterations=it, x=x,
                                 residual=np.linalg.norm(r) / bnorm)
        q = op.matvec(p)
        qt = op.rmatvec(pt)
        denom = np.vdot(pt, q)
        if denom == 0:
            raise BreakdownError("<p~, A p> = 0 in PBCG", iterations=it, x=x,
                                 residual=np.linalg.norm(r) / bnorm)
        alpha = rho / denom
        x = x + alpha * p
        r = r - alpha * q
        rt = rt - np.conj(alpha) * qt
        if np.linalg.norm(r) <= tol * bnorm:
            true_res = np.linalg.norm(b - op.matvec(x)) / bnorm
            if true_res <= tol:
                return x, it
            r = b - op.matvec(x)  # recurrence drifted; restart from the true residual
        z = inv_d * r
        zt = inv_dh * rt
        rho_new = np.vdot(rt, z)
        beta = rho_new / rho
        rho = rho_new
        p = z + beta * p
        pt = zt + np.conj(beta) * pt
    res = np.linalg.norm(b - op.matvec(x)) / bnorm
    raise ConvergenceError(
        f"PBCG did not reach tol={tol:g} in {maxit} iterations "
        f"(relative residual {res:.3e})",
        residual=float(res), iterations=maxit, x=x,
    )


def dense_solve(A, b) -> np.ndarray:
    """Direct LU solve, the cross-check path for every iterative solve."""
    return np.linalg.solve(np.asarray(A), np.asarray(b))


# --------------------------------------------------------------------------
# Eigenvalues


def sym_eigen(A) -> tuple[np.ndarray, np.ndarray]:
    """Full spectrum of a real symmetric matrix, eigenvalues ascending."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"need a square matrix, got shape {A.shape}")
    asym = np.max(np.abs(A - A.T)) if A.size else 0.0
    if asym > 1e-10 * max(np.max(np.abs(A)), 1.0):
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.2e})")
    try:
        vals, vecs = np.linalg.eigh(0.5 * (A + A.T))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"symmetric eigensolver failed: {exc}") from exc
    return vals, vecs


# --------------------------------------------------------------------------
# Spectra


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    K: np.ndarray
    magnitude: np.ndarray
    h: float

    def to_csv(self) -> str:
        rows = ["K,magnitude"]
        rows += [f"{k.item()!r},{m.item()!r}" for k, m in zip(self.K, self.magnitude)]
        return "\n".join(rows) + "\n"


def dft_spectrum(samples, h: float = 1.0) -> SpectrumReport:
    """Magnitude of the direct DFT against scaled wavenumber ``K = k h``.

    ``|U_m| = |sum_j u_j exp(-2 pi i j m / N)| / N`` with ``m`` shifted to
    ``-N/2..N/2`` so ``K = 2 pi m / N`` lies in ``[-pi, pi]``.
    """
    u = np.asarray(samples)
    N = u.size
    if N < 2:
        raise ValueError("need at least two samples")
    m = np.arange(N) - N // 2
    j = np.arange(N)
    F = np.exp(-2j * np.pi * np.outer(m, j) / N)
    mag = np.abs(F @ u) / N
    return SpectrumReport(2.0 * np.pi * m / N, mag, h)
