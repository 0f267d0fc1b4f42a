"""Grid differentiation operators built from stencil weights."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from stencil_lab.numerics import LinearOperator, aslinearoperator
from stencil_lab.stencils import WeightVector

__all__ = [
    "Grid",
    "BoundaryPolicy",
    "DiffOperator",
    "OperatorError",
    "apply_stencil",
    "build_matrix",
    "rk4_step",
]


class OperatorError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    """Uniform grid on ``[a, b]``.

    Bounded grids include both endpoints, ``h = (b - a)/(N - 1)``. Periodic
    grids drop the right endpoint, ``h = (b - a)/N``.
    """

    N: int
    a: float
    b: float
    topology: str = "bounded"

    def __post_init__(self):
        if self.topology not in ("bounded", "periodic"):
            raise OperatorError(f"unknown topology {self.topology!r}")
        if self.N < 2 or not self.a < self.b:
            raise OperatorError("need N >= 2 and a < b")

    @property
    def h(self) -> float:
        if self.topology == "bounded":
            return (self.b - self.a) / (self.N - 1)
        return (self.b - self.a) / self.N

    @property
    def x(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.N)


@dataclass(frozen=True)
class BoundaryPolicy:
    """How stencil entries beyond the grid are filled.

    ``exact-exterior`` evaluates ``exterior(x)`` at the ghost points,
    ``zero-exterior`` pads with zeros and ``periodic-wrap`` wraps indices.
    """

    kind: str
    exterior: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if self.kind not in ("exact-exterior", "zero-exterior", "periodic-wrap"):
            raise OperatorError(f"unknown boundary policy {self.kind!r}")

    @classmethod
    def exact(cls, fn):
        return cls("exact-exterior", fn)

    @classmethod
    def zero(cls):
        return cls("zero-exterior")

    @classmethod
    def periodic(cls):
        return cls("periodic-wrap")


def _check(weights: WeightVector, grid: Grid, policy: BoundaryPolicy) -> None:
    periodic_policy = policy.kind == "periodic-wrap"
    if periodic_policy != (grid.topology == "periodic"):
        raise OperatorError(
            f"policy {policy.kind!r} does not match {grid.topology} grid"
        )
    if policy.kind == "exact-exterior" and policy.exterior is None:
        raise OperatorError("exact-exterior policy needs an exterior callable")
    if not np.isclose(weights.spec.h, grid.h, rtol=1e-12, atol=0.0):
        raise OperatorError(
            f"weights built for h={weights.spec.h!r}, grid has h={grid.h!r}"
        )


def _ghost_values(grid: Grid, policy: BoundaryPolicy, M: int, dtype):
    """Values at the ``M`` ghost nodes left and right of a bounded grid."""
    if policy.kind == "zero-exterior":
        return np.zeros(M, dtype), np.zeros(M, dtype)
    h = grid.h
    xl = grid.a + h * np.arange(-M, 0)
    xr = grid.a + h * np.arange(grid.N, grid.N + M)
    return np.asarray(policy.exterior(xl)), np.asarray(policy.exterior(xr))


def apply_stencil(weights: WeightVector, grid: Grid, policy: BoundaryPolicy,
                  field) -> np.ndarray:
    """``out[i] = sum_j delta[j] u(x_i + j h)`` with ghosts from the policy."""
    _check(weights, grid, policy)
    u = np.asarray(field)
    if u.shape != (grid.N,):
        raise OperatorError(f"field has shape {u.shape}, grid has N={grid.N}")
    M = weights.M
    w = weights.weights
    i = np.arange(grid.N)[:, None]
    j = np.arange(-M, M + 1)[None, :]
    if policy.kind == "periodic-wrap":
        return (u[(i + j) % grid.N] * w).sum(axis=1)
    left, right = _ghost_values(grid, policy, M, u.dtype)
    dtype = np.result_type(u, left, right)
    padded = np.concatenate([left.astype(dtype), u.astype(dtype), right.astype(dtype)])
    return (padded[i + j + M] * w).sum(axis=1)


@dataclass(frozen=True, eq=False)
class DiffOperator:
    """``D u = matrix @ u + affine``; ``affine`` holds the known ghost data."""

    weights: WeightVector
    grid: Grid
    policy: BoundaryPolicy
    matrix: np.ndarray
    affine: np.ndarray

    def __call__(self, field):
        return self.matrix @ np.asarray(field) + self.affine

    def linear(self) -> LinearOperator:
        return aslinearoperator(self.matrix)

    def to_csv(self) -> str:
        return "\n".join(",".join(repr(v.item()) for v in row) for row in self.matrix) + "\n"


def build_matrix(weights: WeightVector, grid: Grid,
                 policy: BoundaryPolicy) -> DiffOperator:
    """Explicit matrix form of :func:`apply_stencil`.

    Banded Toeplitz for bounded grids, circulant for periodic ones. Ghost
    contributions from an exact exterior are collected in the affine vector.
    """
    _check(weights, grid, policy)
    N, M = grid.N, weights.M
    w = weights.weights
    A = np.zeros((N, N))
    i = np.arange(N)
    if policy.kind == "periodic-wrap":
        for j in range(-M, M + 1):
            np.add.at(A, (i, (i + j) % N), w[j + M])
        return DiffOperator(weights, grid, policy, A, np.zeros(N))

    for j in range(-M, M + 1):
        cols = i + j
        ok = (cols >= 0) & (cols < N)
        A[i[ok], cols[ok]] = w[j + M]
    if policy.kind == "zero-exterior":
        return DiffOperator(weights, grid, policy, A, np.zeros(N))

    left, right = _ghost_values(grid, policy, M, float)
    dtype = np.result_type(left, right, float)
    ghosts = np.concatenate([left, np.zeros(N), right]).astype(dtype)
    interior = np.zeros(N + 2 * M, bool)
    interior[M:M + N] = True
    ghosts[interior] = 0.0
    jj = np.arange(-M, M + 1)[None, :]
    affine = (ghosts[i[:, None] + jj + M] * w).sum(axis=1)
    return DiffOperator(weights, grid, policy, A, affine)


def rk4_step(f: Callable, t: float, y, dt: float):
    """One classical fourth-order Runge-Kutta step of ``y' = f(t, y)``."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
