"""Differentiation tests, two-point boundary value problems and Helmholtz."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from stencil_lab.metrics import h1_seminorm_error, linf_error
from stencil_lab.numerics import dense_solve, pbcg_solve
from stencil_lab.operators import apply_stencil, build_matrix
from stencil_lab.problems.catalog import ProblemSpec
from stencil_lab.stencils import WeightVector

__all__ = ["Solution", "differentiate", "assemble_steady", "solve_bvp",
           "solve_helmholtz"]


class Solution(NamedTuple):
    values: np.ndarray
    error: float


def _require(spec: ProblemSpec, kind: str, weights: WeightVector, n: int) -> None:
    if spec.kind != kind:
        raise ValueError(f"{spec.name} is a {spec.kind} problem, not {kind}")
    if weights.spec.n != n:
        raise ValueError(f"{spec.name} needs n={n} weights, got n={weights.spec.n}")


def differentiate(spec: ProblemSpec, weights: WeightVector) -> Solution:
    """Differentiate the sampled exact solution; L-infinity error."""
    _require(spec, "diff", weights, spec.params.get("order", 1))
    grid = spec.grid
    x = grid.x
    approx = apply_stencil(weights, grid, spec.boundary_policy(), spec.exact(x))
    return Solution(approx, linf_error(approx, spec.derivative(x)))


def assemble_steady(spec: ProblemSpec, weights: WeightVector):
    """Linear system for ``coef2 u'' + coef0 u = f`` on the unknown nodes.

    Ghost nodes and Dirichlet end nodes take exact values; an end that is
    not ``known`` (a Robin end) is collocated like an interior node.

    Returns ``(A, rhs, unknown_mask, x)``.
    """
    grid = spec.grid
    x = grid.x
    op = build_matrix(weights, grid, spec.boundary_policy())
    L = spec.coef2 * op.matrix + spec.coef0 * np.eye(grid.N)
    known = np.zeros(grid.N, bool)
    known[0] = spec.known_left
    known[-1] = spec.known_right
    unknown = ~known
    f = np.asarray(spec.rhs(x[unknown]))
    rhs = f - spec.coef2 * op.affine[unknown]
    if known.any():
        rhs = rhs - L[np.ix_(unknown, known)] @ spec.exact(x[known])
    return L[np.ix_(unknown, unknown)], rhs, unknown, x


def _linear_solve(A, rhs, solver: str, tol: float) -> np.ndarray:
    if solver == "dense":
        return dense_solve(A, rhs)
    if solver == "pbcg":
        return pbcg_solve(A, rhs, tol=tol)[0]
    raise ValueError(f"unknown solver {solver!r}; use 'pbcg' or 'dense'")


def _solve_steady(spec, weights, solver, tol):
    A, rhs, unknown, x = assemble_steady(spec, weights)
    full = np.asarray(spec.exact(x)).astype(np.result_type(rhs, A, float))
    full[unknown] = _linear_solve(A, rhs, solver, tol)
    return full, x


def solve_bvp(spec: ProblemSpec, weights: WeightVector, solver: str = "pbcg",
              tol: float = 1e-12) -> Solution:
    """Solve ``u'' - u = f`` with exact exterior data; L-infinity error."""
    _require(spec, "bvp", weights, 2)
    u, x = _solve_steady(spec, weights, solver, tol)
    return Solution(u, linf_error(u, spec.exact(x)))


def solve_helmholtz(spec: ProblemSpec, weights: WeightVector,
                    d1_weights: WeightVector | None = None,
                    solver: str = "pbcg", tol: float = 1e-12) -> Solution:
    """Solve a Helmholtz problem.

    The error is the relative H1 seminorm measured with the same scheme's
    first-derivative stencil when ``spec.metric`` asks for it (``d1_weights``
    is then required), otherwise the L-infinity error.
    """
    _require(spec, "helmholtz", weights, 2)
    u, x = _solve_steady(spec, weights, solver, tol)
    exact = spec.exact(x)
    if spec.metric == "H1-seminorm":
        if d1_weights is None or d1_weights.spec.n != 1:
            raise ValueError("H1 seminorm error needs first-derivative weights")
        grid, policy = spec.grid, spec.boundary_policy()
        err = h1_seminorm_error(u, exact,
                                lambda v: apply_stencil(d1_weights, grid, policy, v))
    else:
        err = linf_error(u, exact)
    return Solution(u, err)
