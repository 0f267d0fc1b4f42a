"""Harmonic oscillator eigenvalues from a stencil discretization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stencil_lab.numerics import sym_eigen
from stencil_lab.operators import build_matrix
from stencil_lab.problems.catalog import ProblemSpec
from stencil_lab.stencils import WeightVector

__all__ = ["EigenResult", "hamiltonian", "solve_eigen"]


@dataclass(frozen=True)
class EigenResult:
    mode: int
    computed: float
    exact: float

    @property
    def relative_error(self) -> float:
        return abs(self.computed - self.exact) / abs(self.exact)


def hamiltonian(spec: ProblemSpec, weights: WeightVector) -> np.ndarray:
    """``-1/2 D2 + diag(V)`` with zero exterior, symmetrized."""
    if weights.spec.n != 2:
        raise ValueError("the Hamiltonian needs second-derivative weights")
    grid = spec.grid
    D2 = build_matrix(weights, grid, spec.boundary_policy()).matrix
    H = -0.5 * D2 + np.diag(spec.rhs(grid.x))
    return 0.5 * (H + H.T)


def solve_eigen(spec: ProblemSpec, weights: WeightVector) -> list[EigenResult]:
    """All eigenvalues, ascending, compared with ``E_n = n + 1/2``."""
    if spec.kind != "eigen":
        raise ValueError(f"{spec.name} is not an eigenvalue problem")
    vals, _ = sym_eigen(hamiltonian(spec, weights))
    exact = spec.exact(np.arange(vals.size))
    return [EigenResult(i, float(v), float(e))
            for i, (v, e) in enumerate(zip(vals, exact))]
