from stencil_lab.problems.catalog import (
    PROBLEM_NAMES,
    ProblemSpec,
    UnknownProblemError,
    catalog,
    eigen_domain,
)
from stencil_lab.problems.eigen import EigenResult, hamiltonian, solve_eigen
from stencil_lab.problems.steady import (
    Solution,
    assemble_steady,
    differentiate,
    solve_bvp,
    solve_helmholtz,
)
from stencil_lab.problems.unsteady import (
    BlowUpError,
    NSState,
    solve_hyperbolic,
    solve_navier_stokes,
)

__all__ = [
    "PROBLEM_NAMES",
    "ProblemSpec",
    "UnknownProblemError",
    "catalog",
    "eigen_domain",
    "EigenResult",
    "hamiltonian",
    "solve_eigen",
    "Solution",
    "assemble_steady",
    "differentiate",
    "solve_bvp",
    "solve_helmholtz",
    "BlowUpError",
    "NSState",
    "solve_hyperbolic",
    "solve_navier_stokes",
]
