"""Error norms shared by the solvers and the benchmark harness."""

from __future__ import annotations

import numpy as np

__all__ = ["linf_error", "h1_seminorm_error"]


def linf_error(numeric, exact) -> float:
    """Largest complex-modulus difference over all nodes."""
    a, b = np.asarray(numeric), np.asarray(exact)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def h1_seminorm_error(u_h, u_exact, d1) -> float:
    """Relative H1-seminorm error ``||D1 u_h - D1 u|| / ||D1 u||``.

    ``d1`` is any callable mapping nodal values to nodal first derivatives,
    normally the scheme's own first-derivative operator.
    """
    du_h = np.asarray(d1(np.asarray(u_h)))
    du = np.asarray(d1(np.asarray(u_exact)))
    denom = np.linalg.norm(du)
    if denom == 0.0:
        raise ZeroDivisionError("exact solution has zero H1 seminorm")
    return float(np.linalg.norm(du_h - du) / denom)
