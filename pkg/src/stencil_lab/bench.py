"""Method-by-M sweeps over the test problems, with CSV and SVG output.

A sweep evaluates every (method, M) cell of one experiment: the weights are
generated and timed, the problem's solver is run and timed, and the error
is recorded together with a status. Cell failures are data. They never
abort the sweep.

Statuses follow the conventions of published convergence tables:

``ok``
    finite error.
``nan``
    the solve finished but the error is not a number (``NaN`` in CSV).
``no-converge``
    an iterative solve, quadrature check or stability guard failed
    (``---`` in CSV).
``skipped``
    the cell has no parameter to run with, e.g. no preset ``r`` for
    DSC-RSK at that M (``---`` in CSV).
"""

from __future__ import annotations

import csv
import io
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from stencil_lab.metrics import h1_seminorm_error, linf_error
from stencil_lab.numerics import ConvergenceError
from stencil_lab.presets import DEFAULT_METHODS, RSK_R, SECH_D, default_m_list
from stencil_lab.problems import (
    BlowUpError,
    catalog,
    differentiate,
    solve_bvp,
    solve_eigen,
    solve_helmholtz,
    solve_hyperbolic,
    solve_navier_stokes,
)
from stencil_lab.stencils import SCHEMES, make_weights

__all__ = [
    "SweepResult",
    "run_sweep",
    "run_cell",
    "emit",
    "to_csv",
    "read_csv",
    "to_svg",
    "linf_error",
    "h1_seminorm_error",
    "CSV_COLUMNS",
    "STATUSES",
]

CSV_COLUMNS = ("experiment", "method", "M", "param", "error", "cpu_weights_s",
               "cpu_solve_s", "status")
STATUSES = ("ok", "nan", "no-converge", "skipped")
NAN_TOKEN = "NaN"
MISSING_TOKEN = "---"

# number of low eigenvalues scored by an eigen sweep cell
EIGEN_MODES = 11


@dataclass
class SweepResult:
    """One (experiment, method, M) cell of a sweep.

    ``param`` is ``r`` for DSC-RSK, ``D`` for Sech and ``None`` otherwise.
    ``error`` is ``None`` when the cell did not produce a number.
    """

    experiment: str
    method: str
    M: int
    param: float | None
    error: float | None
    cpu_weights_s: float
    cpu_solve_s: float
    status: str
    detail: str = field(default="", compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "ok" and not (self.error is not None and self.error >= 0):
            raise ValueError("an ok cell needs a nonnegative error")

    def to_row(self) -> list[str]:
        if self.status == "ok":
            err = repr(float(self.error))
        elif self.status == "nan":
            err = NAN_TOKEN
        else:
            err = MISSING_TOKEN
        param = "" if self.param is None else repr(float(self.param))
        return [self.experiment, self.method, str(self.M), param, err,
                repr(float(self.cpu_weights_s)), repr(float(self.cpu_solve_s)),
                self.status]

    @classmethod
    def from_row(cls, row: Sequence[str]) -> "SweepResult":
        if len(row) != len(CSV_COLUMNS):
            raise ValueError(f"expected {len(CSV_COLUMNS)} fields, got {len(row)}")
        exp, method, M, param, err, tw, ts, status = row
        if err == NAN_TOKEN:
            error = math.nan
        elif err == MISSING_TOKEN:
            error = None
        else:
            error = float(err)
        return cls(exp, method, int(M), float(param) if param else None, error,
                   float(tw), float(ts), status)


# --------------------------------------------------------------------------
# Cells


def _parameter(experiment: str, method: str, M: int, r: float | None,
               D: float | None) -> float | None:
    if method == "DSC-RSK":
        return r if r is not None else RSK_R.get(experiment, {}).get(M)
    if method == "Sech":
        return D if D is not None else SECH_D.get(experiment)
    return None


def _score(spec, method, M, param, solver):
    """Build weights and solve; returns ``(error, t_weights, t_solve)``."""
    h = spec.h
    kw = {"r": param} if method == "DSC-RSK" else {"D": param}

    def weights(n):
        return make_weights(method, n, M, h, **kw)

    t0 = time.perf_counter()
    if spec.kind == "diff":
        w = (weights(spec.params.get("order", 1)),)
    elif spec.kind in ("bvp", "eigen"):
        w = (weights(2),)
    elif spec.kind == "hyperbolic":
        w = (weights(1),)
    elif spec.kind == "helmholtz":
        w = (weights(2), weights(1) if spec.metric == "H1-seminorm" else None)
    elif spec.kind == "ns":
        w = (weights(1), weights(2))
    else:
        raise ValueError(f"no sweep driver for problem kind {spec.kind!r}")
    t1 = time.perf_counter()

    if spec.kind == "diff":
        err = differentiate(spec, *w).error
    elif spec.kind == "bvp":
        err = solve_bvp(spec, *w, solver=solver).error
    elif spec.kind == "helmholtz":
        err = solve_helmholtz(spec, *w, solver=solver).error
    elif spec.kind == "hyperbolic":
        err = solve_hyperbolic(spec, *w).error
    elif spec.kind == "ns":
        err = solve_navier_stokes(spec, *w)[1]
    else:
        res = solve_eigen(spec, *w)[:EIGEN_MODES]
        err = max(e.relative_error for e in res)
    t2 = time.perf_counter()
    return float(err), t1 - t0, t2 - t1


def run_cell(experiment: str, method: str, M: int, param: float | None = None,
             overrides: dict | None = None, solver: str = "pbcg") -> SweepResult:
    """Evaluate one cell. Failures come back as a status, not an exception.

    For ``eigen-ho`` the grid follows the stencil, ``N = M + 1``, unless
    ``N`` is overridden.
    """
    overrides = dict(overrides or {})
    if method not in SCHEMES:
        raise ValueError(f"unknown method {method!r}; expected one of {SCHEMES}")
    if method in ("DSC-RSK", "Sech") and param is None:
        return SweepResult(experiment, method, M, None, None, 0.0, 0.0, "skipped",
                           "no preset parameter for this M")
    if experiment == "eigen-ho":
        overrides.setdefault("N", M + 1)
    spec = catalog(experiment, **overrides)
    try:
        with np.errstate(all="ignore"):
            err, tw, ts = _score(spec, method, M, param, solver)
    except (ConvergenceError, BlowUpError, ArithmeticError,
            np.linalg.LinAlgError) as exc:
        return SweepResult(experiment, method, M, param, None, 0.0, 0.0,
                           "no-converge", f"{type(exc).__name__}: {exc}")
    if not math.isfinite(err):
        return SweepResult(experiment, method, M, param, math.nan, tw, ts, "nan")
    return SweepResult(experiment, method, M, param, err, tw, ts, "ok")


def _run_cell_args(args):
    return run_cell(*args)


def run_sweep(experiment: str, methods: Iterable[str] | None = None,
              m_list: Iterable[int] | None = None, overrides: dict | None = None,
              *, r: float | None = None, D: float | None = None,
              solver: str = "pbcg", parallel: bool = True,
              max_workers: int | None = None) -> list[SweepResult]:
    """Run every (method, M) cell of ``experiment``.

    Parameters
    ----------
    experiment : str
        Catalog name.
    methods : iterable of str, optional
        Defaults to the methods compared for this experiment.
    m_list : iterable of int, optional
        Defaults to the M values with a preset DSC-RSK ratio.
    overrides : dict, optional
        Problem keyword overrides passed to :func:`catalog`.
    r, D : float, optional
        Fixed DSC-RSK ratio or Sech width for every M, replacing presets.
    solver : {"pbcg", "dense"}
        Linear solver for the steady problems.
    parallel : bool
        Run cells in worker processes. Use ``False`` for timing fidelity.

    Returns
    -------
    list of SweepResult
        Ordered method-major, then by M as given.
    """
    catalog(experiment, **(overrides or {}))  # fail fast on bad names
    methods = list(methods) if methods is not None else list(DEFAULT_METHODS[experiment])
    m_list = list(m_list) if m_list is not None else default_m_list(experiment)
    if not m_list:
        raise ValueError("empty M list")
    if not methods:
        raise ValueError("empty method list")
    for m in methods:
        if m not in SCHEMES:
            raise ValueError(f"unknown method {m!r}; expected one of {SCHEMES}")
    jobs = [(experiment, m, int(M), _parameter(experiment, m, int(M), r, D),
             overrides, solver) for m in methods for M in m_list]
    if parallel and len(jobs) > 1:
        workers = max_workers or min(len(jobs), os.cpu_count() or 1)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_cell_args, jobs))
    return [_run_cell_args(j) for j in jobs]


# --------------------------------------------------------------------------
# Output


def to_csv(results: Iterable[SweepResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for res in results:
        writer.writerow(res.to_row())
    return buf.getvalue()


def read_csv(source) -> list[SweepResult]:
    """Parse CSV text or a path written by :func:`emit`."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
        text = Path(source).read_text()
    else:
        text = source
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise ValueError(f"missing header {','.join(CSV_COLUMNS)}")
    return [SweepResult.from_row(r) for r in rows[1:] if r]


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
            "#17becf")


def to_svg(results: Sequence[SweepResult], title: str | None = None,
           width: int = 640, height: int = 440) -> str:
    """Line chart of ``log10(error)`` against M, one polyline per method."""
    ok = [r for r in results if r.status == "ok" and r.error > 0]
    methods = list(dict.fromkeys(r.method for r in results))
    left, right, top, bottom = 70, 130, 40, 50
    pw, ph = width - left - right, height - top - bottom
    if ok:
        ms = [r.M for r in ok]
        logs = [math.log10(r.error) for r in ok]
        m_lo, m_hi = min(ms), max(ms)
        y_lo, y_hi = math.floor(min(logs)), math.ceil(max(logs))
    else:
        m_lo, m_hi, y_lo, y_hi = 0, 1, -1, 0
    if m_hi == m_lo:
        m_hi = m_lo + 1
    if y_hi == y_lo:
        y_hi = y_lo + 1

    def px(M):
        return left + (M - m_lo) / (m_hi - m_lo) * pw

    def py(v):
        return top + (y_hi - v) / (y_hi - y_lo) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
           f'height="{height}" font-family="sans-serif" font-size="11">',
           f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" '
           'fill="none" stroke="black"/>']
    step = max(1, math.ceil((y_hi - y_lo) / 10))
    for d in range(y_lo, y_hi + 1, step):
        y = py(d)
        out.append(f'<line x1="{left}" y1="{y:.1f}" x2="{left + pw}" y2="{y:.1f}" '
                   'stroke="#ddd"/>')
        out.append(f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end">'
                   f'1e{d}</text>')
    for M in sorted({r.M for r in results}):
        if m_lo <= M <= m_hi:
            out.append(f'<text x="{px(M):.1f}" y="{top + ph + 16}" '
                       f'text-anchor="middle">{M}</text>')
    out.append(f'<text x="{left + pw / 2}" y="{height - 10}" '
               'text-anchor="middle">M</text>')
    out.append(f'<text x="16" y="{top + ph / 2}" text-anchor="middle" '
               f'transform="rotate(-90 16 {top + ph / 2})">error</text>')
    if title:
        out.append(f'<text x="{left + pw / 2}" y="{top - 14}" '
                   f'text-anchor="middle" font-size="13">{title}</text>')
    for i, method in enumerate(methods):
        colour = _PALETTE[i % len(_PALETTE)]
        pts = sorted((r.M, math.log10(r.error)) for r in ok if r.method == method)
        if len(pts) > 1:
            coords = " ".join(f"{px(m):.1f},{py(v):.1f}" for m, v in pts)
            out.append(f'<polyline points="{coords}" fill="none" '
                       f'stroke="{colour}" stroke-width="1.5"/>')
        for m, v in pts:
            out.append(f'<circle cx="{px(m):.1f}" cy="{py(v):.1f}" r="2.5" '
                       f'fill="{colour}"/>')
        ly = top + 14 + 18 * i
        out.append(f'<line x1="{left + pw + 12}" y1="{ly}" x2="{left + pw + 32}" '
                   f'y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 38}" y="{ly + 4}">{method}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit(results: Sequence[SweepResult], format: str, path) -> Path:
    """Write ``results`` as ``csv`` or ``svg`` to ``path``."""
    results = list(results)
    if not results:
        raise ValueError("nothing to emit")
    if format == "csv":
        text = to_csv(results)
    elif format == "svg":
        text = to_svg(results, title=results[0].experiment)
    else:
        raise ValueError(f"unknown format {format!r}; use 'csv' or 'svg'")
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {format} output to {path}: {exc}") from exc
    return path
