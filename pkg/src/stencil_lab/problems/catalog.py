"""Test problems: exact solutions, sources and default discretizations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from stencil_lab.operators import BoundaryPolicy, Grid

__all__ = ["ProblemSpec", "catalog", "PROBLEM_NAMES", "UnknownProblemError",
           "eigen_domain"]

PROBLEM_NAMES = (
    "diff-smallk", "diff-mediumk", "diff-expdecay",
    "bvp-boyd", "bvp-confined", "bvp-wide",
    "helm-const", "helm-multi",
    "hyp-few", "hyp-comb",
    "ns-2d",
    "eigen-ho",
)


class UnknownProblemError(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """Everything needed to discretize and score one experiment.

    Steady linear problems read ``coef2 * u'' + coef0 * u = rhs``. Unsteady
    problems take ``exact(t, x)``; the others ``exact(x)``.
    """

    name: str
    kind: str
    a: float
    b: float
    N: int
    topology: str = "bounded"
    exact: Callable | None = None
    derivative: Callable | None = None
    rhs: Callable | None = None
    metric: str = "Linf"
    coef2: float = 1.0
    coef0: float = 0.0
    known_left: bool = True
    known_right: bool = True
    t_final: float | None = None
    dt: float | None = None
    steps: int | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def grid(self) -> Grid:
        return Grid(self.N, self.a, self.b, self.topology)

    @property
    def h(self) -> float:
        return self.grid.h

    def boundary_policy(self) -> BoundaryPolicy:
        if self.topology == "periodic":
            return BoundaryPolicy.periodic()
        if self.kind == "eigen":
            return BoundaryPolicy.zero()
        return BoundaryPolicy.exact(self.exact)

    def ppw(self) -> float | None:
        """Grid points per wavelength of the highest listed wavenumber."""
        k = self.params.get("k_max", self.params.get("k"))
        if k is None:
            return None
        return 2.0 * math.pi / k / self.h

    def to_keyvalue(self) -> str:
        """Plain-text stamp of the scalar settings."""
        items = {
            "name": self.name, "kind": self.kind, "a": self.a, "b": self.b,
            "N": self.N, "h": self.h, "topology": self.topology,
            "metric": self.metric, "t_final": self.t_final, "dt": self.dt,
            "steps": self.steps,
        }
        items.update({f"param.{k}": v for k, v in sorted(self.params.items())})
        return "".join(f"{k} = {v!r}\n" for k, v in items.items() if v is not None)


def _sech(x):
    return 1.0 / np.cosh(x)


# ---- function differentiation -----------------------------------------


def _plane_wave(name, k):
    return ProblemSpec(
        name, "diff", 0.0, 2 * math.pi, 201,
        exact=lambda x: np.exp(1j * k * np.asarray(x)),
        derivative=lambda x: 1j * k * np.exp(1j * k * np.asarray(x)),
        params={"k": k, "order": 1},
    )


def _expdecay(sigma=0.1, k_max=80):
    ks = np.arange(k_max + 1)
    amp = np.exp(-ks * sigma)

    def u(x):
        return np.exp(1j * np.multiply.outer(np.asarray(x), ks)) @ amp

    def du(x):
        return np.exp(1j * np.multiply.outer(np.asarray(x), ks)) @ (1j * ks * amp)

    return ProblemSpec("diff-expdecay", "diff", 0.0, 2 * math.pi, 201,
                       exact=u, derivative=du,
                       params={"sigma": sigma, "k_max": k_max, "order": 1})


# ---- boundary value problems u'' - u = f -------------------------------


def _bvp_boyd(N=201, a=-30.0, b=30.0):
    h = (b - a) / (N - 1)
    c = math.pi / (2 * h)

    def u(x):
        x = np.asarray(x)
        return _sech(x) * np.cos(c * x)

    def f(x):
        x = np.asarray(x)
        s = _sech(x)
        return ((-2 * s**3 - c * c * s) * np.cos(c * x)
                + 2 * c * s * np.tanh(x) * np.sin(c * x))

    return ProblemSpec("bvp-boyd", "bvp", a, b, N, exact=u, rhs=f,
                       coef2=1.0, coef0=-1.0, params={"k": c})


def _gauss_packet(x, width, freq):
    """``exp(-x^2/2w^2) cos(freq x)`` and its image under ``d2/dx2 - 1``."""
    g = np.exp(-x * x / (2 * width**2))
    u = g * np.cos(freq * x)
    f = (2 * freq * x / width**2 * g * np.sin(freq * x)
         + (x * x / width**4 - 1 / width**2 - freq**2 - 1) * g * np.cos(freq * x))
    return u, f


def _bvp_confined(width=0.3, bfreq=80.0, N=601):
    freq = bfreq * math.pi
    return ProblemSpec(
        "bvp-confined", "bvp", -3.0, 3.0, N,
        exact=lambda x: _gauss_packet(np.asarray(x), width, freq)[0],
        rhs=lambda x: _gauss_packet(np.asarray(x), width, freq)[1],
        coef2=1.0, coef0=-1.0, params={"a": width, "b": bfreq, "k": freq},
    )


def _bvp_wide(width=0.3, terms=8, N=601):
    freqs = [10 * bb * math.pi for bb in range(1, terms + 1)]

    def u(x):
        x = np.asarray(x)
        return sum(_gauss_packet(x, width, w)[0] for w in freqs)

    def f(x):
        x = np.asarray(x)
        return sum(_gauss_packet(x, width, w)[1] for w in freqs)

    return ProblemSpec("bvp-wide", "bvp", -3.0, 3.0, N, exact=u, rhs=f,
                       coef2=1.0, coef0=-1.0,
                       params={"a": width, "terms": terms, "k_max": freqs[-1]})


# ---- Helmholtz ----------------------------------------------------------


def _helm_const(k=500 * math.pi, N=526):
    def u(x):
        x = np.asarray(x, dtype=float)
        return ((1 - np.cos(k * x) - math.sin(k) * np.sin(k * x))
                + 1j * (math.cos(k) - 1) * np.sin(k * x)) / k**2

    def du(x):
        x = np.asarray(x, dtype=float)
        return ((k * np.sin(k * x) - k * math.sin(k) * np.cos(k * x))
                + 1j * (math.cos(k) - 1) * k * np.cos(k * x)) / k**2

    # the closed form above solves -u'' - k^2 u = -1
    return ProblemSpec(
        "helm-const", "helmholtz", 0.0, 1.0, N, exact=u, derivative=du,
        rhs=lambda x: -np.ones(np.shape(x), dtype=complex),
        metric="H1-seminorm", coef2=-1.0, coef0=-k * k,
        known_left=True, known_right=False, params={"k": k},
    )


def _helm_multi(k=500, N=526):
    if k % 2:
        raise ValueError("helm-multi needs an even wavenumber k")
    js = np.arange(k // 2 + 1)

    def u(x):
        return np.cos(2 * np.multiply.outer(np.asarray(x, float), js)).sum(axis=-1)

    def f(x):
        jf = js[:-1]
        c = np.cos(2 * np.multiply.outer(np.asarray(x, float), jf))
        return c @ (k * k - 4.0 * jf**2)

    return ProblemSpec("helm-multi", "helmholtz", 0.0, math.pi, N, exact=u,
                       rhs=f, coef2=1.0, coef0=float(k * k),
                       params={"k": k, "boundary_value": k / 2 + 1})


# ---- unsteady transport u_t = -t^2 u_x --------------------------------


def _hyp_few(k=10, N=101, dt=5e-5, t_final=1.0):
    def u(t, x):
        return np.sin(k * math.pi * (np.asarray(x) - t**3 / 3.0)) ** 4

    return ProblemSpec("hyp-few", "hyperbolic", -1.0, 1.0, N, topology="periodic",
                       exact=u, t_final=t_final, dt=dt,
                       steps=int(round(t_final / dt)), params={"k": k,
                                                               "k_max": 4 * k * math.pi})


def _hyp_comb(k=40, N=101, dt=5e-5, t_final=1.0):
    js = np.arange(1, k // 2 + 1)

    def u(t, x):
        arg = np.multiply.outer(np.asarray(x) - t**3 / 3.0, 2 * math.pi * js)
        return np.sin(arg).sum(axis=-1)

    return ProblemSpec("hyp-comb", "hyperbolic", -1.0, 1.0, N, topology="periodic",
                       exact=u, t_final=t_final, dt=dt,
                       steps=int(round(t_final / dt)),
                       params={"k": k, "k_max": k * math.pi})


# ---- Navier-Stokes -----------------------------------------------------


def _ns_2d(k=10, Re=100.0, N=51, dt=1e-5, steps=1000):
    def exact(t, x, y):
        x, y = np.asarray(x), np.asarray(y)
        e = math.exp(-2 * k * k * t / Re)
        u = -np.cos(k * x) * np.sin(k * y) * e
        v = np.sin(k * x) * np.cos(k * y) * e
        p = -0.25 * (np.cos(2 * k * x) + np.cos(2 * k * y)) * e * e
        return u, v, p

    return ProblemSpec("ns-2d", "ns", 0.0, 2 * math.pi, N, topology="periodic",
                       exact=exact, t_final=dt * steps, dt=dt, steps=steps,
                       params={"k": k, "Re": Re, "k_max": 2 * k})


# ---- harmonic oscillator ------------------------------------------------

_EIGEN_HALF_WIDTH = {51: 8.7, 201: 17.6}


def eigen_domain(N: int) -> float:
    """Half-width of the eigenproblem box for an ``N``-point grid.

    The two published grids use their stated boxes; other sizes use
    ``sqrt(pi N / 2)``, which balances truncation against resolution.
    """
    return _EIGEN_HALF_WIDTH.get(N, math.sqrt(math.pi * N / 2.0))


def _eigen_ho(N=51, half_width=None):
    L = eigen_domain(N) if half_width is None else half_width
    return ProblemSpec("eigen-ho", "eigen", -L, L, N,
                       exact=lambda n: np.asarray(n) + 0.5,
                       rhs=lambda x: 0.5 * np.asarray(x) ** 2,
                       metric="eigen-relative", known_left=False,
                       known_right=False, params={"potential": "x^2/2"})


_BUILDERS: dict[str, Callable[..., ProblemSpec]] = {
    "diff-smallk": lambda k=45: _plane_wave("diff-smallk", k),
    "diff-mediumk": lambda k=60: _plane_wave("diff-mediumk", k),
    "diff-expdecay": _expdecay,
    "bvp-boyd": _bvp_boyd,
    "bvp-confined": _bvp_confined,
    "bvp-wide": _bvp_wide,
    "helm-const": _helm_const,
    "helm-multi": _helm_multi,
    "hyp-few": _hyp_few,
    "hyp-comb": _hyp_comb,
    "ns-2d": _ns_2d,
    "eigen-ho": _eigen_ho,
}


def catalog(name: str, **overrides) -> ProblemSpec:
    """Problem ``name`` with its published defaults.

    Keyword overrides are passed to the problem builder (``k``, ``N``,
    ``dt`` ...). Unknown keywords raise ``TypeError``.
    """
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownProblemError(
            f"unknown problem {name!r}; expected one of {PROBLEM_NAMES}"
        ) from None
    return builder(**overrides)
