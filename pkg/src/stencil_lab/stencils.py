"""Differentiation weights for centered stencils on uniform grids.

Every scheme returns a :class:`WeightVector` holding the ``2M+1`` weights
``delta[j]`` for ``j = -M..M`` such that

    d^n u / dx^n (x) ~ sum_j delta[j] * u(x + j*h)

The weights already carry the ``h**-n`` scaling.

Schemes
-------
FD        Fornberg's recursion (polynomial exactness of degree 2M).
Sinc      Truncated sinc pseudospectral kernel.
BoydFD    Sinc kernel tapered by the factorial acceleration weights.
Euler     Sinc kernel tapered by binomial tail sums.
MEuler    Euler with a rebalanced center weight for n = 2.
Sech      Spectrally weighted least squares with a sech weight.
DSC-RSK   Regularized Shannon kernel (sinc times a Gaussian envelope).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from stencil_lab.numerics import (
    ConvergenceError,
    SingularSystemError,
    gauss_legendre,
    svd_lstsq,
)

__all__ = [
    "StencilSpec",
    "WeightVector",
    "AccelerationWeights",
    "RSKParams",
    "SechParams",
    "GramSystem",
    "StencilError",
    "fd_weights",
    "sinc_weights",
    "boyd_fd_acceleration",
    "euler_acceleration",
    "meuler_acceleration",
    "accelerate",
    "sech_gram_system",
    "sech_weights",
    "rsk_kernel_eval",
    "dsc_rsk_weights",
    "stencil_symbol",
    "make_weights",
    "SCHEMES",
]

SCHEMES = ("FD", "BoydFD", "Euler", "MEuler", "Sech", "Sinc", "DSC-RSK")

# |x| below this fraction of h switches the RSK kernel to its Taylor series
RSK_SERIES_CUTOFF = 1e-4


class StencilError(ValueError):
    """Raised for stencil requests outside a scheme's domain."""


@dataclass(frozen=True)
class StencilSpec:
    n: int
    M: int
    h: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        if self.n not in (0, 1, 2):
            raise StencilError(f"derivative order must be 0, 1 or 2, got {self.n}")
        if int(self.M) != self.M or self.M < 1:
            raise StencilError(f"half-width M must be a positive integer, got {self.M}")
        if not self.h > 0:
            raise StencilError(f"spacing h must be positive, got {self.h}")
        if not 0.0 <= self.offset < self.h:
            raise StencilError(f"offset must lie in [0, h), got {self.offset}")

    @property
    def on_grid(self) -> bool:
        return self.offset == 0.0

    @property
    def offsets(self) -> np.ndarray:
        """Integer stencil offsets ``j = -M..M``."""
        return np.arange(-self.M, self.M + 1)


@dataclass(frozen=True, eq=False)
class WeightVector:
    spec: StencilSpec
    weights: np.ndarray
    scheme: str = ""

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (2 * self.spec.M + 1,):
            raise StencilError(
                f"expected {2 * self.spec.M + 1} weights, got shape {w.shape}"
            )
        object.__setattr__(self, "weights", w)

    @property
    def M(self) -> int:
        return self.spec.M

    def __getitem__(self, j: int) -> float:
        """Weight at stencil offset ``j`` (``-M <= j <= M``)."""
        if abs(j) > self.spec.M:
            raise IndexError(j)
        return self.weights[j + self.spec.M]

    def __len__(self) -> int:
        return self.weights.size

    def to_csv(self) -> str:
        lines = ["j,weight"]
        for j, w in zip(self.spec.offsets, self.weights):
            lines.append(f"{j},{w.item()!r}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class AccelerationWeights:
    """Taper ``w[j]`` (``j = 0..M``) applied to the sinc kernel.

    ``w0_second`` overrides the center taper when assembling second
    derivatives (the MEuler rebalancing); ``None`` means use ``w[0]``.
    """

    M: int
    w: np.ndarray
    mu: np.ndarray | None = None
    w0_second: float | None = None
    family: str = ""


@dataclass(frozen=True)
class RSKParams:
    """Regularized Shannon kernel width, ``sigma = r*h``."""

    r: float

    def __post_init__(self):
        if not self.r > 0:
            raise StencilError(f"RSK ratio r must be positive, got {self.r}")

    def sigma(self, h: float) -> float:
        return self.r * h

    @property
    def a(self) -> float:
        """Exponent of the equivalent taper ``exp(-a^2 k^2)``."""
        return 1.0 / (math.sqrt(2.0) * self.r)

    @staticmethod
    def a_fd(M: int) -> float:
        """Value of ``a`` whose taper most resembles the FD weights."""
        return 1.0 / math.sqrt(M + 1)


@dataclass(frozen=True)
class SechParams:
    D: float
    quadrature_nodes: int = 512
    svd_truncation: float = 1e-12
    # relative disagreement between the rule and a doubled rule on diag(G)
    quadrature_tolerance: float = 1e-8

    def __post_init__(self):
        if not self.D > 0:
            raise StencilError(f"sech width D must be positive, got {self.D}")
        if self.quadrature_nodes < 2:
            raise StencilError("need at least 2 quadrature nodes")

    def omega(self, K):
        return 1.0 / np.cosh(np.asarray(K) * np.pi / (2.0 * self.D))


@dataclass(frozen=True, eq=False)
class GramSystem:
    G: np.ndarray
    chi: np.ndarray
    parity: str  # "odd" (sin basis) or "even" (cos basis, j = 0..M)
    basis_index: np.ndarray


# --------------------------------------------------------------------------
# Standard finite differences


def _fornberg(z: float, x: np.ndarray, m: int) -> np.ndarray:
    """Fornberg's weights for derivatives ``0..m`` at ``z`` from nodes ``x``.

    Returns an array of shape ``(len(x), m + 1)``. The inner loop over the
    previous nodes is vectorized.
    """
    n = x.size
    C = np.zeros((n, m + 1))
    C[0, 0] = 1.0
    c1 = 1.0
    c4 = x[0] - z
    for i in range(1, n):
        mn = min(i, m)
        c5 = c4
        c4 = x[i] - z
        diffs = x[i] - x[:i]
        c2 = np.prod(diffs)
        # new node, built from the previous row before it is overwritten
        ks = np.arange(mn, 0, -1)
        new_row = np.zeros(m + 1)
        new_row[ks] = c1 * (ks * C[i - 1, ks - 1] - c5 * C[i - 1, ks]) / c2
        new_row[0] = -c1 * c5 * C[i - 1, 0] / c2
        # update the old nodes, descending k so k-1 is still the old value
        for k in range(mn, 0, -1):
            C[:i, k] = (c4 * C[:i, k] - k * C[:i, k - 1]) / diffs
        C[:i, 0] = c4 * C[:i, 0] / diffs
        C[i] = new_row
        c1 = c2
    return C


def fd_weights(spec: StencilSpec) -> WeightVector:
    """Standard finite difference weights on ``2M+1`` nodes.

    The weights differentiate every polynomial of degree ``<= 2M`` exactly at
    ``spec.offset``. Nodes are visited closest first and rescaled so the
    products inside the recursion stay in floating-point range for large M.
    """
    M, n = spec.M, spec.n
    j = spec.offsets.astype(float)
    order = np.argsort(np.abs(j - spec.offset / spec.h), kind="stable")
    scale = math.e / (2 * M + 1)
    x = j[order] * scale
    z = spec.offset / spec.h * scale
    C = _fornberg(z, x, n)
    w = np.empty(2 * M + 1)
    w[order] = C[:, n]
    w *= (scale / spec.h) ** n
    if spec.on_grid:
        # exact parity; removes rounding noise such as a tiny center weight
        w = 0.5 * (w + (-1) ** n * w[::-1])
    return WeightVector(spec, w, "FD")


# --------------------------------------------------------------------------
# Sinc kernel and sum acceleration


def _require_on_grid(spec: StencilSpec, what: str) -> None:
    if not spec.on_grid:
        raise StencilError(f"{what} is defined for on-grid differentiation only")


def _sinc_kernel(M: int, n: int, h: float) -> np.ndarray:
    j = np.arange(-M, M + 1)
    sign = np.where(j % 2 == 0, 1.0, -1.0)  # (-1)^j
    d = np.zeros(2 * M + 1)
    nz = j != 0
    if n == 1:
        d[nz] = -sign[nz] / (h * j[nz])
    else:
        d[nz] = -2.0 * sign[nz] / (h * h * j[nz] ** 2)
        d[M] = -math.pi**2 / (3.0 * h * h)
    return d


def sinc_weights(spec: StencilSpec) -> WeightVector:
    """Truncated sinc pseudospectral weights.

    The second-derivative off-center entries are ``-2(-1)^j/(h j)^2``, the
    exact second derivative of ``sin(pi x/h)/(pi x/h)`` at the nodes.
    """
    _require_on_grid(spec, "the sinc kernel")
    if spec.n == 0:
        raise StencilError("the sinc kernel is used for n = 1 or 2 only")
    return WeightVector(spec, _sinc_kernel(spec.M, spec.n, spec.h), "Sinc")


def _check_M(M: int) -> None:
    if int(M) != M or M < 1:
        raise StencilError(f"half-width M must be a positive integer, got {M}")


def boyd_fd_acceleration(M: int, legacy_constant: bool = False) -> AccelerationWeights:
    """Factorial taper that turns the sinc kernel into centered FD weights.

    ``w[j] = (M!)^2 / ((M-j)! (M+j)!)`` evaluated through log-gamma, and
    ``w[0] = (6/pi^2) * sum_{k<=M} 1/k^2``. With ``legacy_constant=True`` the
    center uses ``6/pi`` instead, which does not reproduce FD.
    """
    _check_M(M)
    j = np.arange(1, M + 1)
    w = np.empty(M + 1)
    w[1:] = np.exp(2 * gammaln(M + 1) - gammaln(M - j + 1) - gammaln(M + j + 1))
    const = 6.0 / math.pi if legacy_constant else 6.0 / math.pi**2
    w[0] = const * np.sum(1.0 / j.astype(float) ** 2)
    return AccelerationWeights(M, w, family="BoydFD")


def _binomial_half(M: int) -> np.ndarray:
    k = np.arange(M + 1)
    return np.exp(
        gammaln(M + 1) - gammaln(k + 1) - gammaln(M - k + 1) - M * math.log(2.0)
    )


def euler_acceleration(M: int) -> AccelerationWeights:
    """Euler taper: ``w[j] = sum_{k>=j} C(M, k) / 2^M``."""
    _check_M(M)
    mu = _binomial_half(M)
    # tail sums accumulated from the small end
    w = np.cumsum(mu[::-1])[::-1]
    # rounding in the long sums can push a tail a hair above its predecessor
    w = np.minimum(np.minimum.accumulate(w), 1.0)
    w[0] = 1.0
    return AccelerationWeights(M, w, mu=mu, family="Euler")


def meuler_acceleration(M: int) -> AccelerationWeights:
    """Euler taper whose second-derivative center weight balances the rest.

    ``w0_mod = (12/pi^2) sum_j (-1)^(j+1) w[j] / j^2`` makes the second
    derivative stencil annihilate constants.
    """
    base = euler_acceleration(M)
    j = np.arange(1, M + 1)
    sign = np.where(j % 2 == 1, 1.0, -1.0)
    w0_mod = 12.0 / math.pi**2 * np.sum(sign * base.w[1:] / j.astype(float) ** 2)
    return AccelerationWeights(M, base.w, mu=base.mu, w0_second=float(w0_mod),
                               family="MEuler")


def accelerate(accel: AccelerationWeights, spec: StencilSpec) -> WeightVector:
    """Multiply the sinc kernel by an acceleration taper."""
    _require_on_grid(spec, "sum acceleration")
    if spec.n == 0:
        raise StencilError("sum acceleration is used for n = 1 or 2 only")
    if accel.M != spec.M:
        raise StencilError(f"taper has M={accel.M}, stencil has M={spec.M}")
    taper = accel.w[np.abs(spec.offsets)].copy()
    if spec.n == 2 and accel.w0_second is not None:
        taper[spec.M] = accel.w0_second
    return WeightVector(spec, taper * _sinc_kernel(spec.M, spec.n, spec.h),
                        accel.family)


# --------------------------------------------------------------------------
# Spectrally weighted (sech) least squares


def _sech_basis(n: int, M: int, K: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if n % 2:
        idx = np.arange(1, M + 1)
        return idx, np.sin(np.outer(idx, K))
    idx = np.arange(0, M + 1)
    return idx, np.cos(np.outer(idx, K))


def _target_symbol(n: int, K: np.ndarray) -> np.ndarray:
    # real part of the derivative symbol (iK)^n after removing the factor i
    return K if n == 1 else -K * K


def sech_gram_system(n: int, M: int, params: SechParams,
                     nodes: int | None = None) -> GramSystem:
    """Gram matrix and right-hand side of the weighted least-squares fit."""
    if n not in (1, 2):
        raise StencilError("sech weights are built for n = 1 or 2")
    rule = gauss_legendre(nodes or params.quadrature_nodes, -math.pi, math.pi)
    K, wq = rule.nodes, rule.weights
    idx, phi = _sech_basis(n, M, K)
    weighted = phi * (wq * params.omega(K))
    G = weighted @ phi.T
    G = 0.5 * (G + G.T)
    chi = weighted @ _target_symbol(n, K)
    return GramSystem(G, chi, "odd" if n % 2 else "even", idx)


def sech_weights(spec: StencilSpec, params: SechParams) -> WeightVector:
    """Spectrally weighted differences with ``omega(K) = sech(K pi / 2D)``.

    Minimizes the weighted L2 mismatch between the stencil symbol and the
    exact derivative symbol over ``K`` in ``[-pi, pi]``. The Gram system is
    integrated with Gauss-Legendre quadrature and solved by truncated SVD.

    Raises
    ------
    ConvergenceError
        If the quadrature rule no longer resolves the Gram entries (checked
        against a rule with twice the nodes on the diagonal).
    SingularSystemError
        If no singular value survives truncation.
    """
    _require_on_grid(spec, "the sech least-squares stencil")
    if spec.n not in (1, 2):
        raise StencilError("sech weights are built for n = 1 or 2")
    M, n = spec.M, spec.n
    system = sech_gram_system(n, M, params)
    check = sech_gram_system(n, M, params, nodes=2 * params.quadrature_nodes)
    diag, ref = np.diag(system.G), np.diag(check.G)
    drift = np.max(np.abs(diag - ref) / np.abs(ref))
    if not drift <= params.quadrature_tolerance:
        raise ConvergenceError(
            f"sech Gram quadrature unresolved at M={M} with "
            f"{params.quadrature_nodes} nodes (relative drift {drift:.2e})",
            residual=float(drift),
        )
    coef = svd_lstsq(system.G, system.chi, params.svd_truncation)
    w = np.zeros(2 * M + 1)
    if n == 1:
        half = 0.5 * coef
        w[M + 1:] = half
        w[:M] = -half[::-1]
    else:
        w[M] = coef[0]
        half = 0.5 * coef[1:]
        w[M + 1:] = half
        w[:M] = half[::-1]
    return WeightVector(spec, w / spec.h**n, "Sech")


# --------------------------------------------------------------------------
# Regularized Shannon kernel


def _rsk_series_coeffs(s: float, b: float, terms: int = 5) -> list[float]:
    """Coefficients ``c[m]`` of ``x^(2m)`` in ``sinc(s x) * exp(-b x^2)``."""
    out = []
    for m in range(terms):
        acc = 0.0
        for p in range(m + 1):
            q = m - p
            acc += s ** (2 * p) * b**q / (math.factorial(2 * p + 1) * math.factorial(q))
        out.append((-1) ** m * acc)
    return out


def rsk_kernel_eval(x, order: int, h: float, sigma: float):
    """Regularized Shannon kernel or its first/second derivative at ``x``.

    ``x`` may be a scalar or an array. Near the removable singularity at
    ``x = 0`` a Taylor series is used.
    """
    if order not in (0, 1, 2):
        raise StencilError(f"kernel order must be 0, 1 or 2, got {order}")
    if not (sigma > 0 and h > 0):
        raise StencilError("sigma and h must be positive")
    xa = np.asarray(x, dtype=float)
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)
    s = math.pi / h
    s2 = sigma * sigma
    out = np.empty_like(xa)

    small = np.abs(xa) < RSK_SERIES_CUTOFF * h
    c = _rsk_series_coeffs(s, 1.0 / (2.0 * s2))
    xs = xa[small]
    if order == 0:
        out[small] = sum(c[m] * xs ** (2 * m) for m in range(4))
    elif order == 1:
        out[small] = sum(2 * m * c[m] * xs ** (2 * m - 1) for m in range(1, 5))
    else:
        out[small] = sum(2 * m * (2 * m - 1) * c[m] * xs ** (2 * m - 2)
                         for m in range(1, 5))

    xb = xa[~small]
    sn, cs = np.sin(s * xb), np.cos(s * xb)
    g = np.exp(-xb * xb / (2.0 * s2))
    if order == 0:
        val = sn / (s * xb)
    elif order == 1:
        val = cs / xb - sn / (s * xb * xb) - sn / (s * s2)
    else:
        val = (
            -s * sn / xb
            - 2.0 * cs / (xb * xb)
            - 2.0 * cs / s2
            + 2.0 * sn / (s * xb**3)
            + sn / (s * xb * s2)
            + sn * xb / (s * s2 * s2)
        )
    out[~small] = val * g
    return float(out[0]) if scalar else out


def dsc_rsk_weights(spec: StencilSpec, params: RSKParams) -> WeightVector:
    """DSC weights from the regularized Shannon kernel.

    ``delta[j] = kernel^(n)(offset - j h)``; works off-grid and for
    interpolation (``n = 0``).
    """
    x = spec.offset - spec.offsets * spec.h
    w = rsk_kernel_eval(x, spec.n, spec.h, params.sigma(spec.h))
    return WeightVector(spec, w, "DSC-RSK")


# --------------------------------------------------------------------------
# Helpers


def stencil_symbol(weights: WeightVector, K) -> np.ndarray:
    """Fourier symbol ``sum_j delta[j] exp(i j K)`` at scaled wavenumbers K."""
    K = np.asarray(K, dtype=float)
    j = weights.spec.offsets
    return np.exp(1j * np.multiply.outer(K, j)) @ weights.weights


def make_weights(scheme: str, n: int, M: int, h: float, *, r: float | None = None,
                 D: float | None = None, offset: float = 0.0) -> WeightVector:
    """Build weights for any scheme by name (see :data:`SCHEMES`)."""
    spec = StencilSpec(n, M, h, offset)
    if scheme == "FD":
        return fd_weights(spec)
    if scheme == "Sinc":
        return sinc_weights(spec)
    if scheme == "BoydFD":
        return accelerate(boyd_fd_acceleration(M), spec)
    if scheme == "Euler":
        return accelerate(euler_acceleration(M), spec)
    if scheme == "MEuler":
        return accelerate(meuler_acceleration(M), spec)
    if scheme == "Sech":
        if D is None:
            raise StencilError("Sech weights need the width constant D")
        return sech_weights(spec, SechParams(D))
    if scheme == "DSC-RSK":
        if r is None:
            raise StencilError("DSC-RSK weights need the width ratio r")
        return dsc_rsk_weights(spec, RSKParams(r))
    raise StencilError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
