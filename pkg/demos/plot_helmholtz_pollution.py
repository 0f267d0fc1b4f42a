"""
Helmholtz at two points per wavelength
======================================

``-u'' - k^2 u = -1`` with ``k = 500 pi`` on ``[0, 1]``, a Dirichlet end at
``x = 0`` and an outgoing (Robin) end at ``x = 1``. With 526 nodes the
grid only carries about 2.1 points per wavelength, the regime where
low-order schemes suffer from pollution error.
"""

from stencil_lab import make_weights
from stencil_lab.problems import catalog, solve_helmholtz

spec = catalog("helm-const")
print(f"h = {spec.h:.3e}, points per wavelength = {spec.ppw():.2f}")

# The error is the relative H1 seminorm, measured with each scheme's own
# first-derivative stencil.
for scheme, M, kw in [("FD", 250, {}), ("Sech", 50, {"D": 0.28}),
                      ("DSC-RSK", 250, {"r": 42.3}), ("DSC-RSK", 500, {"r": 60.0})]:
    d2 = make_weights(scheme, 2, M, spec.h, **kw)
    d1 = make_weights(scheme, 1, M, spec.h, **kw)
    sol = solve_helmholtz(spec, d2, d1, solver="dense")
    print(f"{scheme:<8} M={M:<4} e1 = {sol.error:.2e}")
