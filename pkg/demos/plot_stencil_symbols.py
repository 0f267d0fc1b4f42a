"""
How well does each stencil resolve a wave?
==========================================

A centered stencil acts on ``exp(iKx/h)`` by multiplying it with its
symbol. Comparing that symbol with the exact ``iK`` shows which scaled
wavenumbers a scheme can differentiate. Here we print the relative
symbol error for every scheme at a fixed half-width.
"""

import numpy as np

from stencil_lab import make_weights, stencil_symbol

M = 16
K = np.array([0.5, 1.0, 1.5, 2.0, 2.5, 3.0])

# The free parameters below are typical values; DSC-RSK wants r to grow
# roughly like sqrt(M), Sech works with D of a few tenths.
params = {"DSC-RSK": {"r": 4.5}, "Sech": {"D": 0.3}}

print(f"relative symbol error, M = {M}")
print("scheme   " + "".join(f"K={k:<9.1f}" for k in K))
for scheme in ("FD", "BoydFD", "Euler", "MEuler", "Sech", "Sinc", "DSC-RSK"):
    w = make_weights(scheme, 1, M, 1.0, **params.get(scheme, {}))
    rel = np.abs(stencil_symbol(w, K) - 1j * K) / K
    print(f"{scheme:<9}" + "".join(f"{e:<11.2e}" for e in rel))

# Raising M pushes FD's accurate band towards K = pi only slowly. The
# windowed sinc, with r growing like sqrt(M), gains accuracy much faster.
for M in (8, 32, 64):
    fd = make_weights("FD", 1, M, 1.0)
    dsc = make_weights("DSC-RSK", 1, M, 1.0, r=np.sqrt(M) * 1.1)
    print(f"M={M:3d}  at K=2.5: FD {abs(stencil_symbol(fd, 2.5) - 2.5j) / 2.5:.1e}"
          f"  DSC-RSK {abs(stencil_symbol(dsc, 2.5) - 2.5j) / 2.5:.1e}")
