"""
Harmonic oscillator eigenvalues
===============================

The Hamiltonian ``-1/2 d2/dx2 + x^2/2`` has eigenvalues ``n + 1/2``.
Discretizing the kinetic term with a stencil that spans the whole grid
turns the problem into a dense symmetric eigenproblem.
"""

import numpy as np

from stencil_lab import make_weights
from stencil_lab.problems import catalog, solve_eigen

spec = catalog("eigen-ho")  # 51 nodes on [-8.7, 8.7]
M = spec.N - 1

table = {}
for scheme, kw in [("Sinc", {}), ("DSC-RSK", {"r": 35.0}), ("FD", {}), ("Euler", {})]:
    res = solve_eigen(spec, make_weights(scheme, 2, M, spec.h, **kw))
    table[scheme] = [r.relative_error for r in res]

modes = [0, 5, 10, 20, 30]
print("mode  " + "".join(f"{s:>11}" for s in table))
for n in modes:
    print(f"{n:<6}" + "".join(f"{table[s][n]:11.2e}" for s in table))

# Higher modes spread beyond the box and past the grid resolution,
# so every scheme eventually loses accuracy.
print("max error over modes 0..10:",
      {s: float(np.max(e[:11])) for s, e in table.items()})
