"""
A sweep over stencil width for a two-point boundary value problem
=================================================================

``u'' - u = f`` on ``[-3, 3]`` with a Gaussian wave packet as the exact
solution. Every method uses the same grid and exact exterior data, so the
only thing that changes between rows is the stencil.
"""

from pathlib import Path

from stencil_lab import bench

# One cell per (method, M). Presets supply r and D for each M.
results = bench.run_sweep("bvp-confined", ["FD", "MEuler", "Sech", "DSC-RSK"],
                          [5, 10, 20, 40, 80], parallel=False)

print(f"{'method':<9}{'M':>4}  {'error':>10}  status")
for res in results:
    shown = f"{res.error:10.2e}" if res.status == "ok" else f"{'':>10}"
    print(f"{res.method:<9}{res.M:>4}  {shown}  {res.status}")

# The same results as an SVG chart of log error against M.
# ``bench.to_csv(results)`` gives the table form.
out = Path("bvp_confined.svg")
bench.emit(results, "svg", out)
print(f"wrote {out}")
