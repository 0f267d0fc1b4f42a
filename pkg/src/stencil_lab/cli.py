"""``stencil-lab`` command line: sweeps, weight dumps and spectra."""

from __future__ import annotations

import argparse
import sys

from stencil_lab import bench
from stencil_lab.numerics import dft_spectrum
from stencil_lab.problems import PROBLEM_NAMES, catalog
from stencil_lab.stencils import SCHEMES, StencilError, make_weights


def _int_list(text: str) -> list[int]:
    out = []
    for part in text.replace(",", " ").split():
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stencil-lab",
        description="High-order differentiation stencils and their benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="run an M sweep for one experiment")
    sw.add_argument("experiment", choices=PROBLEM_NAMES)
    sw.add_argument("--methods", nargs="+", choices=SCHEMES, metavar="METHOD")
    sw.add_argument("--m-list", type=_int_list,
                    help="M values, e.g. '1,5,10' or '1-8'")
    sw.add_argument("--r", type=float, help="DSC-RSK ratio for every M")
    sw.add_argument("--d", type=float, help="Sech width constant")
    sw.add_argument("--out", help="CSV path (default: stdout)")
    sw.add_argument("--plot", help="SVG path")
    sw.add_argument("--serial", action="store_true",
                    help="run cells one at a time for cleaner timings")
    sw.add_argument("--dense-solver", action="store_true",
                    help="LU instead of preconditioned biconjugate gradients")

    wt = sub.add_parser("weights", help="print a stencil as CSV")
    wt.add_argument("scheme", choices=SCHEMES)
    wt.add_argument("--n", type=int, required=True, help="derivative order")
    wt.add_argument("--m", type=int, required=True, help="half-width M")
    wt.add_argument("--h", type=float, default=1.0, help="grid spacing")
    group = wt.add_mutually_exclusive_group()
    group.add_argument("--r", type=float, help="DSC-RSK ratio")
    group.add_argument("--d", type=float, help="Sech width constant")
    wt.add_argument("--offset", type=float, default=0.0)

    sp = sub.add_parser("spectrum", help="DFT magnitude of an exact solution")
    sp.add_argument("experiment", choices=PROBLEM_NAMES)
    return parser


def _sweep(args) -> int:
    results = bench.run_sweep(
        args.experiment, args.methods, args.m_list, r=args.r, D=args.d,
        solver="dense" if args.dense_solver else "pbcg",
        parallel=not args.serial,
    )
    if args.out:
        bench.emit(results, "csv", args.out)
    else:
        sys.stdout.write(bench.to_csv(results))
    if args.plot:
        bench.emit(results, "svg", args.plot)
    return 0


def _weights(args) -> int:
    w = make_weights(args.scheme, args.n, args.m, args.h, r=args.r, D=args.d,
                     offset=args.offset)
    sys.stdout.write(w.to_csv())
    return 0


def _spectrum(args) -> int:
    spec = catalog(args.experiment)
    x = spec.grid.x
    if spec.kind == "eigen":
        raise SystemExit("eigen-ho has no single exact solution to transform")
    if spec.kind == "ns":
        samples = spec.exact(0.0, x, 0.0)[1]  # v along y = 0
    elif spec.kind == "hyperbolic":
        samples = spec.exact(0.0, x)
    else:
        samples = spec.exact(x)
    sys.stdout.write(dft_spectrum(samples, spec.h).to_csv())
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return {"sweep": _sweep, "weights": _weights,
                "spectrum": _spectrum}[args.command](args)
    except (StencilError, OSError) as exc:
        print(f"stencil-lab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
