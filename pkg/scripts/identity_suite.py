"""Worst residual per identity over a parameter grid.

    python3 scripts/identity_suite.py --digits 120 --n-max 8
    python3 scripts/identity_suite.py --grid 0.3,0.5,2 0.9,0,0.05 --digits 80

Prints a table with one row per identity and one column per (q, alpha, t).
Ungated rows (the five-term rho display) are marked with ``*``.
"""

import argparse
import time

from mpmath import mp

from qlaguerre.qarith import PrecisionContext
from qlaguerre.suite import UNGATED, run_suite
from qlaguerre.weight import WeightParams

DEFAULT_GRID = ["0.6,0.5,0.3", "0.5,0,0.1", "0.8,1.5,1.0"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", nargs="+", default=DEFAULT_GRID, help="q,alpha,t triples")
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--digits", type=int, default=120)
    args = ap.parse_args()

    ctx = PrecisionContext(args.digits)
    reports = []
    for item in args.grid:
        start = time.time()
        rep = run_suite(WeightParams(*item.split(",")), args.n_max, ctx)
        reports.append(rep)
        print(f"# {item}: {len(rep.checks)} checks in {time.time() - start:.1f}s, passed={rep.passed}")
    names = []
    for rep in reports:
        names += [k for k in rep.worst() if k not in names]
    print(f"{'identity':<18}" + "".join(f"{g:>16}" for g in args.grid))
    for name in names:
        cells = []
        for rep in reports:
            w = rep.worst().get(name)
            cells.append("-" if w is None else mp.nstr(w, 3))
        mark = "*" if name in UNGATED else " "
        print(f"{name + mark:<18}" + "".join(f"{c:>16}" for c in cells))
    print(f"# tolerance {mp.nstr(ctx.eps_report, 3)}; * = reported, not gated")


if __name__ == "__main__":
    main()
