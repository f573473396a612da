"""Error growth of the forward (x_n, y_n) recursion against the quadrature oracle.

    python3 scripts/propagation_stability.py --q 0.6 --alpha 0.5 --t 0.3 --n-max 16 --digits 100

The recursion runs at ``--digits``; the oracle comes from a pipeline built at
``--digits + 40`` so its own error does not mask the growth.  The per-step
growth ratio is reported for every n; the stability certificate is the claim
that it stays below 1e3 for n <= 12.
"""

import argparse
import time

from mpmath import log10, mp, mpf

from qlaguerre import ladder as lad
from qlaguerre import painleve as pv
from qlaguerre.orthopoly import build_recurrence
from qlaguerre.qarith import PrecisionContext
from qlaguerre.weight import WeightParams

CERTIFIED_UP_TO = 12
MAX_RATIO = 1000


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", default="0.6")
    ap.add_argument("--alpha", default="0.5")
    ap.add_argument("--t", default="0.3")
    ap.add_argument("--n-max", type=int, default=16)
    ap.add_argument("--digits", type=int, default=100)
    args = ap.parse_args()

    p = WeightParams(args.q, args.alpha, args.t)
    start = time.time()
    tab = build_recurrence(p, args.n_max + 1, PrecisionContext(args.digits + 40))
    aux = lad.compute_auxiliaries(tab, p, tab.spec, args.n_max)
    with mp.workdps(tab.dps):
        oracle = [pv.to_painleve(aux, p, n) for n in range(args.n_max + 1)]
        x0 = +oracle[0].x_n
    with mp.workdps(args.digits):
        x0 = +x0  # the recursion only sees a correctly rounded seed
    traj = pv.propagate(x0, 1, p, args.n_max, digits=args.digits)

    print(f"# {p}  digits={args.digits}  oracle built in {time.time() - start:.1f}s")
    print(f"{'n':>3} {'log10 err':>10} {'ratio':>10}")
    prev, worst_ratio, ok = None, mpf(0), True
    with mp.workdps(tab.dps):
        for s, o in zip(traj, oracle):
            err = max(abs(s.x_n - o.x_n) / abs(o.x_n), abs(s.y_n - o.y_n) / abs(o.y_n))
            err = max(err, mpf(10) ** -(args.digits + 5))
            ratio = err / prev if prev is not None else None
            if ratio is not None and 1 <= s.n <= CERTIFIED_UP_TO:
                worst_ratio = max(worst_ratio, ratio)
                ok = ok and ratio < MAX_RATIO
            print(f"{s.n:>3} {float(log10(err)):>10.2f} {'' if ratio is None else mp.nstr(ratio, 3):>10}")
            prev = err
    verdict = "holds" if ok else "violated"
    print(f"# worst growth ratio for n <= {CERTIFIED_UP_TO}: {mp.nstr(worst_ratio, 3)} (certificate {verdict})")


if __name__ == "__main__":
    main()
