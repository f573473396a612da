"""The second-order equation for rho_n: displayed form versus resultant form.

    python3 scripts/rho_equation_finding.py --digits 120 --n-max 8

Built from p(n) alone, with S = J_n + J_{n-1}, h = J_n J_{n-1} q**n (1 - q**(n+alpha)) and
K = q**n S + J_n J_{n-1} (1 - q**(2n+alpha) (1 + rho_n)):

* ``J_n x_n = 1``, and ``y_n`` is a common root of ``y**2 + F_n y + G_n`` and
  ``y**2 - I_n y + H_n``, so their resultant vanishes;
* multiplied by ``S**2`` the resultant is
  ``S**2 G**2 - 2 S G h + h**2 + S F**2 h + S F G K + F h K + G K**2``;
* the five-term display instead carries ``-S (h (2G + F**2) + K F G)``,
  i.e. the ``S F**2 h`` and ``S F G K`` terms with the wrong sign.  It is also
  not homogeneous in (F, G), so it cannot be normalised that way.

The script prints every piece of that chain on computed data; the ``gap``
column checks that display minus resultant is exactly the two flipped terms.
"""

import argparse
from dataclasses import replace

from mpmath import mp, mpf

from qlaguerre import ladder as lad
from qlaguerre import painleve as pv
from qlaguerre.orthopoly import build_recurrence
from qlaguerre.qarith import PrecisionContext
from qlaguerre.weight import WeightParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", default="0.6")
    ap.add_argument("--alpha", default="0.5")
    ap.add_argument("--t", default="0.3")
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--digits", type=int, default=120)
    args = ap.parse_args()

    p = WeightParams(args.q, args.alpha, args.t)
    tab = build_recurrence(p, args.n_max + 1, PrecisionContext(args.digits))
    aux = lad.compute_auxiliaries(tab, p, tab.spec, args.n_max)
    seq = pv.rho_sequence(tab, p)
    fmt = lambda v: mp.nstr(v, 3)  # noqa: E731
    with mp.workdps(tab.dps):
        print(f"# {p}  digits={args.digits}")
        print(f"{'n':>3} {'|J x - 1|':>10} {'quadFG':>10} {'quadHI':>10} {'resultant':>10} {'display':>10} {'gap':>10}")
        for n in range(1, args.n_max + 1):
            x = pv.to_painleve(aux, p, n).x_n
            qa, qb = pv.rho_quadratic_residuals(seq, aux, n, p)
            res = pv.rho_resultant_residual(tab, p, n, seq)
            disp = pv.rho_residual(tab, p, n, seq)
            # display minus resultant should be exactly -2 S (h F**2 + K F G)
            s, h, k, f, g = pv._rho_pieces(seq, n, p)
            diff = mp.fsum(pv.rho_terms(seq, n, p)) - mp.fsum(pv.rho_resultant_terms(seq, n, p))
            gap = lad.relative_residual(diff, 2 * s * (h * f * f + k * f * g))
            print(
                f"{n:>3} {fmt(abs(seq.J_n[n] * x - 1)):>10} {fmt(qa):>10} {fmt(qb):>10} "
                f"{fmt(res):>10} {fmt(disp):>10} {fmt(gap):>10}"
            )
        n, lam = 3, mpf(2)
        base = mp.fsum(pv.rho_terms(seq, n, p))
        scaled = replace(seq, F_n=tuple(lam * f for f in seq.F_n), G_n=tuple(lam * g for g in seq.G_n))
        ratio = mp.fsum(pv.rho_terms(scaled, n, p)) / base
        print(f"# homogeneity probe at n={n}: display(2F, 2G) / display(F, G) = {fmt(ratio)} (4 if homogeneous)")


if __name__ == "__main__":
    main()
