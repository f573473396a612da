"""Command-line front end.

    qlaguerre recurrence --q 0.5 --alpha 0 --t 0 --n-max 5
    qlaguerre verify --q 0.6 --alpha 0.5 --t 0.3 --n-max 8 --digits 120
    qlaguerre propagate --q 0.6 --alpha 0.5 --t 0.3 --n-max 10 --digits 100 --format json

Exit codes: 0 success, 1 usage error, 2 residual above tolerance,
3 precision exhausted (or a quadrature/propagation step that needs more digits).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from mpmath import mp, mpf

from qlaguerre import __version__
from qlaguerre import ladder as lad
from qlaguerre import painleve as pv
from qlaguerre.orthopoly import PrecisionExhausted, build_recurrence
from qlaguerre.qarith import MIN_DIGITS, PrecisionContext, default_digits
from qlaguerre.quadrature import DivergenceRisk, QuadratureNotConverged, QuadratureSpec, moment
from qlaguerre.suite import run_suite
from qlaguerre.weight import WeightParams

EXIT_OK, EXIT_USAGE, EXIT_RESIDUAL, EXIT_PRECISION = 0, 1, 2, 3
COMMANDS = ("moments", "recurrence", "aux", "verify", "propagate", "rho-check")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: str
    alpha: str = "0"
    t: str = "0"
    n_max: int = 8
    digits: int = 120
    format: str = "csv"
    output_path: str | None = None
    strict_display: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.n_max < 1:
            raise UsageError("--n-max must be at least 1")
        if self.digits < MIN_DIGITS:
            raise UsageError(f"--digits must be at least {MIN_DIGITS}")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")

    def params(self) -> WeightParams:
        try:
            return WeightParams(self.q, self.alpha, self.t)
        except (ValueError, ArithmeticError) as exc:
            raise UsageError(str(exc)) from None


@dataclass
class Table:
    columns: list
    rows: list
    exit_code: int = EXIT_OK
    notes: tuple = ()


def fmt_number(value, digits: int) -> str:
    """Decimal scientific notation with ``digits`` significant digits."""
    if value is None:
        return ""
    if isinstance(value, (int, str)):
        return str(value)
    text = mp.nstr(mpf(value), digits, strip_zeros=False, min_fixed=1, max_fixed=0)
    # mpmath keeps fixed notation for exponent 0
    return text if "e" in text or "inf" in text or "nan" in text else text + "e+0"


def _moments(cfg, p, ctx):
    if p.t_is_zero:
        k_min = -1 if mpf(p.alpha) >= mpf(1) / 4 else 0
    else:
        k_min = -2
    k_max = 2 * cfg.n_max + 1
    spec = QuadratureSpec.default(p, ctx, k_min=k_min, k_max=k_max)
    rows = [[k, moment(k, p, spec)] for k in range(k_min, k_max + 1)]
    return Table(["k", "mu_k"], rows)


def _recurrence(cfg, p, ctx):
    tab = build_recurrence(p, cfg.n_max, ctx)
    rows = [[n, tab.alpha_n[n], tab.beta_n[n], tab.h_n[n], tab.p_n[n]] for n in range(cfg.n_max + 1)]
    return Table(["n", "alpha_n", "beta_n", "h_n", "p_n"], rows)


def _aux(cfg, p, ctx):
    tab = build_recurrence(p, cfg.n_max, ctx)
    aux = lad.compute_auxiliaries(tab, p, tab.spec, cfg.n_max)
    rows = [[n, aux.R_n[n], aux.r_n[n], aux.R2_n[n], aux.r2_n[n], aux.S_n[n]] for n in range(cfg.n_max + 1)]
    return Table(["n", "R_n", "r_n", "R2_n", "r2_n", "S_n"], rows)


def _verify(cfg, p, ctx):
    rep = run_suite(p, cfg.n_max, ctx)
    rows = [[c.name, c.n, c.x or "", c.residual, int(c.residual < rep.tol), int(c.gated)] for c in rep.checks]
    failed = rep.failures()
    display = [c for c in rep.checks if not c.gated and not c.residual < rep.tol]
    notes = []
    if display:
        worst = max(c.residual for c in display)
        notes.append(
            f"finding: the five-term rho display fails at {len(display)} indices (worst residual "
            f"{mp.nstr(worst, 3)}); its resultant form is what gates"
        )
        if cfg.strict_display:
            failed = failed + display
    for c in failed:
        notes.append(f"fail: {c.name} n={c.n} x={c.x} residual={mp.nstr(c.residual, 3)}")
    notes.append(f"{len(rep.checks)} checks, {len(failed)} failed at tolerance {mp.nstr(rep.tol, 3)}")
    code = EXIT_RESIDUAL if failed else EXIT_OK
    return Table(["identity", "n", "x", "residual", "pass", "gated"], rows, code, tuple(notes))


def _propagate(cfg, p, ctx):
    if p.t_is_zero:
        raise UsageError("propagate needs t > 0")
    tab = build_recurrence(p, cfg.n_max + 1, ctx)
    aux = lad.compute_auxiliaries(tab, p, tab.spec, cfg.n_max)
    with mp.workdps(tab.dps):
        oracle = [pv.to_painleve(aux, p, n) for n in range(cfg.n_max + 1)]
    traj = pv.propagate(oracle[0].x_n, 1, p, cfg.n_max, digits=cfg.digits)
    rows = []
    with mp.workdps(tab.dps):
        for s, o in zip(traj, oracle):
            err = max(abs(s.x_n - o.x_n) / abs(o.x_n), abs(s.y_n - o.y_n) / abs(o.y_n))
            rows.append([s.n, s.x_n, s.y_n, err])
    return Table(["n", "x_n", "y_n", "residual_vs_oracle"], rows)


def _rho_check(cfg, p, ctx):
    if p.t_is_zero:
        raise UsageError("rho-check requires t > 0")
    tab = build_recurrence(p, cfg.n_max + 1, ctx)
    seq = pv.rho_sequence(tab, p)
    rows, bad_display, bad_resultant = [], 0, 0
    with mp.workdps(tab.dps):
        for n in range(1, cfg.n_max + 1):
            disp = pv.rho_residual(tab, p, n, seq)
            res = pv.rho_resultant_residual(tab, p, n, seq)
            bad_display += not disp < ctx.eps_report
            bad_resultant += not res < ctx.eps_report
            rows.append([n, seq.rho_n[n], seq.J_n[n], seq.F_n[n], seq.G_n[n], seq.H_n[n], seq.I_n[n], disp, res])
    notes = []
    if bad_display:
        notes.append(f"finding: five-term display fails at {bad_display} of {cfg.n_max} indices")
    failed = bad_resultant or (cfg.strict_display and bad_display)
    cols = ["n", "rho_n", "J_n", "F_n", "G_n", "H_n", "I_n", "residual_display", "residual_resultant"]
    return Table(cols, rows, EXIT_RESIDUAL if failed else EXIT_OK, tuple(notes))


HANDLERS = {
    "moments": _moments,
    "recurrence": _recurrence,
    "aux": _aux,
    "verify": _verify,
    "propagate": _propagate,
    "rho-check": _rho_check,
}


def render(table: Table, cfg: RunConfig) -> str:
    cells = [[fmt_number(v, cfg.digits) for v in row] for row in table.rows]
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        writer.writerows(cells)
        return buf.getvalue()
    meta = {
        "command": cfg.command,
        "parameters": {"q": cfg.q, "alpha": cfg.alpha, "t": cfg.t},
        "n_max": cfg.n_max,
        "digits": cfg.digits,
        "version": __version__,
        "exit_code": table.exit_code,
        "notes": list(table.notes),
    }
    data = {col: [row[i] for row in cells] for i, col in enumerate(table.columns)}
    return json.dumps({"metadata": meta, "data": data}, indent=2) + "\n"


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        p = cfg.params()
        ctx = PrecisionContext(cfg.digits)
        table = HANDLERS[cfg.command](cfg, p, ctx)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except DivergenceRisk as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PRECISION
    except (QuadratureNotConverged, pv.NearSingularStep) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PRECISION
    text = render(table, cfg)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    for note in table.notes:
        print(note, file=stderr)
    return table.exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qlaguerre", description="Orthogonal polynomials for the deformed q-Laguerre weight.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", required=True, help="base q in (0, 1)")
    common.add_argument("--alpha", default="0", help="exponent alpha > -1 (default 0)")
    common.add_argument("--t", default="0", help="deformation t >= 0 (default 0)")
    common.add_argument("--n-max", type=int, default=8, help="largest degree (default 8)")
    common.add_argument(
        "--digits", type=int, default=None, help="working digits (default $QLAGUERRE_DIGITS or 120)"
    )
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "moments": "moments mu_k by certified quadrature",
        "recurrence": "recurrence coefficients, norms and p(n)",
        "aux": "auxiliary integrals R_n, r_n, R2_n, r2_n, S_n",
        "verify": "run the residual suite; exit 2 if any gated residual fails",
        "propagate": "forward (x_n, y_n) recursion against the quadrature oracle",
        "rho-check": "rho_n sequences and the second-order equation residuals",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name in ("verify", "rho-check"):
            sp.add_argument(
                "--strict-display", action="store_true", help="also fail on the five-term rho display"
            )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        digits = args.digits if args.digits is not None else default_digits()
        cfg = RunConfig(
            command=args.command,
            q=args.q,
            alpha=args.alpha,
            t=args.t,
            n_max=args.n_max,
            digits=digits,
            format=args.format,
            output_path=args.output,
            strict_display=getattr(args, "strict_display", False),
        )
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
