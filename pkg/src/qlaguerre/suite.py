"""The full residual suite, shared by ``qlaguerre verify`` and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from mpmath import mp, mpf

from qlaguerre import ladder as lad
from qlaguerre import painleve as pv
from qlaguerre.orthopoly import build_recurrence
from qlaguerre.qarith import PrecisionContext
from qlaguerre.weight import WeightParams

# identities reported but excluded from the pass/fail decision
UNGATED = frozenset({"rho_display"})


@dataclass(frozen=True)
class Check:
    name: str
    n: int
    x: str | None
    residual: mpf

    @property
    def gated(self) -> bool:
        return self.name not in UNGATED


@dataclass
class SuiteReport:
    params: WeightParams
    n_max: int
    digits: int
    tol: mpf
    checks: list = field(default_factory=list)

    def add(self, name, n, residual, x=None):
        if residual is not None:
            self.checks.append(Check(name, n, x, residual))

    def worst(self, name=None) -> dict:
        """Largest residual per identity (or for ``name`` alone)."""
        out = {}
        for c in self.checks:
            if name is None or c.name == name:
                out[c.name] = max(out.get(c.name, mpf(0)), c.residual)
        return out

    def failures(self) -> list:
        return [c for c in self.checks if c.gated and not c.residual < self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures()


def sample_points(count=5, seed=0, low=0, high=10) -> list[str]:
    """Reproducible sample abscissae in ``(low, high)`` as 8-digit decimal strings."""
    rng = random.Random(seed)
    return [f"{rng.uniform(low, high):.8f}" for _ in range(count)]


def run_suite(p: WeightParams, n_max: int, ctx: PrecisionContext, xs=None, tol=None, tab=None, aux=None) -> SuiteReport:
    """Every identity at every ``1 <= n <= n_max`` (``0 <= n`` where defined).

    The ladder identities are sampled at ``xs`` (default: five points from
    :func:`sample_points`).  Identities involving ``R_n``/``r_n`` are skipped
    when those are undefined (``t = 0`` with small ``alpha``), and the
    ``rho`` equations and the first coupled equation when ``t = 0``.
    """
    xs = list(xs) if xs is not None else sample_points()
    tol = mpf(tol) if tol is not None else ctx.eps_report
    tab = tab or build_recurrence(p, n_max + 1, ctx)
    aux = aux or lad.compute_auxiliaries(tab, p, tab.spec, n_max + 1)
    rep = SuiteReport(p, n_max, ctx.digits, tol)
    inverse = aux.has_inverse_moments
    with mp.workdps(tab.dps):
        for n in range(n_max + 1):
            for x in xs:
                if n >= 1:
                    rep.add("structural", n, lad.structural_residual(tab, aux, n, x, p), x)
                    rep.add("qS2", n, lad.qs2_residual(tab, aux, n, x, p), x)
                    rep.add("qS2prime", n, lad.qs2prime_residual(tab, aux, n, x, p), x)
                rep.add("qS1", n, lad.qs1_residual(tab, aux, n, x, p), x)
            big, small = lad.switch_residuals(tab, aux, n, p)
            rep.add("switchR", n, big)
            if n >= 1:
                rep.add("switchr", n, small)
            sums = lad.sum_identity_residuals(tab, aux, n, p)
            rep.add("pcoef", n, sums["pcoef"])
            rep.add("sumR", n, sums.get("sumR"))
            alpha, beta = lad.lemma_coefficients(tab, aux, n, p)
            rep.add("lemma_alpha", n, abs(alpha - tab.alpha_n[n]) / abs(tab.alpha_n[n]))
            if beta is not None:
                rep.add("lemma_beta", n, abs(beta - tab.beta_n[n]) / abs(tab.beta_n[n]))
            if n == 0 or not inverse:
                continue
            for key, val in lad.coeff_system_residuals(tab, aux, n, p).items():
                rep.add(key, n, val)
            f1, f2 = pv.factor_residuals(aux, n, p)
            rep.add("factor1", n, f1)
            rep.add("factor2", n, f2)
            e1, e2 = pv.recurrence_residuals(aux, n, p)
            rep.add("rec1", n, e1)
            rep.add("rec2", n, e2)
            d1, d2 = pv.difference_residuals(tab, aux, n, p)
            rep.add("diff1", n, d1)
            rep.add("diff2", n, d2)
        if inverse:
            states = [pv.to_painleve(aux, p, n) for n in range(n_max + 2)]
            for n in range(n_max + 1):
                first, second = pv.coupled_residuals(states[n - 1] if n else None, states[n], states[n + 1], p)
                rep.add("coupled1", n, first)
                rep.add("coupled2", n, second)
        if not p.t_is_zero:
            seq = pv.rho_sequence(tab, p)
            for n in range(1, n_max + 1):
                rep.add("rho_display", n, pv.rho_residual(tab, p, n, seq))
                rep.add("rho_resultant", n, pv.rho_resultant_residual(tab, p, n, seq))
                qa, qb = pv.rho_quadratic_residuals(seq, aux, n, p)
                rep.add("rho_quadratic_FG", n, qa)
                rep.add("rho_quadratic_HI", n, qb)
    return rep
