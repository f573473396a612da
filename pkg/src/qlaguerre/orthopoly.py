"""Monic orthogonal polynomials, norms and recurrence coefficients.

``x P_n = P_{n+1} + alpha_n P_n + beta_n P_{n-1}`` with ``P_0 = 1`` and
``beta_0 P_{-1} = 0``.  The table is built by the Stieltjes procedure on the
discretised measure; Hankel determinants of the moments give an independent
(and much worse conditioned) route used as a cross-check for small degrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import matrix, mp, mpf, sqrt

from qlaguerre.qarith import PrecisionContext, to_mpf
from qlaguerre.quadrature import MIN_DECAY, QuadratureSpec, integrate_weighted, node_sum, weighted_nodes
from qlaguerre.weight import WeightParams

# digits the check run is allowed to lag behind the main run
CHECK_DIGIT_DROP = 10


class PrecisionExhausted(ArithmeticError):
    def __init__(self, n_max, trusted):
        super().__init__(f"insufficient digits for n_max={n_max}: recurrence trusted only up to n={trusted}")
        self.n_max = n_max
        self.trusted = trusted


@dataclass(frozen=True)
class RecurrenceTable:
    """Recurrence data for degrees ``0..n_max``; all lists are indexed by ``n``.

    ``p_n`` has one extra entry, ``p(n_max + 1)``, so that
    ``alpha_n = p(n) - p(n+1)`` holds for every stored ``alpha_n``.
    """

    n_max: int
    alpha_n: tuple
    beta_n: tuple
    h_n: tuple
    p_n: tuple
    params: WeightParams
    spec: QuadratureSpec

    @property
    def dps(self) -> int:
        return self.spec.dps

    def alpha_sum(self, n: int) -> mpf:
        """``sum_{j<n} alpha_j = -p(n)``."""
        return -self.p_n[n]


def pipeline_spec(p: WeightParams, ctx: PrecisionContext, n_max: int) -> QuadratureSpec:
    """Quadrature sized for the whole pipeline up to degree ``n_max``.

    Integrands reach degree ``2 n_max + 3`` at infinity.  At 0 they go down to
    ``y**-2`` when ``t > 0``; with ``t = 0`` the window covers ``1/y`` only if
    ``alpha`` leaves a comfortable margin, otherwise plain polynomials.
    """
    pctx = ctx.with_digits(ctx.digits + ctx.level_guard * n_max)
    if not p.t_is_zero:
        k_min = -2
    else:
        with mp.workdps(30):
            k_min = -1 if to_mpf(p.alpha) >= MIN_DECAY else 0
    return QuadratureSpec.default(p, pctx, k_min=k_min, k_max=2 * n_max + 4)


def stieltjes(xs, ws, n_max: int):
    """Stieltjes procedure on a discrete measure.

    Returns ``(alpha, beta, h)`` for degrees ``0..n_max``; ``beta[0] = 0``.
    """
    prev = [mpf(0)] * len(xs)
    cur = [mpf(1)] * len(xs)
    alpha, beta, h = [], [], []
    for n in range(n_max + 1):
        sq = [c * c for c in cur]
        hn = node_sum(sq, ws)
        an = node_sum([x * s for x, s in zip(xs, sq)], ws) / hn
        bn = hn / h[-1] if n else mpf(0)
        alpha.append(an)
        beta.append(bn)
        h.append(hn)
        prev, cur = cur, [(x - an) * c - bn * pc for x, c, pc in zip(xs, cur, prev)]
    return alpha, beta, h


def build_recurrence(p: WeightParams, n_max: int, ctx: PrecisionContext, spec: QuadratureSpec | None = None) -> RecurrenceTable:
    """Recurrence coefficients, norms and ``p(n)`` for ``0 <= n <= n_max``.

    A second Stieltjes run on the every-other-node grid at
    ``CHECK_DIGIT_DROP`` fewer digits must agree with the main run to
    ``ctx.eps_report``; the first degree where it does not is reported through
    :class:`PrecisionExhausted`.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    spec = spec or pipeline_spec(p, ctx, n_max)
    xs, ws = weighted_nodes(p, spec)
    with mp.workdps(spec.dps):
        alpha, beta, h = stieltjes(xs, ws, n_max)
    with mp.workdps(spec.dps - CHECK_DIGIT_DROP):
        ca, cb, _ = stieltjes(xs[::2], [2 * w for w in ws[::2]], n_max)
    with mp.workdps(spec.dps):
        tol = ctx.eps_report
        for n in range(n_max + 1):
            bad = abs(ca[n] - alpha[n]) > tol * max(abs(alpha[n]), 1)
            bad = bad or (n > 0 and abs(cb[n] - beta[n]) > tol * beta[n])
            if bad:
                raise PrecisionExhausted(n_max, n - 1)
        pn = [mpf(0)]
        for a in alpha:
            pn.append(pn[-1] - a)
    return RecurrenceTable(n_max, tuple(alpha), tuple(beta), tuple(h), tuple(pn), p, spec)


def polynomial_eval(tab: RecurrenceTable, n: int, x) -> mpf:
    """Monic ``P_n(x)`` by the upward three-term recurrence."""
    if not 0 <= n <= tab.n_max + 1:
        raise IndexError(f"degree {n} outside table range 0..{tab.n_max + 1}")
    with mp.workdps(tab.dps):
        x = to_mpf(x)
        prev, cur = mpf(0), mpf(1)
        for k in range(n):
            prev, cur = cur, (x - tab.alpha_n[k]) * cur - tab.beta_n[k] * prev
        return cur


def polynomial_values(tab: RecurrenceTable, n: int, xs) -> list:
    """``[P_n(x) for x in xs]``, vectorised over the recurrence."""
    with mp.workdps(tab.dps):
        prev = [mpf(0)] * len(xs)
        cur = [mpf(1)] * len(xs)
        for k in range(n):
            a, b = tab.alpha_n[k], tab.beta_n[k]
            prev, cur = cur, [(x - a) * c - b * pc for x, c, pc in zip(xs, cur, prev)]
        return cur


def coefficients(tab: RecurrenceTable, n: int) -> list:
    """Monomial coefficients of ``P_n``, lowest degree first."""
    with mp.workdps(tab.dps):
        prev, cur = [], [mpf(1)]
        for k in range(n):
            nxt = [mpf(0)] + cur
            for i, c in enumerate(cur):
                nxt[i] -= tab.alpha_n[k] * c
            for i, c in enumerate(prev):
                nxt[i] -= tab.beta_n[k] * c
            prev, cur = cur, nxt
        return cur


def orthogonality_residual(tab: RecurrenceTable, m: int, n: int, p: WeightParams, spec: QuadratureSpec) -> mpf:
    """``(int P_m P_n w - h_n delta_mn) / sqrt(h_m h_n)`` by adaptive quadrature."""
    with mp.workdps(spec.dps):
        val = integrate_weighted(lambda x: polynomial_eval(tab, m, x) * polynomial_eval(tab, n, x), p, spec)
        if m == n:
            val -= tab.h_n[n]
        return val / sqrt(tab.h_n[m] * tab.h_n[n])


def hankel_recurrence(moments, n_max: int):
    """``(alpha, beta, h)`` from Hankel determinants of ``mu_0..mu_{2 n_max + 1}``.

    ``h_n = D_{n+1}/D_n``, ``beta_n = h_n/h_{n-1}`` and ``p(n) = -D'_n/D_n``
    where ``D'_n`` replaces the last column of ``D_n`` by the next moments.
    """
    mu = list(moments)
    if len(mu) < 2 * n_max + 2:
        raise ValueError("need moments mu_0 .. mu_{2 n_max + 1}")

    def hankel(n, shift_last=False):
        if n == 0:
            return mpf(1)
        a = matrix(n, n)
        for i in range(n):
            for j in range(n):
                a[i, j] = mu[i + j + (1 if shift_last and j == n - 1 else 0)]
        return mp.det(a)

    d = [hankel(n) for n in range(n_max + 2)]
    pn = [mpf(0)] + [-hankel(n, True) / d[n] for n in range(1, n_max + 2)]
    h = [d[n + 1] / d[n] for n in range(n_max + 1)]
    alpha = [pn[n] - pn[n + 1] for n in range(n_max + 1)]
    beta = [mpf(0)] + [h[n] / h[n - 1] for n in range(1, n_max + 1)]
    return alpha, beta, h


def qlaguerre_coefficients(p: WeightParams, n: int):
    """Closed-form ``(alpha_n, beta_n)`` for ``t = 0``.

    ``q**(2n+a) alpha_n = [n] + (1 - q**(n+a+1)) / (q(1-q))`` and
    ``beta_n q**(2n-1) = q**(-2a-2n) [n] [n+a]`` with ``[m] = (1-q**m)/(1-q)``.
    """
    q, a, _ = p.values()
    bracket = lambda m: (1 - q**m) / (1 - q)  # noqa: E731
    alpha = (bracket(n) + (1 - q ** (n + a + 1)) / (q * (1 - q))) / q ** (2 * n + a)
    beta = q ** (-2 * a - 2 * n) * bracket(n) * bracket(n + a) / q ** (2 * n - 1)
    return alpha, beta
