"""Trapezoid quadrature against the weight in the log variable ``u = ln x``.

In ``u`` the weighted integrand decays like ``exp(-c u**2)`` at both ends
(at the lower end only when ``t > 0``) and is analytic in the strip
``|Im u| < pi``, so the trapezoid rule converges geometrically in ``1/step``.

When the step divides ``ln(1/q)`` the node weights are generated from the
dilation identity ``w(x/q) = w(x) * rational(x)``: only one period of nodes
needs the infinite products, the rest cost a few multiplications each.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

from mpmath import ceil, exp, floor, log, mp, mpf, nint, pi

from qlaguerre.qarith import PrecisionContext
from qlaguerre.weight import WeightParams, dilation_ratio, weight_eval

# smallest admissible decay rate exp(rate * u) of the integrand at u -> -inf when t = 0
MIN_DECAY = mpf(1) / 4
MAX_REFINEMENTS = 4
WINDOW_MARGIN = 10


class QuadratureNotConverged(ArithmeticError):
    def __init__(self, coarse, fine):
        super().__init__(f"quadrature not converged: last two values {mp.nstr(coarse, 20)} and {mp.nstr(fine, 20)}")
        self.values = (coarse, fine)


class DivergenceRisk(ValueError):
    """The integrand is not (comfortably) integrable at 0 for this weight."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Truncated trapezoid rule on ``[u_min, u_max]`` with nodes ``u_j = j * step``.

    ``ctx`` is the precision the results are wanted at; node sums run at
    ``ctx.digits + ctx.quad_guard`` digits.  ``k_min``/``k_max`` record the
    range of powers ``x**k`` the window was sized for.
    """

    u_min: mpf
    u_max: mpf
    step: mpf
    ctx: PrecisionContext
    k_min: int = -2
    k_max: int = 0

    def __post_init__(self):
        if not self.u_min < 0 < self.u_max:
            raise ValueError("quadrature window must satisfy u_min < 0 < u_max")
        if not self.step > 0:
            raise ValueError("quadrature step must be positive")

    @property
    def dps(self) -> int:
        return self.ctx.digits + self.ctx.quad_guard

    def halved(self) -> "QuadratureSpec":
        with mp.workdps(self.dps):
            return replace(self, step=self.step / 2)

    def widened(self, amount=5) -> "QuadratureSpec":
        with mp.workdps(self.dps):
            return replace(self, u_min=self.u_min - amount, u_max=self.u_max + amount)

    @classmethod
    def default(cls, p: WeightParams, ctx: PrecisionContext, k_min: int = -2, k_max: int = 2) -> "QuadratureSpec":
        """Window and step sized for integrands ``x**k * w(x)``, ``k_min <= k <= k_max``.

        The step is a divisor of ``ln(1/q)`` chosen so the discretisation error
        ``~exp(-2 pi**2 / step)`` sits below ``10**-dps``.  The window edges
        are where the envelope ``x**(k+1) w(x)`` drops below ``10**-dps`` of
        its peak, widened by a fixed margin.
        """
        dps = ctx.digits + ctx.quad_guard
        with mp.workdps(dps):
            q, alpha, t = p.values()
            period = -log(q)
            # pole residues near Im u = pi grow like exp(c / ln(1/q)) as q -> 1
            target = 2 * pi**2 / ((dps + 10 + 2 / period) * log(10))
            m = int(ceil(period / target))
            step = period / m
            u_lo, u_hi = _envelope_window(p, dps, k_min, k_max)
            return cls(u_lo - WINDOW_MARGIN, u_hi + WINDOW_MARGIN, step, ctx, k_min, k_max)


def _check_decay(p: WeightParams, k_min) -> None:
    if not p.t_is_zero:
        return
    _, alpha, _ = p.values()
    rate = alpha + k_min + 1
    if rate <= 0:
        raise ValueError(f"x**{k_min} w(x) is not integrable at 0 for t = 0, alpha = {p.alpha}")
    if rate < MIN_DECAY:
        raise DivergenceRisk(f"divergence risk: alpha + k + 1 = {mp.nstr(rate, 5)} too close to 0 with t = 0")


def _envelope_window(p: WeightParams, dps: int, k_min: int, k_max: int):
    """Walk x -> x/q and x -> qx from x = 1 until the envelope is negligible."""
    _check_decay(p, k_min)
    q, alpha, t = p.values()
    period = -log(q)
    cut = mpf(10) ** (-dps)

    def walk(x, env, direction):
        best = env
        i = 0
        while True:
            if direction > 0:
                ratio = dilation_ratio(x, p)
                x = x / q
                env = env * ratio / q ** (k_max + 1)
            else:
                x = x * q
                ratio = 1 / dilation_ratio(x, p)
                env = env * ratio * q ** (k_min + 1)
            i += 1
            best = max(best, env)
            if env < cut * best:
                return direction * i * period

    return walk(mpf(1), mpf(1), -1), walk(mpf(1), mpf(1), +1)


@lru_cache(maxsize=16)
def weighted_nodes(p: WeightParams, spec: QuadratureSpec, shift: mpf | None = None):
    """Nodes ``x_j`` and trapezoid weights ``step * x_j * w(x_j)``.

    ``shift`` (a fraction of the step) offsets the grid; ``shift = 1/2`` turns
    the trapezoid rule into the midpoint rule.
    """
    with mp.workdps(spec.dps):
        q, _, _ = p.values()
        h = +spec.step
        off = mpf(0) if shift is None else shift * h
        j_lo = int(ceil((spec.u_min - off) / h))
        j_hi = int(floor((spec.u_max - off) / h))
        period = -log(q)
        m = nint(period / h)
        wctx = spec.ctx.with_digits(spec.dps)
        dilates = m >= 1 and abs(m * h - period) < mpf(10) ** (-spec.dps + 5)
        if dilates and j_hi - j_lo + 1 > int(m):
            m = int(m)
            b0 = min(max(0, j_lo), j_hi - m + 1)
            w = {j: weight_eval(exp(j * h + off), p, wctx) for j in range(b0, b0 + m)}
            for j in range(b0 + m, j_hi + 1):
                w[j] = w[j - m] * dilation_ratio(exp((j - m) * h + off), p)
            for j in range(b0 - 1, j_lo - 1, -1):
                w[j] = w[j + m] / dilation_ratio(exp(j * h + off), p)
        else:
            w = {j: weight_eval(exp(j * h + off), p, wctx) for j in range(j_lo, j_hi + 1)}
        xs, ws = [], []
        for j in range(j_lo, j_hi + 1):
            x = exp(j * h + off)
            xs.append(x)
            ws.append(h * x * w[j])
        return tuple(xs), tuple(ws)


def node_sum(values, weights) -> mpf:
    """Fixed-order weighted sum (bit-reproducible for a fixed grid)."""
    return mp.fsum(v * w for v, w in zip(values, weights))


def _trapezoid(f, p, spec, shift=None):
    xs, ws = weighted_nodes(p, spec, shift)
    vals = [f(x) for x in xs]
    total = node_sum(vals, ws)
    scale = mp.fsum(abs(v) * w for v, w in zip(vals, ws))
    return total, scale


def integrate_weighted(f, p: WeightParams, spec: QuadratureSpec, order_at_zero: int = 0) -> mpf:
    """``int_0^inf f(x) w(x) dx`` with step halving until two successive
    values agree to ``ctx.eps_work`` relative to ``int |f| w``.

    ``order_at_zero`` is the power ``k`` with ``f(x) ~ x**k`` near 0; for
    ``t = 0`` it must keep ``alpha + k + 1`` safely positive.
    """
    _check_decay(p, order_at_zero)
    with mp.workdps(spec.dps):
        eps = spec.ctx.eps_work
        coarse, _ = _trapezoid(f, p, spec)
        current = spec
        for _ in range(MAX_REFINEMENTS):
            current = current.halved()
            fine, scale = _trapezoid(f, p, current)
            if abs(fine - coarse) <= eps * scale:
                return fine
            coarse = fine
        raise QuadratureNotConverged(coarse, fine)


def moment(k: int, p: WeightParams, spec: QuadratureSpec) -> mpf:
    """``mu_k = int_0^inf x**k w(x) dx`` for ``k >= -2``.

    For ``t = 0`` this needs ``alpha + k > -1``; for ``t > 0`` the weight
    vanishes faster than any power at 0 and every ``k >= -2`` is allowed.
    """
    if k < -2:
        raise ValueError(f"moment order must be >= -2, got {k}")
    return integrate_weighted(lambda x: x**k, p, spec, order_at_zero=k)
