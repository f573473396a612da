"""The deformed q-Laguerre weight, its potential and the q-difference operator.

Functions that take a :class:`~qlaguerre.qarith.PrecisionContext` fix their
own precision; the rest (``potential_u``, ``dq_apply``, ``divided_kernel``)
evaluate at the ambient mpmath precision set by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import exp, log, mp, mpf

from qlaguerre.qarith import PrecisionContext, check_q, qpochhammer_inf, to_mpf


def _canonical(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, mpf):
        return mp.nstr(value, mp.dps, strip_zeros=False)
    return str(value).strip()


@dataclass(frozen=True)
class WeightParams:
    """The triple ``(q, alpha, t)``.

    Values are stored as decimal strings and re-parsed at whatever precision
    is active, so ``WeightParams(0.6, 0.5, 0.3)`` is exact at 30 digits and at
    300 digits alike.
    """

    q: str
    alpha: str = "0"
    t: str = "0"

    def __post_init__(self):
        for name in ("q", "alpha", "t"):
            object.__setattr__(self, name, _canonical(getattr(self, name)))
        with mp.workdps(60):
            q, alpha, t = self.values()
            check_q(q)
            if not alpha > -1:
                raise ValueError(f"alpha must exceed -1, got {self.alpha}")
            if t < 0:
                raise ValueError(f"t must be non-negative, got {self.t}")

    def values(self) -> tuple[mpf, mpf, mpf]:
        """``(q, alpha, t)`` as mpf at the current precision."""
        return to_mpf(self.q), to_mpf(self.alpha), to_mpf(self.t)

    @property
    def t_is_zero(self) -> bool:
        return mpf(self.t) == 0

    def big_t(self) -> mpf:
        """Deformation scale ``T = (1-q)**2 t / q``."""
        q, _, t = self.values()
        return (1 - q) ** 2 * t / q

    @classmethod
    def stieltjes_wigert(cls, q, alpha=0) -> "WeightParams":
        """The point ``t = q/(1-q)**2`` where ``T = 1`` (``q`` must be rational)."""
        qq = Fraction(_canonical(q))
        return cls(q, alpha, qq / (1 - qq) ** 2)


def weight_eval(x, p: WeightParams, ctx: PrecisionContext) -> mpf:
    """``w(x) = x**alpha / ((-(1-q)x; q)_inf (-(1-q)t/x; q)_inf)`` for ``x > 0``."""
    with mp.workdps(ctx.digits + 5):
        x = to_mpf(x)
        if x <= 0:
            raise ValueError(f"weight is supported on x > 0, got x={x}")
        q, alpha, t = p.values()
        inner = ctx.with_digits(ctx.digits + 5)
        den = qpochhammer_inf(-(1 - q) * x, q, inner)
        if t != 0:
            den *= qpochhammer_inf(-(1 - q) * t / x, q, inner)
        val = exp(alpha * log(x)) / den
    with mp.workdps(ctx.digits):
        return +val


def dilation_ratio(x, p: WeightParams) -> mpf:
    """``w(x/q) / w(x)``, a rational function of ``x``."""
    q, alpha, t = p.values()
    return q ** (-alpha) * (1 + (1 - q) * t / x) / (1 + (1 / q - 1) * x)


def potential_u(x, p: WeightParams) -> mpf:
    """``u(x) = -(D_{1/q} w)(x) / w(x)`` from its closed rational form."""
    x = to_mpf(x)
    if x == 0:
        raise ZeroDivisionError("potential u is singular at x = 0")
    q, alpha, t = p.values()
    num = x * x + (1 - q ** (-alpha)) / (1 - q) * q * x - q ** (1 - alpha) * t
    return num / (x * x * (1 + (1 / q - 1) * x))


def dq_apply(f, x, q) -> mpf:
    """Jackson q-difference ``(f(x) - f(qx)) / (x (1-q))``.

    Passing ``1/q`` for ``q`` gives the backward operator ``D_{1/q}``.
    """
    x = to_mpf(x)
    q = to_mpf(q)
    return (f(x) - f(q * x)) / (x * (1 - q))


def pole_coefficients(p: WeightParams) -> tuple[mpf, mpf]:
    """``(q**-alpha * t/q, q**-alpha * (q - t(1-q)**2)/q**2)``.

    These multiply ``1/y`` and ``1/(1 + (1/q - 1)y)`` in the kernel and prefix
    every auxiliary quantity in the ladder functions.
    """
    q, alpha, t = p.values()
    s = q ** (-alpha)
    return s * t / q, s * (q - t * (1 - q) ** 2) / q**2


def divided_kernel(x, y, p: WeightParams) -> mpf:
    """``(u(qx) - u(y)) / (qx - y)`` in partial-fraction form (finite at ``y = qx``)."""
    x, y = to_mpf(x), to_mpf(y)
    q, _, _ = p.values()
    c_inv, c_lin = pole_coefficients(p)
    g = c_lin / (1 + (1 / q - 1) * y)
    return (
        c_inv / (y * x * x)
        + g / x
        - g * (1 - q) / (1 + (1 - q) * x)
        - potential_u(y, p) / (q * x)
    )
