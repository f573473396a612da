"""Working precision and q-series primitives.

Every numeric kernel in the package runs on mpmath ``mpf`` values; machine
doubles never enter a computation.  The precision a routine uses is carried
explicitly by a :class:`PrecisionContext` rather than read from the global
mpmath state.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from numbers import Real

from mpmath import mp, mpf

DIGITS_ENV = "QLAGUERRE_DIGITS"
MIN_DIGITS = 30


class PochhammerZeroFactor(ArithmeticError):
    """A factor ``1 - a q**j`` of the infinite product vanishes to working precision."""


def default_digits() -> int:
    return int(os.environ.get(DIGITS_ENV, "120"))


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision in decimal digits and the tolerances derived from it.

    ``eps_work`` is the resolution of the arithmetic, ``eps_report`` the
    default acceptance threshold for residual checks.  ``level_guard`` and
    ``quad_guard`` are the extra digits spent on recurrence construction (per
    polynomial degree) and on node summation.
    """

    digits: int = field(default_factory=default_digits)
    eps_report: mpf | None = None
    level_guard: int = 10
    quad_guard: int = 15

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < MIN_DIGITS:
            raise ValueError(f"digits must be an integer >= {MIN_DIGITS}, got {self.digits!r}")
        object.__setattr__(self, "digits", int(self.digits))
        if self.eps_report is None:
            eps = mpf(10) ** (-(self.digits // 2))
        else:
            eps = mpf(self.eps_report)
        if eps < self.eps_work:
            raise ValueError("eps_report must not be smaller than eps_work")
        object.__setattr__(self, "eps_report", eps)

    @property
    def eps_work(self) -> mpf:
        return mpf(10) ** (-self.digits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        """Same report tolerance, different working precision."""
        return replace(self, digits=digits)


def to_mpf(value) -> mpf:
    """Convert user input to ``mpf`` at the current precision.

    Floats go through their shortest repr so that ``0.6`` means the decimal
    number 0.6, not the nearest binary double.
    """
    if isinstance(value, mpf):
        return +value
    if isinstance(value, Fraction):
        return mpf(value.numerator) / value.denominator
    if isinstance(value, float):
        return mpf(repr(value))
    if isinstance(value, str) and "/" in value:
        return to_mpf(Fraction(value))
    if isinstance(value, (int, str)):
        return mpf(value)
    if isinstance(value, Real):
        return mpf(repr(float(value)))
    return mpf(value)


def check_q(q) -> mpf:
    q = to_mpf(q)
    if not 0 < q < 1:
        raise ValueError(f"q must lie in the open interval (0, 1), got {q}")
    return q


def qpochhammer_inf(a, q, ctx: PrecisionContext) -> mpf:
    """Infinite q-Pochhammer symbol ``(a; q)_inf = prod_{j>=0} (1 - a q**j)``.

    The product is truncated at the first index ``J`` whose geometric tail
    bound ``|a| q**J / (1 - q)`` drops below ``ctx.eps_work``, plus 8 guard
    factors.

    Raises:
        ValueError: if ``q`` is not in (0, 1).
        PochhammerZeroFactor: if ``a`` equals ``q**-j`` to working precision.
    """
    with mp.workdps(ctx.digits + 10):
        q = check_q(q)
        a = to_mpf(a)
        eps = ctx.eps_work
        tiny = eps * 10
        prod = mpf(1)
        term = a
        guard = 8
        while True:
            factor = 1 - term
            if abs(factor) < tiny:
                raise PochhammerZeroFactor(f"pochhammer zero factor: a={mp.nstr(a, 15)} is a power q**-j")
            prod *= factor
            if abs(term) < eps * (1 - q):
                guard -= 1
                if guard < 0:
                    break
            term *= q
    with mp.workdps(ctx.digits):
        return +prod


def qnumber(n, q) -> mpf:
    """The q-bracket ``[n]_q = (1 - q**n) / (1 - q)``; ``n`` may be any real."""
    q = check_q(q)
    return (1 - q ** to_mpf(n)) / (1 - q)
