"""Painleve-type variables and the second-order equation for ``rho_n``.

The substitution

    x_n = q**(n+alpha) (1-q) / R_n,   y_n = q**n (1 - r_n),   T = (1-q)**2 t / q

turns the coefficient system of :mod:`qlaguerre.ladder` into the coupled
first-order recursion

    (x_n y_n - 1)(x_{n-1} y_n - 1) = q**(2n+alpha) T (y_n - 1)(y_n - 1/T) / (q**n - y_n)
    (x_n y_n - 1)(x_n y_{n+1} - 1) = -q**(2n+alpha+1) (x_n - 1)(x_n - T) / x_n

which :func:`propagate` runs forward from ``x_0`` and ``y_0 = 1``.

Eliminating ``x`` and ``y`` in favour of ``rho_n = (1-q)**2 p(n) / q`` leads
to a second-order equation in ``rho``.  Two displayed forms are provided:
:func:`rho_residual` evaluates the five-term form exactly as it is usually
written, and :func:`rho_resultant_residual` the resultant of the two
quadratics that ``y_n`` satisfies.  Only the latter holds on computed data;
see ``scripts/rho_equation_finding.py``.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from qlaguerre.ladder import AuxiliaryTable, relative_residual
from qlaguerre.orthopoly import RecurrenceTable
from qlaguerre.weight import WeightParams


class NearSingularStep(ArithmeticError):
    """``x_n y_n - 1`` (or ``x_n y_{n+1} - 1``) vanished to working precision."""

    def __init__(self, n):
        super().__init__(f"near-singular step at n={n}, raise precision")
        self.n = n


@dataclass(frozen=True)
class PainleveState:
    n: int
    x_n: mpf
    y_n: mpf
    T: mpf


def to_painleve(aux: AuxiliaryTable, p: WeightParams, n: int) -> PainleveState:
    q, a, _ = p.values()
    R = aux.R_n[n]
    if R is None or R == 0:
        raise ZeroDivisionError(f"vanishing R_n at n={n}")
    if abs(R) < mpf(10) ** (-mp.dps + 5) * q ** (n + a):
        raise ZeroDivisionError(f"vanishing R_n at n={n}")
    return PainleveState(n, q ** (n + a) * (1 - q) / R, q**n * (1 - aux.r_n[n]), p.big_t())


def from_painleve(state: PainleveState, p: WeightParams) -> tuple[mpf, mpf]:
    """Inverse substitution: ``(R_n, r_n)``."""
    q, a, _ = p.values()
    n = state.n
    return q ** (n + a) * (1 - q) / state.x_n, 1 - state.y_n / q**n


def _first_terms(x_prev, x, y, n, p):
    q, a, _ = p.values()
    T = p.big_t()
    return (x * y - 1) * (x_prev * y - 1) * (q**n - y), -(q ** (2 * n + a)) * (y - 1) * (T * y - 1)


def _second_terms(x, y, y_next, n, p):
    q, a, _ = p.values()
    T = p.big_t()
    return (x * y - 1) * (x * y_next - 1) * x, q ** (2 * n + a + 1) * (x - 1) * (x - T)


def coupled_residuals(prev: PainleveState | None, cur: PainleveState, nxt: PainleveState, p: WeightParams):
    """Residuals of the two coupled equations at ``cur.n``, cleared of denominators.

    The first is ``None`` when ``prev`` is missing or ``T = 0``.
    """
    first = None
    if prev is not None and not p.t_is_zero:
        first = relative_residual(*_first_terms(prev.x_n, cur.x_n, cur.y_n, cur.n, p))
    second = relative_residual(*_second_terms(cur.x_n, cur.y_n, nxt.y_n, cur.n, p))
    return first, second


def factor_residuals(aux: AuxiliaryTable, n: int, p: WeightParams):
    """The factorised equations in ``R``/``r`` form, valid for ``t >= 0`` (``n >= 1``)."""
    q, a, t = p.values()
    R, Rm, r, r1 = aux.R_n[n], aux.R_n[n - 1], aux.r_n[n], aux.r_n[n + 1]
    f1 = relative_residual(
        (R - q ** (n + a) * (1 - q) * q ** (n + 1) * (1 - r1)) * (R - q ** (n + a) * (1 - q) * q**n * (1 - r)),
        (1 - q) * q**n * R * (R - q ** (n + a) * (1 - q)) * (t * R - q ** (n + a + 1) / (1 - q)),
    )
    y = q**n * (1 - r)
    f2 = relative_residual(
        q**n * r * (y * q ** (n + a) * (1 - q) - R) * (y * q ** (n + a - 1) * (1 - q) - Rm),
        -(q ** (2 * n + 2 * a - 1)) * R * Rm * (t * (1 - q) ** 2 * y - q) * (y - 1) / q**a,
    )
    return f1, f2


def recurrence_residuals(aux: AuxiliaryTable, n: int, p: WeightParams):
    """The first-order recursions in ``R``/``r`` once ``S_{n-1}`` is eliminated (``n >= 1``)."""
    q, a, t = p.values()
    R, Rm, r, r1 = aux.R_n[n], aux.R_n[n - 1], aux.r_n[n], aux.r_n[n + 1]
    e1 = relative_residual(
        q ** (n - a) * ((1 - r1) + (1 - r) / q) * R,
        -(q ** (3 * n)) * (1 - q) * (1 - r1) * (1 - r),
        -t / q ** (2 * a + 1) * R**3,
        -(q ** (-2 * a - n - 1) * (1 - q ** (2 * n + a + 1)) / (1 - q)) * R**2,
        (1 - q) * t * q**n / q ** (a + 1) * R**2,
        -(q ** (2 * n)) * R,
    )
    bna = (1 - q ** (n + a)) / (1 - q)
    e2 = relative_residual(
        q ** (2 * n - 1) * (1 - q) * r * (1 - r) ** 2,
        -(R + q * Rm) / q ** (a + 1) * r * (1 - r),
        -R * Rm * (1 - q) / q ** (a + 1) * t * (1 - r) * (q**n * (1 - r) - 1),
        -R * Rm * (1 - r) / q ** (2 * n + 2 * a) * (1 - q ** (2 * n + a)) / (1 - q),
        R * Rm * q ** (-2 * n - 2 * a) * bna,
    )
    return e1, e2


def difference_residuals(tab: RecurrenceTable, aux: AuxiliaryTable, n: int, p: WeightParams):
    """The two equations in ``R``, ``r`` and ``S_{n-1}`` before ``S_{n-1}`` is removed (``n >= 1``)."""
    q, a, t = p.values()
    c = t / q
    R, Rm, r, r1 = aux.R_n[n], aux.R_n[n - 1], aux.r_n[n], aux.r_n[n + 1]
    Sm = aux.S_n[n - 1]
    bn, bna = (1 - q**n) / (1 - q), (1 - q ** (n + a)) / (1 - q)
    d1 = relative_residual(
        q ** (2 * n + a) * (1 - r1 - r),
        -(bn + (1 - q ** (n + a + 1)) / (q * (1 - q))) * R,
        -(q**n) * c * R * R,
        -(q**n) * c * (1 - q) * Sm * R,
    )
    d2 = relative_residual(
        q ** (2 * n + a - 1) * (r * r - r) * (R + q * Rm),
        -(bn - (bn + bna) * r) * R * Rm,
        -(q**n) * (1 - q) * c * (1 - r) * Sm * R * Rm,
    )
    return d1, d2


def _check_step(value, n, eps):
    if abs(value) < 10 * eps:
        raise NearSingularStep(n)


def seed_y1(x0, p: WeightParams) -> mpf:
    """``y_1`` from the second equation at ``n = 0`` with ``y_0 = 1``.

    The common factor ``x_0 - 1`` is cancelled analytically:
    ``x_0 y_1 - 1 = -q**(alpha+1) (x_0 - T) / x_0``.
    """
    q, a, _ = p.values()
    return (1 - q ** (a + 1) * (x0 - p.big_t()) / x0) / x0


def propagate(x0, y0, p: WeightParams, n_max: int, digits: int | None = None) -> list[PainleveState]:
    """Forward trajectory ``(x_n, y_n)`` for ``0 <= n <= n_max``.

    Each step solves the second equation for ``y_{n+1}`` and then the first
    equation at ``n + 1`` for ``x_{n+1}``; both are linear.  At ``T = 1`` the
    trajectory is the fixed point ``x_n = y_n = 1`` where every step is
    singular, so it is returned directly.

    Raises:
        ValueError: if ``t = 0`` or ``y0 != 1``.
        NearSingularStep: if a divisor ``x_n y - 1`` vanishes to working precision.
    """
    if p.t_is_zero:
        raise ValueError("propagation needs t > 0 (the first equation divides by T)")
    digits = digits or mp.dps
    with mp.workdps(digits):
        eps = mpf(10) ** (-digits)
        q, a, _ = p.values()
        T = p.big_t()
        x, y = mpf(x0), mpf(y0)
        if abs(y - 1) > 10 * eps:
            raise ValueError("the recursion starts from y_0 = 1")
        if abs(T - 1) < 10 * eps:
            return [PainleveState(n, mpf(1), mpf(1), T) for n in range(n_max + 1)]
        states = [PainleveState(0, x, y, T)]
        for n in range(n_max):
            if n == 0:
                y_next = seed_y1(x, p)
            else:
                d = x * y - 1
                _check_step(d, n, eps)
                y_next = (1 - q ** (2 * n + a + 1) * (x - 1) * (x - T) / (x * d)) / x
            m = n + 1
            d = x * y_next - 1
            _check_step(d, m, eps)
            rhs = q ** (2 * m + a) * (y_next - 1) * (T * y_next - 1) / (q**m - y_next)
            x_next = (1 + rhs / d) / y_next
            x, y = x_next, y_next
            states.append(PainleveState(m, x, y, T))
        return states


@dataclass(frozen=True)
class RhoSequence:
    """``rho_n`` for ``0 <= n <= N + 1`` and the derived sequences for ``0 <= n <= N``."""

    rho_n: tuple
    J_n: tuple
    F_n: tuple
    G_n: tuple
    H_n: tuple
    I_n: tuple


def rho_sequence(tab: RecurrenceTable, p: WeightParams) -> RhoSequence:
    """Build ``rho, J, F, G`` and (from ``n = 1``) ``H, I`` out of ``p(n)``.

    ``H_0`` and ``I_0`` need ``J_{-1}`` and are stored as ``None``.
    """
    if p.t_is_zero:
        raise ValueError("the rho equation requires t > 0")
    with mp.workdps(tab.dps):
        q, a, _ = p.values()
        T = p.big_t()
        rho = [(1 - q) ** 2 / q * v for v in tab.p_n]
        N = tab.n_max
        J = [(1 - q ** (-2 * n - a - 1) + (rho[n] - q * rho[n + 1]) / (1 - q)) / T for n in range(N + 1)]
        F, G, H, I = [], [], [], []
        for n in range(N + 1):
            j, e = J[n], q ** (2 * n + a)
            F.append(-e * T * j * j + (e * (rho[n] + 1) - 1) * j - q**n)
            G.append(e * (T - rho[n]) * j * j + q**n * (1 - q ** (n + a)) * j)
            if n == 0:
                H.append(None)
                I.append(None)
                continue
            s, pj = J[n] + J[n - 1], J[n] * J[n - 1]
            H.append(pj * q**n * (1 - q ** (n + a)) / s)
            I.append(q**n + pj * (1 - e * (1 + rho[n])) / s)
        return RhoSequence(tuple(rho), tuple(J), tuple(F), tuple(G), tuple(H), tuple(I))


def _rho_pieces(seq: RhoSequence, n: int, p: WeightParams):
    q, a, _ = p.values()
    jn, jm = seq.J_n[n], seq.J_n[n - 1]
    s = jn + jm
    h = jn * jm * q**n * (1 - q ** (n + a))
    k = q**n * s + jn * jm * (1 - q ** (2 * n + a) * (1 + seq.rho_n[n]))
    return s, h, k, seq.F_n[n], seq.G_n[n]


def rho_terms(seq: RhoSequence, n: int, p: WeightParams) -> list:
    """The five summands of the displayed second-order equation at ``n``."""
    s, h, k, f, g = _rho_pieces(seq, n, p)
    return [s * s * g * g, -s * (h * (2 * g + f * f) + k * f * g), k * h * f, k * k * g, h * h]


def rho_residual(tab: RecurrenceTable, p: WeightParams, n: int, seq: RhoSequence | None = None) -> mpf:
    """Normalised residual of the displayed five-term equation (``1 <= n <= n_max``)."""
    if p.t_is_zero:
        raise ValueError("the rho equation requires t > 0")
    seq = seq or rho_sequence(tab, p)
    with mp.workdps(tab.dps):
        return relative_residual(*rho_terms(seq, n, p))


def rho_resultant_terms(seq: RhoSequence, n: int, p: WeightParams) -> list:
    """Summands of ``S**2 * Res_y(y**2 + F y + G, y**2 - I y + H)`` with ``S = J_n + J_{n-1}``."""
    s, h, k, f, g = _rho_pieces(seq, n, p)
    return [s * s * g * g, -2 * s * g * h, h * h, s * f * f * h, s * f * g * k, f * h * k, g * k * k]


def rho_resultant_residual(tab: RecurrenceTable, p: WeightParams, n: int, seq: RhoSequence | None = None) -> mpf:
    """Normalised residual of the resultant form of the ``rho`` equation."""
    if p.t_is_zero:
        raise ValueError("the rho equation requires t > 0")
    seq = seq or rho_sequence(tab, p)
    with mp.workdps(tab.dps):
        return relative_residual(*rho_resultant_terms(seq, n, p))


def rho_quadratic_residuals(seq: RhoSequence, aux: AuxiliaryTable, n: int, p: WeightParams):
    """``y_n`` against its two quadratics ``y**2 + F y + G`` and ``y**2 - I y + H`` (``n >= 1``)."""
    q, _, _ = p.values()
    y = q**n * (1 - aux.r_n[n])
    return (
        relative_residual(y * y, seq.F_n[n] * y, seq.G_n[n]),
        relative_residual(y * y, -seq.I_n[n] * y, seq.H_n[n]),
    )
