"""Ladder functions ``A_n``, ``B_n`` and the identities they satisfy.

With ``u`` rational, ``A_n`` and ``B_n`` have poles only at ``x = 0``
(orders 1 and 2) and at ``x = -1/(1-q)``.  They are stored as coefficient
triples over the basis ``1/x**2, 1/x, 1/(1 + (1-q)x)`` whose pole
coefficients are fixed by the auxiliary integrals

    R_n  = (1/h_n)     int P_n(y) P_n(y/q)     w(y) / y dy
    r_n  = (1/h_{n-1}) int P_n(y) P_{n-1}(y/q) w(y) / y dy

and their analogues ``R2_n``, ``r2_n`` with ``1/(1 + (1/q - 1)y)`` in place of
``1/y``.  By convention ``r_0 = r2_0 = 0`` (the integrand contains
``P_{-1} = 0``), hence ``B_0 = 0``.

Every residual is relative: the signed sum of the terms of an identity
divided by the largest term magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf

from qlaguerre.orthopoly import RecurrenceTable, polynomial_eval, polynomial_values
from qlaguerre.qarith import to_mpf
from qlaguerre.quadrature import MIN_DECAY, QuadratureSpec, integrate_weighted, node_sum, weighted_nodes
from qlaguerre.weight import WeightParams, divided_kernel, dq_apply, pole_coefficients, potential_u


def relative_residual(*terms) -> mpf:
    """``|sum(terms)| / max|term|`` (terms carry their signs)."""
    scale = max(abs(t) for t in terms)
    if scale == 0:
        return mpf(0)
    return abs(mp.fsum(terms)) / scale


@dataclass(frozen=True)
class AuxiliaryTable:
    """Auxiliary integrals for ``0 <= n <= n_max``; ``r_n``/``r2_n`` run to ``n_max + 1``.

    ``R_n``, ``r_n``, ``S_n`` are ``None`` when ``t = 0`` and ``w/y`` is not
    integrable at 0; every formula multiplies them by ``t`` and drops them.
    """

    n_max: int
    R_n: tuple
    r_n: tuple
    R2_n: tuple
    r2_n: tuple
    S_n: tuple

    @property
    def has_inverse_moments(self) -> bool:
        return self.R_n[0] is not None


def compute_auxiliaries(tab: RecurrenceTable, p: WeightParams, spec: QuadratureSpec, n_max: int) -> AuxiliaryTable:
    """Direct node sums for ``R_n, R2_n`` (``n <= n_max``) and ``r_n, r2_n`` (``n <= n_max + 1``)."""
    if n_max > tab.n_max:
        raise ValueError(f"recurrence table only reaches n={tab.n_max}")
    xs, ws = weighted_nodes(p, spec)
    with mp.workdps(spec.dps):
        q, alpha, _ = p.values()
        inverse = not p.t_is_zero or alpha >= MIN_DECAY
        if inverse and spec.k_min > -1:
            raise ValueError("quadrature window was not sized for 1/y integrands")
        inv = [1 / x for x in xs]
        lin = [1 / (1 + (1 / q - 1) * x) for x in xs]
        scaled = [x / q for x in xs]
        R, R2, r, r2 = [], [], [mpf(0)], [mpf(0)]
        pq_prev = None
        for n in range(n_max + 2):
            pn = polynomial_values(tab, n, xs)
            if n >= 1:
                prod = [a * b for a, b in zip(pn, pq_prev)]
                hm = tab.h_n[n - 1]
                r.append(_weighted(prod, inv, ws) / hm if inverse else None)
                r2.append(_weighted(prod, lin, ws) / hm)
            pq = polynomial_values(tab, n, scaled)
            if n <= n_max:
                prod = [a * b for a, b in zip(pn, pq)]
                R.append(_weighted(prod, inv, ws) / tab.h_n[n] if inverse else None)
                R2.append(_weighted(prod, lin, ws) / tab.h_n[n])
            pq_prev = pq
        if inverse:
            S = []
            for val in R:
                S.append(val + (S[-1] if S else 0))
        else:
            r[0] = None
            S = [None] * len(R)
    return AuxiliaryTable(n_max, tuple(R), tuple(r), tuple(R2), tuple(r2), tuple(S))


def _weighted(prod, factor, ws):
    return node_sum([a * b for a, b in zip(prod, factor)], ws)


@dataclass(frozen=True)
class PoleForm:
    """``c2/x**2 + c1/x + cp/(1 + (1-q)x)``."""

    c2: mpf
    c1: mpf
    cp: mpf
    q: mpf

    def __call__(self, x) -> mpf:
        x = to_mpf(x)
        return self.c2 / (x * x) + self.c1 / x + self.cp / (1 + (1 - self.q) * x)

    def __add__(self, other: "PoleForm") -> "PoleForm":
        return PoleForm(self.c2 + other.c2, self.c1 + other.c1, self.cp + other.cp, self.q)


def _times_t(coef, value):
    """``coef * value`` where ``coef`` carries a factor ``t`` (so ``None`` means 0)."""
    return mpf(0) if value is None or coef == 0 else coef * value


def a_form(tab: RecurrenceTable, aux: AuxiliaryTable, n: int, p: WeightParams) -> PoleForm:
    """``A_n`` with ``R2_n`` eliminated through the switch relation."""
    q, _, _ = p.values()
    c_inv, _ = pole_coefficients(p)
    if n < 0:
        return PoleForm(mpf(0), mpf(0), mpf(0), q)
    tr = _times_t(c_inv, aux.R_n[n])
    res = q**n - (1 - q) * tr
    return PoleForm(tr, res, -(1 - q) * res, q)


def b_form(tab: RecurrenceTable, aux: AuxiliaryTable, n: int, p: WeightParams) -> PoleForm:
    """``B_n`` with ``r2_n`` eliminated; ``B_0 = 0``."""
    q, _, _ = p.values()
    c_inv, _ = pole_coefficients(p)
    if n == 0:
        return PoleForm(mpf(0), mpf(0), mpf(0), q)
    tr = _times_t(c_inv, aux.r_n[n])
    res = -(1 - q) * q ** (n - 1) * tab.alpha_sum(n) - (1 - q) * tr
    return PoleForm(tr, res - (1 - q**n) / (1 - q), -(1 - q) * res, q)


def a_form_unreduced(tab, aux, n, p) -> PoleForm:
    """``A_n`` written with both ``R_n`` and ``R2_n``."""
    q, _, _ = p.values()
    c_inv, c_lin = pole_coefficients(p)
    tr = _times_t(c_inv, aux.R_n[n])
    return PoleForm(tr, c_lin * aux.R2_n[n], -(1 - q) * c_lin * aux.R2_n[n], q)


def b_form_unreduced(tab, aux, n, p) -> PoleForm:
    q, _, _ = p.values()
    c_inv, c_lin = pole_coefficients(p)
    tr = _times_t(c_inv, aux.r_n[n])
    return PoleForm(tr, c_lin * aux.r2_n[n] - (1 - q**n) / (1 - q), -(1 - q) * c_lin * aux.r2_n[n], q)


def an_eval(aux: AuxiliaryTable, tab: RecurrenceTable, n: int, x, p: WeightParams) -> mpf:
    with mp.workdps(tab.dps):
        return a_form(tab, aux, n, p)(x)


def bn_eval(aux: AuxiliaryTable, tab: RecurrenceTable, n: int, x, p: WeightParams) -> mpf:
    with mp.workdps(tab.dps):
        return b_form(tab, aux, n, p)(x)


def _kernel_order_at_zero(p: WeightParams) -> int:
    if not p.t_is_zero:
        return -2
    return 0 if mpf(p.alpha) == 0 else -1


def an_integral(tab: RecurrenceTable, n: int, x, p: WeightParams, spec: QuadratureSpec) -> mpf:
    """``A_n(x)`` from its defining integral over the divided-difference kernel."""
    with mp.workdps(spec.dps):
        x = to_mpf(x)
        q, _, _ = p.values()
        f = lambda y: divided_kernel(x, y, p) * polynomial_eval(tab, n, y) * polynomial_eval(tab, n, y / q)  # noqa: E731
        return integrate_weighted(f, p, spec, order_at_zero=_kernel_order_at_zero(p)) / tab.h_n[n]


def bn_integral(tab: RecurrenceTable, n: int, x, p: WeightParams, spec: QuadratureSpec) -> mpf:
    """``B_n(x)`` from its defining integral (``n >= 1``)."""
    with mp.workdps(spec.dps):
        x = to_mpf(x)
        q, _, _ = p.values()
        f = lambda y: divided_kernel(x, y, p) * polynomial_eval(tab, n, y) * polynomial_eval(tab, n - 1, y / q)  # noqa: E731
        return integrate_weighted(f, p, spec, order_at_zero=_kernel_order_at_zero(p)) / tab.h_n[n - 1]


def a_sum_form(tab, aux, n, p) -> PoleForm:
    """``sum_{j<=n} A_j`` accumulated on the coefficient triples."""
    total = a_form(tab, aux, -1, p)
    for j in range(n + 1):
        total = total + a_form(tab, aux, j, p)
    return total


def structural_residual(tab: RecurrenceTable, aux: AuxiliaryTable, n: int, x, p: WeightParams) -> mpf:
    """``D_q P_n - (beta_n A_n P_{n-1} - B_n P_n)``, normalised by ``max(|D_q P_n|, 1)``."""
    with mp.workdps(tab.dps):
        x = to_mpf(x)
        q, _, _ = p.values()
        dq = dq_apply(lambda z: polynomial_eval(tab, n, z), x, q)
        if n == 0:
            return abs(dq)
        rhs = tab.beta_n[n] * an_eval(aux, tab, n, x, p) * polynomial_eval(tab, n - 1, x) \
            - bn_eval(aux, tab, n, x, p) * polynomial_eval(tab, n, x)
        return abs(dq - rhs) / max(abs(dq), 1)


def qs1_residual(tab, aux, n, x, p) -> mpf:
    """``B_{n+1} + B_n = (x - alpha_n) A_n + x(q-1) sum_{j<=n} A_j - u(qx)``."""
    with mp.workdps(tab.dps):
        x = to_mpf(x)
        q, _, _ = p.values()
        a_n = a_form(tab, aux, n, p)(x)
        return relative_residual(
            b_form(tab, aux, n + 1, p)(x),
            b_form(tab, aux, n, p)(x),
            -(x - tab.alpha_n[n]) * a_n,
            -x * (q - 1) * a_sum_form(tab, aux, n, p)(x),
            potential_u(q * x, p),
        )


def qs2_residual(tab, aux, n, x, p) -> mpf:
    """``beta_{n+1} A_{n+1} - beta_n A_{n-1} = 1 + (x - alpha_n) B_{n+1} - (qx - alpha_n) B_n``."""
    with mp.workdps(tab.dps):
        x = to_mpf(x)
        q, _, _ = p.values()
        a_n = tab.alpha_n[n]
        return relative_residual(
            tab.beta_n[n + 1] * a_form(tab, aux, n + 1, p)(x),
            -tab.beta_n[n] * a_form(tab, aux, n - 1, p)(x),
            mpf(-1),
            -(x - a_n) * b_form(tab, aux, n + 1, p)(x),
            (q * x - a_n) * b_form(tab, aux, n, p)(x),
        )


def qs2prime_residual(tab, aux, n, x, p) -> mpf:
    """``beta_n A_n A_{n-1} = B_n**2 + u(qx) B_n + (1 + (1-q) x B_n) sum_{j<n} A_j`` for ``n >= 1``."""
    if n < 1:
        raise ValueError("the first-integral identity needs n >= 1")
    with mp.workdps(tab.dps):
        x = to_mpf(x)
        q, _, _ = p.values()
        b = b_form(tab, aux, n, p)(x)
        s = a_sum_form(tab, aux, n - 1, p)(x)
        return relative_residual(
            tab.beta_n[n] * a_form(tab, aux, n, p)(x) * a_form(tab, aux, n - 1, p)(x),
            -b * b,
            -potential_u(q * x, p) * b,
            -s,
            -(1 - q) * x * b * s,
        )


def _brackets(p, n):
    q, a, _ = p.values()
    return (1 - q**n) / (1 - q), (1 - q ** (n + a)) / (1 - q)


def coeff_system_residuals(tab: RecurrenceTable, aux: AuxiliaryTable, n: int, p: WeightParams) -> dict:
    """Residuals of the five coefficient equations obtained from the
    ``x**-1, x**-2, x**-3, x**-4`` parts of the compatibility conditions,
    keyed ``"1S"`` .. ``"5S"`` (``1 <= n``).
    """
    if not aux.has_inverse_moments:
        raise ValueError("coefficient system needs R_n and r_n (t > 0 or alpha >= 1/4)")
    with mp.workdps(tab.dps):
        q, a, t = p.values()
        c = t / q
        bn, bna = _brackets(p, n)
        R, r = aux.R_n, aux.r_n
        Rm = R[n - 1] if n >= 1 else mpf(0)
        Sm = aux.S_n[n - 1] if n >= 1 else mpf(0)
        al, be = tab.alpha_n[n], tab.beta_n[n]
        out = {}
        out["1S"] = relative_residual(
            q ** (2 * n + a) * al,
            -bn,
            -(1 - q ** (n + a + 1)) / (q * (1 - q)),
            -(q**n) * c * R[n],
            -(q**n) * c * (1 - q) * Sm,
        )
        out["2S"] = relative_residual(r[n + 1], r[n], al * R[n], mpf(-1))
        out["3S"] = relative_residual(
            be * q ** (2 * n - 1),
            -bn * bna / q ** (2 * a + 2 * n),
            -(1 - q**n) * q ** (-a) * c,
            -(q ** (n - a)) * c * r[n],
            -c * Sm / q ** (2 * a + n),
        )
        out["4S"] = relative_residual(
            be * q ** (n - 1) * R[n],
            be * q**n * Rm,
            -bn / q ** (a + n),
            (bn + bna) * r[n] / q ** (a + n),
            -(1 - q) * q ** (-a) * c * (1 - r[n]) * Sm,
        )
        out["5S"] = relative_residual(be * R[n] * Rm, -r[n] ** 2, r[n])
        return out


def partial_sum_from_ladder(aux: AuxiliaryTable, n: int, p: WeightParams) -> mpf:
    """``S_{n-1} = sum_{j<n} R_j`` reconstructed from ``R_n`` and ``r_n`` alone (``n >= 1``)."""
    q, a, t = p.values()
    c = t / q
    bn, bna = _brackets(p, n)
    R, r = aux.R_n[n], aux.r_n[n]
    rhs = (
        -bn * bna / q ** (2 * n + 2 * a)
        - q ** (n - a) * c * r
        + (bn - (bn + bna) * r) / (q**a * R)
        - q ** (2 * n) * (r * r - r) / (R * R)
        - (1 - q**n) * q ** (-a) * c
    )
    coef = c * (1 / q ** (2 * a + n) - q**n * (1 - q) * (1 - r) / (q**a * R))
    return rhs / coef


def sum_identity_residuals(tab: RecurrenceTable, aux: AuxiliaryTable, n: int, p: WeightParams) -> dict:
    """``"sumR"``: the reconstructed ``S_{n-1}`` against the accumulated sum;
    ``"pcoef"``: the closed form of ``q**(2n) sum_{j<=n} alpha_j``.
    ``"sumR"`` is absent for ``n = 0`` and for ``t = 0``.
    """
    with mp.workdps(tab.dps):
        q, a, t = p.values()
        out = {}
        if n >= 1 and not p.t_is_zero:
            s_direct = aux.S_n[n - 1]
            s_rebuilt = partial_sum_from_ladder(aux, n, p)
            out["sumR"] = abs(s_rebuilt - s_direct) / abs(s_direct)
        b1 = (1 - q ** (n + 1)) / (1 - q)
        shift = (1 - q ** (-a)) / (1 - q)
        out["pcoef"] = relative_residual(
            q ** (2 * n) * tab.alpha_sum(n + 1),
            -b1 * b1 / q,
            b1 * shift / q,
            -_times_t(q ** (n - a) * t / q, aux.S_n[n]),
        )
        return out


def lemma_coefficients(tab: RecurrenceTable, aux: AuxiliaryTable, n: int, p: WeightParams):
    """``(alpha_n, beta_n)`` from ``R_n``, ``r_n`` only, with ``S_{n-1}``
    rebuilt by :func:`partial_sum_from_ladder`.
    """
    with mp.workdps(tab.dps):
        q, a, t = p.values()
        c = t / q
        bn, bna = _brackets(p, n)
        if p.t_is_zero:
            R = r = Sm = mpf(0)
        else:
            R, r = aux.R_n[n], aux.r_n[n]
            Sm = partial_sum_from_ladder(aux, n, p) if n >= 1 else mpf(0)
        alpha = (bn + (1 - q ** (n + a + 1)) / (q * (1 - q)) + q**n * c * (R + (1 - q) * Sm)) / q ** (2 * n + a)
        beta = None
        if n >= 1:
            beta = (
                bn * bna / q ** (2 * a + 2 * n)
                + (1 - q**n) * q ** (-a) * c
                + q ** (n - a) * c * r
                + c * Sm / q ** (2 * a + n)
            ) / q ** (2 * n - 1)
        return alpha, beta


def unit_deformation_chain(p: WeightParams, n_max: int, dps: int):
    """Explicit ``alpha_n, beta_n, R_n, r_n`` (``n <= n_max``) when ``T = 1``.

    At ``t = q/(1-q)**2`` the ``R2``/``r2`` terms drop out of the switch
    relations, which then give ``R_n`` directly; the first coefficient
    equation gives ``alpha_n``, the second switch relation ``r_n`` and the
    third coefficient equation ``beta_n``.
    """
    with mp.workdps(dps):
        q, a, t = p.values()
        _, c_lin = pole_coefficients(p)
        if abs(c_lin) > mpf(10) ** (-dps + 10):
            raise ValueError("explicit chain needs t = q/(1-q)**2")
        c = t / q
        alphas, betas, Rs, rs = [], [mpf(0)], [], [mpf(0)]
        s_prev = mpf(0)
        for n in range(n_max + 1):
            bn, bna = _brackets(p, n)
            R = q**n * q**a / ((1 - q) * c)
            alpha = (bn + (1 - q ** (n + a + 1)) / (q * (1 - q)) + q**n * c * (R + (1 - q) * s_prev)) / q ** (2 * n + a)
            if n >= 1:
                r = -(1 - q) * q ** (n - 1) * mp.fsum(alphas) * q**a / ((1 - q) * c)
                beta = (
                    bn * bna / q ** (2 * a + 2 * n)
                    + (1 - q**n) * q ** (-a) * c
                    + q ** (n - a) * c * r
                    + c * s_prev / q ** (2 * a + n)
                ) / q ** (2 * n - 1)
                rs.append(r)
                betas.append(beta)
            alphas.append(alpha)
            Rs.append(R)
            s_prev += R
        return alphas, betas, Rs, rs


def switch_residuals(tab: RecurrenceTable, aux: AuxiliaryTable, n: int, p: WeightParams):
    """The two linear relations tying ``R2_n``, ``r2_n`` to ``R_n``, ``r_n``.

    They express that ``A_n`` and ``B_n`` have no constant term at infinity.
    """
    with mp.workdps(tab.dps):
        q, _, _ = p.values()
        c_inv, c_lin = pole_coefficients(p)
        big = relative_residual((1 - q) * _times_t(c_inv, aux.R_n[n]), c_lin * aux.R2_n[n], -(q**n))
        if n == 0:
            return big, mpf(0)
        small = relative_residual(
            (1 - q) * _times_t(c_inv, aux.r_n[n]),
            c_lin * aux.r2_n[n],
            (1 - q) * q ** (n - 1) * tab.alpha_sum(n),
        )
        return big, small
