import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import log, mp, mpf

from qlaguerre.qarith import PrecisionContext
from qlaguerre.weight import (
    WeightParams,
    dilation_ratio,
    divided_kernel,
    dq_apply,
    pole_coefficients,
    potential_u,
    weight_eval,
)

CTX = PrecisionContext(50)
STD = WeightParams("0.6", "0.5", "0.3")
positive = st.floats(min_value=0.01, max_value=50, allow_nan=False)


def test_laguerre_weight_at_one():
    p = WeightParams("0.5")
    with mp.workdps(60):
        assert abs(weight_eval(1, p, CTX) - 1 / mp.qp(mpf("-0.5"), mpf("0.5"))) < mpf(10) ** -48


@given(x=positive)
def test_t_zero_is_plain_laguerre(x):
    p = WeightParams("0.7")
    with mp.workdps(60):
        x = mpf(repr(x))
        ref = 1 / mp.qp(-(1 - mpf("0.7")) * x, mpf("0.7"))
        assert abs(weight_eval(x, p, CTX) - ref) <= mpf(10) ** -45 * ref


@given(x=positive)
def test_inversion_symmetry(x):
    with mp.workdps(60):
        x = mpf(x)
        t = mpf(STD.t)
        a = mpf(STD.alpha)
        lhs = weight_eval(t / x, STD, CTX) * (t / x) ** (-a)
        rhs = weight_eval(x, STD, CTX) * x ** (-a)
        assert abs(lhs - rhs) <= mpf(10) ** -45 * rhs


def test_weight_domain():
    with pytest.raises(ValueError):
        weight_eval(0, STD, CTX)
    with pytest.raises(ValueError):
        weight_eval(-1, STD, CTX)


def test_params_validation():
    for bad in [("1.2",), ("0.5", "-1"), ("0.5", "0", "-0.1"), ("0",)]:
        with pytest.raises(ValueError):
            WeightParams(*bad)


def test_params_reparse_at_any_precision():
    p = WeightParams(0.6, 0.5, 0.3)
    for dps in (30, 300):
        with mp.workdps(dps):
            assert p.values()[0] == mpf(6) / 10


def test_unit_deformation_point():
    p = WeightParams.stieltjes_wigert("1/2")
    with mp.workdps(80):
        assert p.big_t() == 1
        assert pole_coefficients(p)[1] == 0


def test_potential_examples():
    with mp.workdps(40):
        assert potential_u(1, WeightParams("0.5")) == mpf("0.5")
        q = mpf("0.35")
        for x in ("0.1", "3", "17"):
            x = mpf(x)
            assert abs(potential_u(x, WeightParams("0.35")) - 1 / (1 + (1 / q - 1) * x)) < mpf(10) ** -38
        with pytest.raises(ZeroDivisionError):
            potential_u(0, STD)


def _u_by_backward_difference(x, p):
    q = mpf(p.q)
    return -dq_apply(lambda z: weight_eval(z, p, CTX), x, 1 / q) / weight_eval(x, p, CTX)


def test_potential_at_two_matches_difference_quotient():
    with mp.workdps(55):
        direct = potential_u(2, STD)
        assert abs(direct - _u_by_backward_difference(mpf(2), STD)) < CTX.eps_report * abs(direct)


def test_potential_matches_difference_quotient_random():
    rng = random.Random(7)
    with mp.workdps(55):
        for _ in range(50):
            x = mpf(rng.uniform(0, 50)) + mpf(10) ** -3
            direct = potential_u(x, STD)
            assert abs(direct - _u_by_backward_difference(x, STD)) < CTX.eps_report * max(abs(direct), 1)


def test_dq_examples():
    with mp.workdps(30):
        assert dq_apply(lambda z: mpf(3), mpf("2.5"), mpf("0.4")) == 0
        assert abs(dq_apply(lambda z: z, mpf("2.5"), mpf("0.4")) - 1) < mpf(10) ** -28
        assert dq_apply(lambda z: z * z, 1, mpf("0.5")) == mpf("1.5")


@given(x=positive, y=positive)
def test_kernel_matches_quotient(x, y):
    with mp.workdps(60):
        x, y = mpf(x), mpf(y)
        q = mpf(STD.q)
        if abs(q * x - y) < mpf(10) ** -6:
            return
        quotient = (potential_u(q * x, STD) - potential_u(y, STD)) / (q * x - y)
        assert abs(divided_kernel(x, y, STD) - quotient) <= mpf(10) ** -40 * max(abs(quotient), 1)


def test_kernel_on_the_diagonal():
    with mp.workdps(60):
        x = mpf("1.7")
        q = mpf(STD.q)
        y0 = q * x
        k = divided_kernel(x, y0, STD)
        for sign in (1, -1):
            y = y0 * (1 + sign * mpf(10) ** -8)
            quotient = (potential_u(q * x, STD) - potential_u(y, STD)) / (q * x - y)
            assert abs(quotient - k) < mpf(10) ** -6 * abs(k)


def test_kernel_inverse_pole_vanishes_at_t_zero():
    p = WeightParams("0.6", "0.5")
    with mp.workdps(40):
        assert pole_coefficients(p)[0] == 0


@given(y=positive)
def test_scaling_identity(y):
    with mp.workdps(60):
        y = mpf(y)
        q = mpf(STD.q)
        c_inv, c_lin = pole_coefficients(STD)
        lhs = ((1 - q) * c_inv / y + c_lin / (1 + (1 / q - 1) * y)) * weight_eval(y, STD, CTX)
        rhs = weight_eval(y / q, STD, CTX) / q
        assert abs(lhs - rhs) <= mpf(10) ** -45 * rhs
        assert abs(dilation_ratio(y, STD) - q * rhs / weight_eval(y, STD, CTX)) < mpf(10) ** -45 * rhs


@pytest.mark.parametrize("q", ["0.3", "0.6", "0.9"])
def test_superpolynomial_decay(q):
    # the envelope is exp(-ln(x)**2 / (2 ln(1/q))); it beats x**20 only once ln x >> 40 ln(1/q)
    p = WeightParams(q, "0.5", "0.3")
    with mp.workdps(40):
        x = mpf(10) ** 60
        for k in range(0, 21, 5):
            assert x**k * weight_eval(x, p, CTX) < mpf(10) ** -100
        # log-quadratic rate
        big = mpf(10) ** 200
        rate = log(weight_eval(big, p, CTX)) / log(big) ** 2
        assert abs(rate + 1 / (2 * log(1 / mpf(q)))) < mpf("0.05") * abs(rate)
