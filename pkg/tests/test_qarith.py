from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import mp, mpf

from qlaguerre.qarith import (
    DIGITS_ENV,
    PochhammerZeroFactor,
    PrecisionContext,
    default_digits,
    qnumber,
    qpochhammer_inf,
    to_mpf,
)

CTX = PrecisionContext(40)


def close(a, b, rel):
    return abs(a - b) <= rel * max(abs(a), abs(b), mpf(10) ** -300)


def test_empty_product():
    assert qpochhammer_inf(0, "0.5", CTX) == 1


def test_half_half_against_mpmath():
    with mp.workdps(30):
        val = qpochhammer_inf("0.5", "0.5", PrecisionContext(30))
        assert mp.nstr(val, 6) == "0.288788"
    with mp.workdps(50):
        assert close(qpochhammer_inf("0.5", "0.5", CTX), mp.qp(mpf("0.5"), mpf("0.5")), mpf(10) ** -39)


def test_one_step_recursion_at_minus_one():
    with mp.workdps(50):
        whole = qpochhammer_inf(-1, "0.5", CTX)
        split = 2 * qpochhammer_inf(mpf("-0.5"), "0.5", CTX)
        assert close(whole, split, CTX.eps_work * 10)


@pytest.mark.parametrize("q", ["0.3", "0.5", "0.9"])
@given(a=st.fractions(min_value=-2, max_value=2, max_denominator=1000))
def test_shift_recursion(q, a):
    with mp.workdps(50):
        qq, aa = mpf(q), to_mpf(a)
        try:
            lhs = qpochhammer_inf(aa, qq, CTX)
            rhs = (1 - aa) * qpochhammer_inf(aa * qq, qq, CTX)
        except PochhammerZeroFactor:
            return
        assert abs(lhs - rhs) <= 10 * CTX.eps_work * max(abs(lhs), abs(rhs), 1)


@given(a=st.floats(min_value=-3, max_value=0.95), q=st.floats(min_value=0.05, max_value=0.95))
def test_matches_mpmath_qp(a, q):
    with mp.workdps(60):
        mine = qpochhammer_inf(a, q, CTX)
        ref = mp.qp(to_mpf(a), to_mpf(q))
        assert close(mine, ref, mpf(10) ** -38)


def test_zero_factor_rejected():
    with pytest.raises(PochhammerZeroFactor, match="pochhammer zero factor"):
        qpochhammer_inf(8, "0.5", CTX)
    with pytest.raises(PochhammerZeroFactor):
        qpochhammer_inf(1, "0.3", CTX)


@pytest.mark.parametrize("q", ["0", "1", "-0.2", "1.5"])
def test_q_outside_unit_interval(q):
    with pytest.raises(ValueError):
        qpochhammer_inf("0.1", q, CTX)


def test_truncation_is_monotone():
    coarse = PrecisionContext(40)
    with mp.workdps(100):
        a = qpochhammer_inf("-0.7", "0.8", coarse)
        b = qpochhammer_inf("-0.7", "0.8", PrecisionContext(80))
        assert abs(a - b) <= coarse.eps_work * abs(b)


def test_qnumber_examples():
    assert qnumber(0, "0.5") == 0
    assert qnumber(1, "0.7") == 1
    assert qnumber(3, "0.5") == mpf("1.75")


def test_qnumber_classical_limit():
    with mp.workdps(30):
        assert close(qnumber(7, mpf(1) - mpf(10) ** -6), 7, mpf(10) ** -4)


def test_context_validation():
    assert CTX.eps_work == mpf(10) ** -40
    assert CTX.eps_report == mpf(10) ** -20
    with pytest.raises(ValueError):
        PrecisionContext(29)
    with pytest.raises(ValueError):
        PrecisionContext(40, eps_report=mpf(10) ** -50)
    assert CTX.with_digits(70).eps_report == CTX.eps_report


def test_default_digits_env(monkeypatch):
    monkeypatch.setenv(DIGITS_ENV, "77")
    assert default_digits() == 77
    assert PrecisionContext().digits == 77
    monkeypatch.delenv(DIGITS_ENV)
    assert default_digits() == 120


def test_to_mpf_inputs():
    with mp.workdps(40):
        assert to_mpf(0.6) == mpf("0.6")
        assert to_mpf(Fraction(1, 3)) == mpf(1) / 3
        assert to_mpf("2/7") == mpf(2) / 7
        assert to_mpf(5) == 5
