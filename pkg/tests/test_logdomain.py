import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohstates.logdomain import (LogComplex, ONE, ZERO, log_complex_mul,
                                 log_complex_sum, log_sum_exp, wrap_phase)


def test_mul_adds_logs_and_phases():
    a = LogComplex(math.log(2), 0.0)
    b = LogComplex(math.log(3), math.pi / 2)
    c = log_complex_mul(a, b)
    assert c.log_mag == pytest.approx(math.log(6), rel=1e-15)
    assert c.phase == pytest.approx(math.pi / 2, rel=1e-15)


def test_zero_is_absorbing():
    a = LogComplex(123.0, 0.7)
    assert (ZERO * a).is_zero
    assert (a * ZERO).is_zero


def test_mul_never_overflows_in_log_domain():
    c = LogComplex(500.0, 0.1) * LogComplex(-700.0, 0.2)
    assert c.log_mag == pytest.approx(-200.0)
    assert c.phase == pytest.approx(0.3)


def test_sum_total_cancellation_returns_zero():
    assert log_complex_sum([LogComplex(0.0, 0.0),
                            LogComplex(0.0, math.pi)]).is_zero


def test_sum_three_four_five():
    s = log_complex_sum([LogComplex(math.log(3), 0.0),
                         LogComplex(math.log(4), math.pi / 2)])
    assert s.log_mag == pytest.approx(math.log(5), rel=1e-15)
    assert s.phase == pytest.approx(math.atan2(4, 3), rel=1e-15)


def test_sum_factors_out_the_peak():
    s = log_complex_sum([LogComplex(1000.0, 0.0), LogComplex(990.0, 0.0)])
    assert s.log_mag == pytest.approx(1000.0 + math.log(1 + math.exp(-10)),
                                      rel=1e-15)
    assert s.phase == 0.0


def test_wrap_ties_at_minus_pi_go_positive():
    assert wrap_phase(-math.pi) == pytest.approx(math.pi)
    assert wrap_phase(math.pi) == pytest.approx(math.pi)
    assert wrap_phase(3 * math.pi) == pytest.approx(math.pi)


def test_pow_and_division():
    a = LogComplex.from_complex(1 + 1j)
    assert ((a ** 3).to_complex()) == pytest.approx((1 + 1j) ** 3, rel=1e-14)
    assert ((a / a).to_complex()) == pytest.approx(1.0)
    assert (ZERO ** 0) is ONE
    with pytest.raises(ZeroDivisionError):
        a / ZERO


finite_complex = st.complex_numbers(min_magnitude=1e-300, max_magnitude=1e300,
                                    allow_nan=False, allow_infinity=False)


@given(finite_complex)
@settings(max_examples=200, deadline=None)
def test_round_trip(w):
    # exp(fl(log x)) carries a relative error of about eps * |log x|: 1e-14
    # is attainable up to |log w| ~ 90, and the eps-scaled bound covers the
    # rest of the double range
    back = LogComplex.from_complex(w).to_complex()
    lm = abs(math.log(abs(w)))
    tol = 1e-14 if lm <= 90 else (lm + 10) * 2.3e-16
    assert cmath.isclose(back, w, rel_tol=tol)


@given(st.complex_numbers(min_magnitude=1e-39, max_magnitude=1e39,
                          allow_nan=False, allow_infinity=False))
@settings(max_examples=200, deadline=None)
def test_round_trip_tight_in_the_working_band(w):
    back = LogComplex.from_complex(w).to_complex()
    assert cmath.isclose(back, w, rel_tol=1e-14)


bounded_complex = st.complex_numbers(min_magnitude=1e-100, max_magnitude=1e100,
                                     allow_nan=False, allow_infinity=False)


@given(bounded_complex, bounded_complex)
@settings(max_examples=200, deadline=None)
def test_mul_matches_complex_product(a, b):
    got = (LogComplex.from_complex(a) * LogComplex.from_complex(b))
    expected = a * b
    assert -math.pi < got.phase <= math.pi
    assert cmath.isclose(got.to_complex(), expected, rel_tol=1e-12)


@given(st.lists(st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3,
                                   allow_nan=False, allow_infinity=False),
                min_size=1, max_size=12))
@settings(max_examples=200, deadline=None)
def test_sum_matches_complex_sum(values):
    got = log_complex_sum([LogComplex.from_complex(v) for v in values])
    expected = sum(values)
    scale = max(abs(v) for v in values)
    assert abs(got.to_complex() - expected) <= 1e-12 * scale


def test_log_sum_exp_empty_and_peak():
    assert log_sum_exp([]) == -math.inf
    assert log_sum_exp([-math.inf, 3.0]) == pytest.approx(3.0)
    assert log_sum_exp([1000.0, 1000.0]) == pytest.approx(1000.0 + math.log(2))
