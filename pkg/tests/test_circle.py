import cmath
import math

import pytest

from cohstates.circle import (CirclePhasePoint, circle_coherent,
                              circle_eigen_residual, circle_expect_J,
                              circle_expect_U, circle_relative_U,
                              circle_uncertainty_report,
                              uncertainty_from_moments)

# lattice-sum oracles evaluated with mpmath at 40 digits
EXPECT_U_AT_REST = 0.77863967150613793959
EXPECT_J_QUARTER = 0.249675013636404
VAR_J_AT_REST = 0.49897913083282
BOUND_AT_REST = 0.384968591043511
RATIO_U2_AT_REST = 0.606781685231311


def test_rest_coefficients_are_gaussian():
    state = circle_coherent(CirclePhasePoint(0.0, 0.0))
    for j in (-3, 0, 2, 7):
        assert state.coeffs[j].to_complex() == pytest.approx(
            math.exp(-j * j / 2), rel=1e-14)


def test_rest_coefficients_symmetric():
    state = circle_coherent(CirclePhasePoint(0.0, 0.0))
    for j in range(1, state.j_cut + 1):
        assert state.coeffs[-j].log_mag == state.coeffs[j].log_mag


def test_j_cut_below_safe_minimum_rejected():
    with pytest.raises(ValueError):
        circle_coherent(CirclePhasePoint(0.0, 5.0), j_cut=10)


def test_eigen_residual_small():
    state = circle_coherent(CirclePhasePoint(1.0, 2.5), j_cut=40)
    assert circle_eigen_residual(state) <= 1e-12


class TestExpectJ:
    def test_zero_at_rest(self):
        assert circle_expect_J(CirclePhasePoint(0.0, 0.0)) == pytest.approx(
            0.0, abs=1e-15)

    def test_exact_at_integer_label(self):
        assert circle_expect_J(CirclePhasePoint(0.0, 2.0)) == pytest.approx(
            2.0, abs=1e-12)

    def test_quarter_integer_within_a_tenth_percent(self):
        got = circle_expect_J(CirclePhasePoint(0.0, 0.25))
        assert abs(got - 0.25) <= 1e-3
        assert got == pytest.approx(EXPECT_J_QUARTER, rel=1e-10)

    def test_unit_translation_covariance(self):
        base = circle_expect_J(CirclePhasePoint(0.3, 0.37))
        shifted = circle_expect_J(CirclePhasePoint(0.3, 1.37))
        assert shifted == pytest.approx(base + 1.0, abs=1e-12)


class TestExpectU:
    def test_rest_value(self):
        u = circle_expect_U(CirclePhasePoint(0.0, 0.0))
        assert u.imag == 0.0
        assert u.real == pytest.approx(EXPECT_U_AT_REST, rel=1e-13)
        assert abs(u.real - math.exp(-0.25)) < 5e-4

    def test_argument_equals_phi(self):
        u = circle_expect_U(CirclePhasePoint(2.1, 3.7))
        assert cmath.phase(u) == pytest.approx(2.1, abs=1e-12)

    def test_modulus_independent_of_phi(self):
        a = abs(circle_expect_U(CirclePhasePoint(0.0, 1.3)))
        b = abs(circle_expect_U(CirclePhasePoint(2.9, 1.3)))
        assert a == pytest.approx(b, rel=1e-14)


class TestRelativeU:
    def test_self_reference_is_one(self):
        p = CirclePhasePoint(0.7, 1.1)
        assert circle_relative_U(p, p) == pytest.approx(1.0)

    def test_pure_phase_for_shared_l(self):
        got = circle_relative_U(CirclePhasePoint(0.9, 0.0),
                                CirclePhasePoint(0.0, 0.0))
        assert got == pytest.approx(cmath.exp(0.9j), abs=1e-12)

    def test_unit_modulus_when_l_matches(self):
        got = circle_relative_U(CirclePhasePoint(-1.8, 2.2),
                                CirclePhasePoint(0.4, 2.2))
        assert abs(got) == pytest.approx(1.0, rel=1e-13)


class TestUncertainty:
    def test_eigenstate_degenerates_to_zero_equals_zero(self):
        rep = uncertainty_from_moments(0.0, 0j, 0j)
        assert rep.var_j == 0.0
        assert rep.bound == 0.0

    def test_rest_values(self):
        rep = circle_uncertainty_report(CirclePhasePoint(0.0, 0.0))
        assert rep.var_j == pytest.approx(VAR_J_AT_REST, rel=1e-11)
        assert rep.bound == pytest.approx(BOUND_AT_REST, rel=1e-11)
        assert rep.var_j > rep.bound
        assert rep.ratio_u2.real == pytest.approx(RATIO_U2_AT_REST, rel=1e-11)

    def test_variance_flat_in_l(self):
        vals = [circle_uncertainty_report(CirclePhasePoint(0.0, l)).var_j
                for l in (0.0, 0.25, 0.5, 1.0, 2.0)]
        assert (max(vals) - min(vals)) / min(vals) < 0.01

    def test_u2_ratio_flat_in_l_and_phi(self):
        vals = [circle_uncertainty_report(CirclePhasePoint(phi, l)).ratio_u2
                for phi, l in ((0.0, 0.0), (1.2, 0.5), (0.0, 1.0), (2.5, 2.0))]
        mags = [abs(v) for v in vals]
        assert (max(mags) - min(mags)) / min(mags) < 0.01


def test_phi_wraps_into_principal_interval():
    p = CirclePhasePoint(3 * math.pi, 0.0)
    assert p.phi == pytest.approx(math.pi)
    assert CirclePhasePoint(-math.pi, 0.0).phi == pytest.approx(math.pi)
