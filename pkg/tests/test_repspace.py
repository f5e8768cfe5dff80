import math

import pytest

from cohstates.logdomain import LogComplex
from cohstates.repspace import (BasisIndex, RepParams, StateVector, apply_J,
                                apply_X, apply_Z, apply_Z_vector_form,
                                basis_state, expectation, inner, inner_log,
                                relative_residual, state_scale, state_sum)


def amp(s, j, m):
    return s.amplitudes[BasisIndex(j, m)].to_complex()


def test_basis_index_validation():
    with pytest.raises(ValueError):
        StateVector({BasisIndex(1, 2): LogComplex(0.0)}, j_cut=5)
    with pytest.raises(ValueError):
        StateVector({BasisIndex(9, 0): LogComplex(0.0)}, j_cut=5)


def test_rep_params_validation():
    with pytest.raises(ValueError):
        RepParams(r=-1.0)
    with pytest.raises(ValueError):
        RepParams(zeta=0.5)


class TestAngularMomentum:
    def test_raising_annihilates_top_state(self):
        out = apply_J("Jplus", basis_state(1, 1, 10))
        assert out.is_zero()

    def test_raising_coefficient(self):
        out = apply_J("Jplus", basis_state(1, 0, 10))
        assert amp(out, 1, 1) == pytest.approx(math.sqrt(2), rel=1e-15)

    def test_j3_eigenvalue(self):
        out = apply_J("J3", basis_state(2, -1, 10))
        assert amp(out, 2, -1) == pytest.approx(-1.0)

    def test_jsq_eigenvalue(self):
        out = apply_J("Jsq", basis_state(3, 1, 10))
        assert amp(out, 3, 1) == pytest.approx(12.0)

    def test_ladder_adjointness(self):
        up = apply_J("Jplus", basis_state(4, 2, 10))
        down = apply_J("Jminus", basis_state(4, 3, 10))
        assert inner(basis_state(4, 3, 10), up) == pytest.approx(
            inner(up, basis_state(4, 3, 10)).conjugate())
        assert amp(up, 4, 3) == pytest.approx(amp(down, 4, 2).conjugate())


class TestPosition:
    def test_x3_from_ground(self):
        out = apply_X("X3", basis_state(0, 0, 10))
        assert amp(out, 1, 0) == pytest.approx(1 / math.sqrt(3), rel=1e-15)

    def test_xplus_from_ground(self):
        out = apply_X("Xplus", basis_state(0, 0, 10))
        assert amp(out, 1, 1) == pytest.approx(-math.sqrt(2 / 3), rel=1e-15)

    def test_x3_hermiticity(self):
        raised = inner(basis_state(1, 0, 10), apply_X("X3", basis_state(0, 0, 10)))
        lowered = inner(basis_state(0, 0, 10), apply_X("X3", basis_state(1, 0, 10)))
        assert raised == pytest.approx(lowered)
        assert raised == pytest.approx(1 / math.sqrt(3))

    def test_radius_scales_action(self):
        rep = RepParams(r=2.5)
        out = apply_X("X3", basis_state(0, 0, 10, rep))
        assert amp(out, 1, 0) == pytest.approx(2.5 / math.sqrt(3), rel=1e-15)


class TestGenerators:
    def test_z3_from_ground(self):
        out = apply_Z("Z3", basis_state(0, 0, 10))
        assert amp(out, 1, 0) == pytest.approx(math.exp(-1) / math.sqrt(3),
                                               rel=1e-14)

    def test_z3_two_branches(self):
        out = apply_Z("Z3", basis_state(1, 0, 10))
        assert amp(out, 2, 0) == pytest.approx(
            math.exp(-2) * math.sqrt(4 / 15), rel=1e-14)
        assert amp(out, 0, 0) == pytest.approx(
            math.e / math.sqrt(3), rel=1e-14)

    def test_z1_from_ground(self):
        out = apply_Z("Z1", basis_state(0, 0, 10))
        c = 0.5 * math.exp(-1) * math.sqrt(2 / 3)
        assert amp(out, 1, 1) == pytest.approx(-c, rel=1e-14)
        assert amp(out, 1, -1) == pytest.approx(c, rel=1e-14)

    def test_z2_from_ground(self):
        out = apply_Z("Z2", basis_state(0, 0, 10))
        c = 0.5 * math.exp(-1) * math.sqrt(2 / 3)
        assert amp(out, 1, 1) == pytest.approx(1j * c, rel=1e-14)
        assert amp(out, 1, -1) == pytest.approx(1j * c, rel=1e-14)

    def test_vector_form_scalars_collapse_at_ground(self):
        # sqrt(1 + 4 j(j+1)) = 1 at j = 0, so the first scalar function is
        # e^{1/2}(sinh(1/2) + cosh(1/2)) = e there
        from cohstates.repspace import _jsq_scalar_logs
        logf, _ = _jsq_scalar_logs(0)
        assert math.exp(logf) == pytest.approx(math.e, rel=1e-14)

    def test_vector_form_matches_ladder_form_ground(self):
        a = apply_Z("Z3", basis_state(0, 0, 10))
        b = apply_Z_vector_form("Z3", basis_state(0, 0, 10))
        assert amp(b, 1, 0) == pytest.approx(amp(a, 1, 0), rel=1e-13)

    @pytest.mark.parametrize("which", ["Z1", "Z2", "Z3"])
    def test_vector_form_matches_ladder_form_generic(self, which):
        s = basis_state(5, 2, 12)
        a = apply_Z(which, s)
        b = apply_Z_vector_form(which, s)
        assert relative_residual(a.restricted(10), b.restricted(10), s) < 1e-12


class TestInnerAndExpectation:
    def test_orthonormality(self):
        for (j1, m1), (j2, m2) in [((0, 0), (0, 0)), ((2, 1), (2, 1)),
                                   ((2, 1), (2, -1)), ((3, 0), (2, 0))]:
            got = inner(basis_state(j1, m1, 8), basis_state(j2, m2, 8))
            want = 1.0 if (j1, m1) == (j2, m2) else 0.0
            assert got == pytest.approx(want, abs=1e-15)

    def test_norm_positive_and_sesquilinear(self):
        a = state_sum([basis_state(1, 0, 8),
                       state_scale(basis_state(2, 1, 8), 0.5 - 0.25j)])
        b = state_sum([basis_state(2, 1, 8),
                       state_scale(basis_state(1, 0, 8), 1j)])
        n = inner(a, a)
        assert n.imag == pytest.approx(0.0, abs=1e-15)
        assert n.real > 0
        assert inner(a, b) == pytest.approx(inner(b, a).conjugate(), rel=1e-14)

    def test_mismatched_rep_params_rejected(self):
        with pytest.raises(ValueError):
            inner_log(basis_state(0, 0, 8, RepParams(r=1.0)),
                      basis_state(0, 0, 8, RepParams(r=2.0)))

    def test_expectation_examples(self):
        assert expectation("J3", basis_state(4, -3, 8)) == pytest.approx(-3.0)
        assert expectation("X3", basis_state(0, 0, 8)) == pytest.approx(0.0, abs=1e-16)
        plus = state_sum([basis_state(0, 0, 8), basis_state(1, 0, 8)])
        assert expectation("Jsq", plus) == pytest.approx(1.0, rel=1e-14)

    def test_zero_norm_expectation_rejected(self):
        empty = state_scale(basis_state(0, 0, 8), 0j)
        with pytest.raises(ValueError):
            expectation("J3", empty)


class TestTruncationAccounting:
    def test_raising_past_cut_is_counted(self):
        s = basis_state(5, 0, 5)
        out = apply_X("X3", s)
        assert out.lost_fraction() > 0
        assert BasisIndex(6, 0) not in out.amplitudes

    def test_interior_actions_lose_nothing(self):
        s = basis_state(2, 0, 10)
        out = apply_X("X3", s)
        assert out.lost_log == -math.inf

    def test_tail_fraction_reports_top_bands(self):
        s = state_sum([basis_state(0, 0, 6),
                       state_scale(basis_state(6, 0, 6), 1e-8 + 0j)])
        assert s.tail_fraction(bands=2) == pytest.approx(1e-16, rel=1e-10)
        assert s.tail_fraction(bands=7) == pytest.approx(1.0)


def test_normalized_state_has_unit_norm():
    s = state_sum([basis_state(0, 0, 8),
                   state_scale(basis_state(3, 2, 8), 100.0 + 0j)])
    assert s.normalized().norm() == pytest.approx(1.0, rel=1e-14)


def test_commutator_spot_check():
    # [Jplus, Jminus] = 2 J3 on an interior vector
    s = basis_state(3, 1, 10)
    pm = apply_J("Jplus", apply_J("Jminus", s))
    mp_ = apply_J("Jminus", apply_J("Jplus", s))
    lhs = state_sum([pm, state_scale(mp_, -1 + 0j)])
    rhs = state_scale(apply_J("J3", s), 2 + 0j)
    assert relative_residual(lhs, rhs, s) < 1e-14
