import math

import numpy as np
import pytest

from cohstates.rotator import (argmax_j, argmax_m, classical_peak_j,
                               distribution, rotator_energy)
from cohstates.sphere import SpherePhasePoint

# norm of the rest state at the north pole: sum_j e^{-j(j+1)} (2j+1),
# evaluated by direct series summation at 40 digits
NORTH_POLE_NORM_SQ = 1.4184426386310551132
P00_AT_REST = 0.7049985475373922465


def tangent_point(rng, l_norm):
    x = rng.normal(size=3)
    x /= np.linalg.norm(x)
    v = rng.normal(size=3)
    v -= (v @ x) * x
    v /= np.linalg.norm(v)
    return SpherePhasePoint(x, l_norm * v)


@pytest.mark.parametrize("j,want", [(0, 0.0), (1, 1.0), (2, 3.0), (21, 231.0)])
def test_energy_levels(j, want):
    assert rotator_energy(j) == want


def test_energy_rejects_negative():
    with pytest.raises(ValueError):
        rotator_energy(-1)


@pytest.mark.parametrize("lsq,want", [(132.0, 11.0), (462.0, 21.0), (0.0, 0.0),
                                      (6.0, 2.0)])
def test_peak_root(lsq, want):
    assert classical_peak_j(lsq) == pytest.approx(want, abs=1e-12)


def test_peak_root_rejects_negative():
    with pytest.raises(ValueError):
        classical_peak_j(-1.0)


class TestDistribution:
    def test_rest_state(self):
        t = distribution(SpherePhasePoint([0, 0, 1], [0, 0, 0]))
        assert t.probability(0, 0) == pytest.approx(P00_AT_REST, rel=1e-12)
        assert t.probability(0, 0) == pytest.approx(1 / NORTH_POLE_NORM_SQ,
                                                    rel=1e-12)
        for (j, m), p in t.entries.items():
            if m != 0:
                assert p == 0.0

    def test_total_probability(self):
        t = distribution(SpherePhasePoint([0.412, 0.412, 0.812],
                                          [8.124, -8.124, 0.0]))
        assert t.total() == pytest.approx(1.0, abs=1e-6)

    def test_entries_nonnegative(self):
        t = distribution(SpherePhasePoint([0, 0, 1], [3, 1, 0],
                                          project_tangent=True))
        assert all(p >= 0.0 for p in t.entries.values())

    def test_m_symmetry_for_equatorial_momentum(self):
        # l3 = 0 makes p_{j,m} and p_{j,-m} equal
        t = distribution(SpherePhasePoint([0, 0, 1], [4, 3, 0]))
        for j in range(0, 12):
            for m in range(1, j + 1):
                a, b = t.probability(j, m), t.probability(j, -m)
                if a > 1e-280:
                    assert b == pytest.approx(a, rel=1e-10)


class TestArgmax:
    def test_fig1_peak_j(self):
        t = distribution(SpherePhasePoint([0.412, 0.412, 0.812],
                                          [8.124, -8.124, 0.0]))
        assert argmax_j(t, 0) == 11

    def test_rest_state_peaks_at_zero(self):
        t = distribution(SpherePhasePoint([0, 0, 1], [0, 0, 0]))
        assert argmax_j(t, 0) == 0
        assert argmax_m(t, 0) == 0

    def test_exact_root_point(self):
        # j(j+1) = 6 has the exact root j = 2
        rng = np.random.default_rng(3)
        t = distribution(tangent_point(rng, math.sqrt(6.0)))
        assert argmax_j(t, 0) == 2

    def test_fig2_peak_m(self):
        t = distribution(SpherePhasePoint([0.411, 0.911, 0.036],
                                          [-17.490, 7.490, 10.0],
                                          project_tangent=True))
        assert argmax_m(t, 21) == 10

    def test_axis_aligned_momentum_forces_maximal_m(self):
        t = distribution(SpherePhasePoint([1, 0, 0], [0, 0, 5]))
        assert argmax_m(t, 5) == 5

    def test_empty_slice_rejected(self):
        t = distribution(SpherePhasePoint([0, 0, 1], [0, 0, 0]), j_cut=12)
        with pytest.raises(ValueError):
            argmax_j(t, 50)


def test_peak_j_tracks_classical_root():
    # The peak of p_{j, m} at fixed m near l3 sits at the integer nearest the
    # positive root of j(j+1) = l.l.  The discrete peak genuinely swings
    # either way when the root lands within ~0.1 of a half-integer, so
    # exactness is only asserted outside a guard band; inside it the peak
    # must still be within one level of the root.
    rng = np.random.default_rng(2024)
    for _ in range(20):
        l_norm = rng.uniform(5.0, 13.0)
        p = tangent_point(rng, l_norm)
        t = distribution(p)
        root = classical_peak_j(l_norm * l_norm)
        got = argmax_j(t, round(float(p.l[2])))
        assert abs(got - root) <= 1.0
        frac = abs(root - math.floor(root) - 0.5)
        if frac >= 0.25:
            assert got == round(root)
