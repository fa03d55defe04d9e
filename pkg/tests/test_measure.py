"""Weight density, moment identities, and Stieltjes-type representations."""

import math

import numpy as np
import pytest

from tricomi_turan.kernel import ParameterPoint, RegionError
from tricomi_turan.measure import (MOMENT_IDENTITIES, WeightDensity, phi,
                                   phi_moment, stieltjes_first_shift,
                                   stieltjes_ratio)
from tricomi_turan.turanians import TuranianKind, turanian_ratio


class TestWeightDensity:
    def test_region_validation(self):
        with pytest.raises(RegionError):
            WeightDensity(-1.0, -2.5)
        with pytest.raises(RegionError):
            WeightDensity(2.0, 1.5)

    def test_prefactor(self):
        d = WeightDensity(2.0, -2.5)
        # 1/(Gamma(3) Gamma(5.5))
        expected = 1.0 / (2.0 * 52.34277778455352)
        assert d.prefactor == pytest.approx(expected, rel=1e-10)

    def test_nonnegative_on_random_samples(self):
        d = WeightDensity(2.0, -2.5)
        rng = np.random.default_rng(11)
        for _ in range(50):
            t = float(10.0 ** rng.uniform(-3, 1.8))
            assert phi(d, t).value >= 0.0

    def test_rejects_nonpositive_t(self):
        with pytest.raises(RegionError):
            phi(WeightDensity(2.0, -2.5), 0.0)


class TestMoments:
    @pytest.mark.parametrize("power,expected", [
        (0, 1.0),
        (1, 5.5),          # 1 + a - c
        (-1, 0.4),         # -1/c
        (-2, 0.48),        # (c-a)/(c^2 (c+1))
    ])
    def test_closed_forms_at_reference_point(self, power, expected):
        d = WeightDensity(2.0, -2.5)
        fv = phi_moment(d, power)
        assert fv.value == pytest.approx(expected, abs=1e-6 + fv.abs_error)
        assert MOMENT_IDENTITIES[power].closed_form(2.0, -2.5) == \
            pytest.approx(expected)

    def test_first_moment_other_point(self):
        d = WeightDensity(3.0, -1.5)
        fv = phi_moment(d, 1)
        assert fv.value == pytest.approx(5.5, abs=1e-6 + fv.abs_error)

    def test_second_inverse_moment_region_enforced(self):
        with pytest.raises(RegionError):
            phi_moment(WeightDensity(2.0, -0.5), -2)  # needs c < -1
        with pytest.raises(RegionError):
            phi_moment(WeightDensity(0.5, -2.5), -2)  # needs a > 1

    def test_inverse_moment_region_enforced(self):
        with pytest.raises(RegionError):
            phi_moment(WeightDensity(2.0, 0.5), -1)  # needs c < 0

    def test_unsupported_power(self):
        with pytest.raises(RegionError):
            phi_moment(WeightDensity(2.0, -2.5), 2)

    def test_moment_grid(self):
        for (a, c) in ((0.5, -0.5), (1.5, -4.5), (5.0, -1.5)):
            d = WeightDensity(a, c)
            for power in (0, 1, -1):
                if not MOMENT_IDENTITIES[power].region(a, c):
                    continue
                fv = phi_moment(d, power)
                closed = MOMENT_IDENTITIES[power].closed_form(a, c)
                assert fv.value == pytest.approx(closed, abs=1e-6 + fv.abs_error)


class TestStieltjesRepresentations:
    @pytest.mark.parametrize("a,c,x", [
        (2.0, -2.5, 1.0), (2.0, -2.5, 0.01), (0.25, -0.5, 5.0),
        (5.0, -4.5, 50.0), (1.5, 0.75, 2.0),
    ])
    def test_matches_direct_both_shift_ratio(self, a, c, x):
        d = WeightDensity(a, c)
        rep = stieltjes_ratio(d, x)
        direct = turanian_ratio(TuranianKind.BOTH_SHIFT, ParameterPoint(a, c, x))
        assert abs(rep.value - direct.value) <= rep.abs_error + direct.abs_error

    @pytest.mark.parametrize("a,c,x", [
        (2.0, -1.5, 1.0), (3.0, -4.5, 0.5), (1.5, 0.25, 10.0),
    ])
    def test_matches_direct_first_shift_ratio(self, a, c, x):
        d = WeightDensity(a, c)
        rep = stieltjes_first_shift(d, x)
        direct = turanian_ratio(TuranianKind.FIRST_SHIFT, ParameterPoint(a, c, x))
        assert abs(rep.value - direct.value) <= rep.abs_error + direct.abs_error

    def test_bracket(self):
        # -1/(2x) < value < 0 for a > 0, c < 1
        d = WeightDensity(2.0, -2.5)
        for x in (0.1, 1.0, 10.0):
            v = stieltjes_ratio(d, x).value
            assert -0.5 / x < v < 0.0

    def test_first_shift_bracket(self):
        # 0 < value < 1/(1+a-c) for a > 1 > c
        a, c = 2.0, -1.5
        d = WeightDensity(a, c)
        for x in (0.1, 1.0, 10.0):
            v = stieltjes_first_shift(d, x).value
            assert 0.0 < v < 1.0 / (1.0 + a - c)

    def test_x2_scaling_approaches_limit(self):
        # x^2 * value -> c - a - 1 along x = 100, 1000
        a, c = 2.0, -2.5
        d = WeightDensity(a, c)
        zeta = c - a - 1.0
        devs = [abs(x * x * stieltjes_ratio(d, x).value - zeta)
                for x in (100.0, 1000.0)]
        assert devs[1] < devs[0]
        assert devs[1] < 0.02 * abs(zeta)

    def test_first_shift_small_x_limit(self):
        a, c = 2.0, -1.5
        d = WeightDensity(a, c)
        v = stieltjes_first_shift(d, 1e-3).value
        assert v == pytest.approx(1.0 / (1.0 + a - c), rel=1e-4)

    def test_x2_scaled_transform_strictly_decreasing(self):
        d = WeightDensity(2.0, -2.5)
        vals = [x * x * stieltjes_ratio(d, x).value
                for x in (0.5, 1.0, 2.0, 5.0, 20.0)]
        assert all(v2 < v1 for v1, v2 in zip(vals, vals[1:]))

    def test_rejects_nonpositive_x(self):
        with pytest.raises(RegionError):
            stieltjes_ratio(WeightDensity(2.0, -2.5), -1.0)
