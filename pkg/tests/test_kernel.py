"""Kernel tests: each evaluation route against independent oracles.

Oracles used here:
  * closed forms   psi(a, a+1, x) = x^-a,  psi(0, c, x) = 1,
                   psi(-1, c, x) = x - c,  M(a, a, z) = e^z,
                   M(1, 2, z) = (e^z - 1)/z,
                   M(1/2, 3/2, -z^2) = sqrt(pi) erf(z) / (2 z)
  * error-function forms via math.erf/erfc:
                   psi(1/2, 1/2, x) = sqrt(pi) e^x erfc(sqrt(x))
  * upper incomplete gamma via scipy.special.gammaincc:
                   psi(1, b, x) = e^x x^(1-b) Gamma(b-1, x)
  * frozen 50-digit reference values for generic parameter points
  * cross-method agreement between the quadrature and connection routes.
"""

import cmath
import math

import pytest
from scipy.special import gammaincc, gammaln

from tricomi_turan.kernel import (AsymptoticSeries, EvaluationError,
                                  ParameterPoint, RegionError, kummer_m,
                                  log_gamma, psi, psi_asymptotic,
                                  psi_connection, psi_quadrature)

SQRT_PI = math.sqrt(math.pi)

# 50-digit reference values for spot checks at generic parameters
PSI_REFS = {
    (2.0, -2.5, 3.0): 0.017158595638471754438,
    (0.5, 0.25, 0.7): 0.79019337644482946054,
    (2.5, -1.5, 1.25): 0.017911335158752790552,
    (-0.75, -5.5, 200.0): 54.324954886873698567,
    (-1.25, 0.75, 0.5): -0.63067231144028590727,
}
# psi(a, c, t e^(i pi)) on the principal branch, 50-digit connection formula
PSI_NEG_AXIS_REFS = {
    (1.5, -0.5, 2.0): complex(-0.41978220188821506579, -0.537430667646613927),
    (2.0, -2.5, 4.0): complex(-0.2267621513564570295, -0.070355029994613514136),
}


class TestLogGamma:
    def test_at_one(self):
        lg, sign = log_gamma(1.0)
        assert lg == 0.0 and sign == 1.0

    def test_half(self):
        lg, sign = log_gamma(0.5)  # Gamma(1/2) = sqrt(pi)
        assert sign == 1.0
        assert lg == pytest.approx(0.57236494292470008707, abs=1e-15)

    def test_reflection_negative_half(self):
        lg, sign = log_gamma(-0.5)  # Gamma(-1/2) = -2 sqrt(pi)
        assert sign == -1.0
        assert lg == pytest.approx(1.2655121234846453965, abs=1e-15)

    @pytest.mark.parametrize("z", [0.0, -1.0, -2.0, -7.0])
    def test_pole_raises(self, z):
        with pytest.raises(EvaluationError):
            log_gamma(z)


class TestKummerM:
    def test_empty_sum(self):
        assert kummer_m(3.7, 0.4, 0.0).value == 1.0

    def test_exponential(self):
        fv = kummer_m(1.0, 1.0, 1.0)
        assert fv.value == pytest.approx(math.e, rel=1e-14)

    def test_m_1_2(self):
        fv = kummer_m(1.0, 2.0, 1.0)
        assert fv.value == pytest.approx(math.e - 1.0, rel=1e-14)
        assert fv.abs_error < 1e-12

    def test_m_a_a_is_exp(self):
        fv = kummer_m(3.0, 3.0, 2.5)
        assert fv.value == pytest.approx(12.182493960703473438, rel=1e-14)

    def test_negative_argument_erf_oracle(self):
        # M(1/2, 3/2, -z^2) = sqrt(pi) erf(z) / (2 z) at z = sqrt(2)
        z = math.sqrt(2.0)
        expected = SQRT_PI * math.erf(z) / (2.0 * z)
        fv = kummer_m(0.5, 1.5, -2.0)
        assert fv.value == pytest.approx(expected, rel=1e-13)

    def test_large_negative_argument_stability(self):
        # Kummer transformation keeps relative accuracy at z = -50
        z = math.sqrt(50.0)
        expected = SQRT_PI * math.erf(z) / (2.0 * z)
        fv = kummer_m(0.5, 1.5, -50.0)
        assert fv.value == pytest.approx(expected, rel=1e-12)

    def test_complex_exponential(self):
        z = complex(0.3, 1.1)
        fv = kummer_m(1.0, 1.0, z)
        assert abs(fv.value - cmath.exp(z)) < 1e-13 * abs(cmath.exp(z))

    def test_terminating_series_cancels_to_zero(self):
        # M(-1, 1/2, 1/2) = 1 - z/c = 0: the stopping rule must not hang
        fv = kummer_m(-1.0, 0.5, 0.5)
        assert abs(fv.value) < 1e-15

    def test_pole_in_c(self):
        with pytest.raises(EvaluationError):
            kummer_m(1.0, -2.0, 1.0)


class TestPsiQuadrature:
    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0, 3.0])
    @pytest.mark.parametrize("x", [0.1, 1.0, 10.0])
    def test_power_closed_form(self, a, x):
        # c = a+1 collapses the integrand; psi(a, a+1, x) = x^-a
        fv = psi_quadrature(ParameterPoint(a, a + 1.0, x))
        assert fv.value == pytest.approx(x ** (-a), rel=1e-10)

    @pytest.mark.parametrize("x", [1e-8, 0.5, 3.0])
    def test_erfc_oracle(self, x):
        expected = SQRT_PI * math.exp(x) * math.erfc(math.sqrt(x))
        fv = psi_quadrature(ParameterPoint(0.5, 0.5, x))
        assert fv.value == pytest.approx(expected, rel=1e-11)

    @pytest.mark.parametrize("b", [1.5, 2.5, 3.25])
    @pytest.mark.parametrize("x", [0.2, 2.0, 20.0])
    def test_incomplete_gamma_oracle(self, b, x):
        # psi(1, b, x) = e^x x^(1-b) Gamma(b-1, x)
        expected = math.exp(x + (1.0 - b) * math.log(x)
                            + gammaln(b - 1.0)) * gammaincc(b - 1.0, x)
        fv = psi_quadrature(ParameterPoint(1.0, b, x))
        assert fv.value == pytest.approx(expected, rel=1e-10)

    def test_small_x_limit_value(self):
        # x -> 0 with c < 1 tends to Gamma(1-c)/Gamma(a-c+1); here sqrt(pi)
        fv = psi_quadrature(ParameterPoint(0.5, 0.5, 1e-8))
        assert abs(fv.value - SQRT_PI) < 3e-4
        assert fv.value < SQRT_PI

    @pytest.mark.parametrize("point,expected", sorted(
        (k, v) for k, v in PSI_REFS.items() if k[0] > 0))
    def test_reference_values(self, point, expected):
        fv = psi_quadrature(ParameterPoint(*point))
        assert fv.value == pytest.approx(expected, rel=1e-11)
        assert abs(fv.value - expected) <= max(fv.abs_error, 1e-13 * abs(expected))

    def test_error_estimate_nonnegative(self):
        fv = psi_quadrature(ParameterPoint(2.0, -2.5, 3.0))
        assert fv.abs_error >= 0.0
        assert fv.method == "quadrature"

    def test_rejects_nonpositive_a(self):
        with pytest.raises(RegionError):
            psi_quadrature(ParameterPoint(-0.5, 0.5, 1.0))

    def test_rejects_nonpositive_x(self):
        with pytest.raises(RegionError):
            ParameterPoint(1.0, 0.5, 0.0)


class TestPsiConnection:
    def test_a_zero_exact(self):
        fv = psi_connection(0.0, -0.5, 3.0)
        assert fv.value == 1.0 and fv.abs_error == 0.0

    def test_negative_integer_a_closed_form(self):
        # psi(-1, c, x) = x - c
        fv = psi_connection(-1.0, -0.5, 4.0)
        assert fv.value == pytest.approx(4.5, rel=1e-14)

    def test_negative_integer_a_degree_two(self):
        # psi(-2, c, x) = x^2 - 2(c+1)x + c(c+1)
        c, x = -1.5, 5.0
        expected = x * x - 2.0 * (c + 1.0) * x + c * (c + 1.0)
        fv = psi_connection(-2.0, c, x)
        assert fv.value == pytest.approx(expected, rel=1e-13)

    def test_cross_method_spec_point(self):
        q = psi_quadrature(ParameterPoint(1.0, 1.5, 4.0))
        k = psi_connection(1.0, 1.5, 4.0)
        assert abs(q.value - k.value) <= q.abs_error + k.abs_error

    def test_integer_c_guard(self):
        with pytest.raises(EvaluationError):
            psi_connection(1.5, 2.0, 1.0)
        with pytest.raises(EvaluationError):
            psi_connection(1.5, -1.0 + 1e-9, 1.0)

    @pytest.mark.parametrize("key,expected", sorted(PSI_NEG_AXIS_REFS.items()))
    def test_negative_axis_reference(self, key, expected):
        a, c, t = key
        fv = psi_connection(a, c, complex(-t, 0.0))
        assert abs(fv.value - expected) < 1e-12 * abs(expected)

    def test_negative_axis_phase_is_principal(self):
        # complex(-t, +0.0) must land on the upper edge: Im log z = +pi
        assert cmath.log(complex(-2.0, 0.0)).imag == pytest.approx(math.pi)

    def test_schwarz_reflection(self):
        z = cmath.rect(5.0, 1.0)
        up = psi_connection(2.0, -2.5, z)
        dn = psi_connection(2.0, -2.5, z.conjugate())
        assert abs(dn.value - up.value.conjugate()) < 1e-12 * abs(up.value)

    def test_cancellation_flag_at_large_x(self):
        fv = psi_connection(2.0, -2.5, 30.0)
        assert "cancellation" in fv.flags
        # the estimate must own up to the cancellation loss
        assert fv.abs_error > 1e-10 * abs(fv.value)


class TestPsiAsymptotic:
    def test_exact_when_series_terminates(self):
        # a=1, c=2 makes every correction coefficient vanish
        fv = psi_asymptotic(ParameterPoint(1.0, 2.0, 100.0), order=2)
        assert fv.value == pytest.approx(0.01, rel=1e-15)

    def test_two_term_value(self):
        # alpha1 = -1, alpha2 = 2 for (a, c) = (1, 1)
        fv = psi_asymptotic(ParameterPoint(1.0, 1.0, 100.0), order=2)
        assert fv.value == pytest.approx(0.01 * (1.0 - 0.01 + 0.0002), rel=1e-14)

    def test_order_one_value(self):
        # alpha1 = a(c-a-1) = -6 for (a, c) = (2, 0)
        fv = psi_asymptotic(ParameterPoint(2.0, 0.0, 1000.0), order=1)
        assert fv.value == pytest.approx(1e-6 * (1.0 - 0.006), rel=1e-14)

    def test_remainder_brackets_truth(self):
        p = ParameterPoint(1.0, 1.0, 100.0)
        fv = psi_asymptotic(p, order=2)
        ref = psi_quadrature(p, 1e-13)
        assert abs(fv.value - ref.value) <= 2.0 * fv.abs_error + ref.abs_error

    def test_alpha_closed_forms(self):
        s = AsymptoticSeries.for_parameters(2.0, -2.5, 4)
        assert s.alpha1 == pytest.approx(2.0 * (-2.5 - 3.0))
        assert s.alpha2 == pytest.approx(0.5 * 2.0 * 3.0 * 5.5 * 6.5)

    def test_divergence_detected(self):
        with pytest.raises(EvaluationError):
            psi_asymptotic(ParameterPoint(3.0, -2.5, 0.5), order=6)


class TestPsiDispatcher:
    def test_quadrature_region(self):
        fv = psi(ParameterPoint(1.0, 2.0, 2.0))
        assert fv.value == pytest.approx(0.5, rel=1e-11)
        assert fv.method == "quadrature"

    def test_a_zero(self):
        fv = psi(ParameterPoint(0.0, -1.0, 7.0))
        assert fv.value == 1.0

    def test_small_x_gamma_limit(self):
        # Gamma(1-c)/Gamma(a-c+1) = Gamma(3)/Gamma(5) = 1/12 at (2, -2)
        fv = psi(ParameterPoint(2.0, -2.0, 0.001))
        assert abs(fv.value - 1.0 / 12.0) < 2e-4

    def test_negative_a_moderate_x(self):
        fv = psi(ParameterPoint(-1.25, 0.75, 0.5))
        assert fv.value == pytest.approx(PSI_REFS[(-1.25, 0.75, 0.5)], rel=1e-11)

    def test_negative_a_large_x_uses_asymptotics(self):
        fv = psi(ParameterPoint(-0.75, -5.5, 200.0))
        assert fv.value == pytest.approx(PSI_REFS[(-0.75, -5.5, 200.0)], rel=1e-11)
        assert fv.method == "asymptotic_large_x"

    def test_huge_x_dispatches_to_asymptotics(self):
        fv = psi(ParameterPoint(0.25, 0.5, 500.0))  # threshold 50*(1.75)^2 = 153
        assert fv.method == "asymptotic_large_x"
        assert fv.value == pytest.approx(500.0 ** -0.25, rel=1e-3)

    def test_positivity_on_random_samples(self):
        import numpy as np
        rng = np.random.default_rng(20240817)
        for _ in range(200):
            a = float(rng.uniform(0.05, 6.0))
            c = float(rng.uniform(-6.0, 0.99))
            x = float(10.0 ** rng.uniform(-3, 2.3))
            assert psi(ParameterPoint(a, c, x)).value > 0.0


class TestKernelInvariants:
    def test_ode_residual_sample(self):
        # x f'' + (c-x) f' - a f = 0 under central differences, h = 1e-4 x
        for (a, c, x) in ((1.5, -0.5, 1.0), (3.0, 0.25, 5.0), (0.5, -4.5, 0.5)):
            h = 1e-4 * x
            f = [psi_quadrature(ParameterPoint(a, c, xx), 1e-13).value
                 for xx in (x - h, x, x + h)]
            d1 = (f[2] - f[0]) / (2.0 * h)
            d2 = (f[2] - 2.0 * f[1] + f[0]) / (h * h)
            resid = x * d2 + (c - x) * d1 - a * f[1]
            scale = abs(x * d2) + abs((c - x) * d1) + abs(a * f[1])
            assert abs(resid) <= 1e-4 * scale

    def test_derivative_identity_sample(self):
        # d/dx psi(a,c,x) = -a psi(a+1, c+1, x)
        for (a, c, x) in ((2.0, -2.5, 1.0), (0.5, 0.25, 2.0)):
            h = 1e-4 * max(x, 0.1)
            fp = psi_quadrature(ParameterPoint(a, c, x + h), 1e-13).value
            fm = psi_quadrature(ParameterPoint(a, c, x - h), 1e-13).value
            fd = (fp - fm) / (2.0 * h)
            target = -a * psi(ParameterPoint(a + 1.0, c + 1.0, x)).value
            assert abs(fd - target) <= 1e-6 * abs(target) + 1e-9

    def test_small_x_monotone_convergence(self):
        # psi(a,c,x) -> Gamma(1-c)/Gamma(a-c+1), deviations shrinking
        a, c = 1.5, -0.5
        limit = math.exp(gammaln(1.0 - c) - gammaln(a - c + 1.0))
        devs = [abs(psi_quadrature(ParameterPoint(a, c, x)).value - limit)
                for x in (1e-2, 1e-4, 1e-6)]
        assert devs[0] > devs[1] > devs[2]

    def test_asymptotic_consistency_scaled_difference_bounded(self):
        # |psi_as(order 2) - psi_quad| * x^2 / x^-a stays bounded as x grows
        a, c = 1.0, -1.5
        scaled = []
        for x in (1e2, 1e3, 1e4):
            p = ParameterPoint(a, c, x)
            diff = abs(psi_asymptotic(p, 2).value - psi_quadrature(p, 1e-13).value)
            scaled.append(diff * x * x / x ** (-a))
        assert scaled[0] >= scaled[1] >= scaled[2]

    def test_cross_method_agreement_grid(self):
        # subset here; the acceptance suite runs the full >= 200-point grid
        for a in (0.5, 2.0):
            for c in (-2.5, 0.25):
                for x in (0.05, 0.5, 2.0):
                    q = psi_quadrature(ParameterPoint(a, c, x))
                    k = psi_connection(a, c, x)
                    assert abs(q.value - k.value) <= max(
                        1e-8 * abs(q.value), q.abs_error + k.abs_error)
