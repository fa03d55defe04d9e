"""Evaluation kernel for the Tricomi confluent hypergeometric function.

The function psi(a, c, x) solves Kummer's equation

    x y''(x) + (c - x) y'(x) - a y(x) = 0

and, for a > 0 and x > 0, equals the Laplace-type integral

    psi(a, c, x) = 1/Gamma(a) * int_0^inf e^(-x t) t^(a-1) (1+t)^(c-a-1) dt.

This module evaluates psi by three genuinely independent routes:

* ``psi_quadrature``   -- adaptive quadrature of the integral above
                          (validity a > 0; the accuracy anchor),
* ``psi_connection``   -- Gamma-weighted combination of two Kummer-M
                          series (works for a <= 0 and for complex
                          arguments, requires non-integer c),
* ``psi_asymptotic``   -- the large-x expansion
                          psi ~ x^-a (1 + alpha1/x + alpha2/x^2 + ...).

Every result is a :class:`FunctionValue` carrying a heuristic absolute
error estimate; downstream strict-inequality checks compare margins
against these budgets instead of trusting raw floating point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

from scipy.integrate import quad
from scipy.special import gammaln, gammasgn

EPS = 2.2204460492503131e-16

# Connection-formula guard: the formula degenerates at integer c.
INTEGER_C_GUARD = 1e-6

# math.exp overflows near 709; the Kummer-transformed series needs e^|z|.
_CONNECTION_X_MAX = 600.0

QUADRATURE = "quadrature"
CONNECTION = "connection_series"
ASYMPTOTIC = "asymptotic_large_x"


def _quad(f, lo, hi, epsrel, points=None):
    """Adaptive panel integration; full_output keeps QUADPACK quiet when it
    bottoms out on roundoff and still reports its error estimate."""
    out = quad(f, lo, hi, epsabs=1e-300, epsrel=epsrel, limit=200,
               points=points, full_output=1)
    return out[0], out[1]


class EvaluationError(RuntimeError):
    """A numerical evaluation could not be completed to tolerance."""


class RegionError(ValueError):
    """Arguments violate the validity region of the requested quantity."""


@dataclass(frozen=True)
class ParameterPoint:
    """A parameter triple (a, c, x) with x > 0 and finite a, c."""

    a: float
    c: float
    x: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.c)):
            raise RegionError(f"parameters must be finite, got a={self.a}, c={self.c}")
        if not (math.isfinite(self.x) and self.x > 0.0):
            raise RegionError(f"argument must satisfy x > 0, got x={self.x}")


@dataclass(frozen=True)
class FunctionValue:
    """A computed scalar with an absolute-error estimate and a method tag."""

    value: float | complex
    abs_error: float
    method: str
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.abs_error < 0.0:
            raise ValueError("abs_error must be nonnegative")

    @property
    def rel_error(self) -> float:
        v = abs(self.value)
        return self.abs_error / v if v else math.inf


@dataclass(frozen=True)
class AsymptoticSeries:
    """Coefficients of the large-x expansion psi ~ x^-a sum_n alpha_n x^-n.

    alpha1 and alpha2 are stored in their closed forms
    alpha1 = a(c-a-1) and alpha2 = a(a+1)(a+1-c)(a+2-c)/2; construction
    cross-checks them against the term recurrence.
    """

    a: float
    c: float
    alpha1: float
    alpha2: float
    order: int
    coefficients: tuple[float, ...] = field(repr=False, default=())

    @classmethod
    def for_parameters(cls, a: float, c: float, order: int) -> "AsymptoticSeries":
        if order < 1:
            raise ValueError("order must be >= 1")
        m = a + 1.0 - c
        coeffs = [1.0]
        term = 1.0
        for n in range(order):
            term *= (a + n) * (m + n) / (-(n + 1.0))
            coeffs.append(term)
        alpha1 = a * (c - a - 1.0)
        alpha2 = 0.5 * a * (a + 1.0) * (a + 1.0 - c) * (a + 2.0 - c)
        for n, closed in ((1, alpha1), (2, alpha2)):
            if n <= order and abs(coeffs[n] - closed) > 1e-12 * (1.0 + abs(closed)):
                raise AssertionError("asymptotic coefficient recurrence mismatch")
        return cls(a=a, c=c, alpha1=alpha1, alpha2=alpha2, order=order,
                   coefficients=tuple(coeffs))


# ---------------------------------------------------------------------------
# log-gamma
# ---------------------------------------------------------------------------

def log_gamma(z: float) -> tuple[float, float]:
    """Return (log|Gamma(z)|, sign(Gamma(z))) for real z off the poles."""
    if z <= 0.0 and z == math.floor(z):
        raise EvaluationError(f"Gamma pole at z={z}")
    return float(gammaln(z)), float(gammasgn(z))


def _gamma_ratio(num: float, den: float) -> float:
    """Gamma(num)/Gamma(den); a pole in the denominator gives exactly 0."""
    if den <= 0.0 and den == math.floor(den):
        return 0.0
    lg_num, sg_num = log_gamma(num)
    lg_den, sg_den = log_gamma(den)
    return sg_num * sg_den * math.exp(lg_num - lg_den)


def _pochhammer(c: float, m: int) -> float:
    out = 1.0
    for k in range(m):
        out *= c + k
    return out


# ---------------------------------------------------------------------------
# Kummer M (first-kind confluent function)
# ---------------------------------------------------------------------------

def _m_series(a, c, z, tol, max_terms):
    """Direct Taylor series of M(a,c,z); returns (sum, abs error, peak |S|)."""
    term = 1.0 + 0.0j if isinstance(z, complex) else 1.0
    s = term
    peak = abs(s)
    prev_small = False
    for n in range(max_terms):
        term = term * (a + n) * z / ((c + n) * (n + 1.0))
        s += term
        mag = abs(s)
        if not math.isfinite(mag):
            raise EvaluationError(f"Kummer series overflow at a={a}, c={c}, z={z}")
        peak = max(peak, mag)
        # floor by EPS*peak so a sum that cancels to ~0 can still terminate
        small = abs(term) <= tol * mag + EPS * peak
        if small and prev_small:
            return s, 2.0 * abs(term) + EPS * peak, peak
        prev_small = small
    raise EvaluationError(f"Kummer series did not converge within {max_terms} terms "
                          f"(a={a}, c={c}, z={z})")


def kummer_m(a: float, c: float, z: float | complex, tol: float = 1e-15,
             max_terms: int = 10_000) -> FunctionValue:
    """Kummer function M(a, c, z) by direct series summation.

    For Re z < 0 the series is summed through the Kummer transformation
    M(a,c,z) = e^z M(c-a, c, -z), which keeps all large terms of one sign
    and avoids catastrophic cancellation.
    """
    if c <= 0.0 and abs(c - round(c)) == 0.0:
        raise EvaluationError(f"M(a,c,z) pole at c={c}")
    re = z.real if isinstance(z, complex) else z
    if re < 0.0:
        s, err, _ = _m_series(c - a, c, -z, tol, max_terms)
        ez = cmath.exp(z) if isinstance(z, complex) else math.exp(z)
        return FunctionValue(ez * s, abs(ez) * err, CONNECTION)
    s, err, _ = _m_series(a, c, z, tol, max_terms)
    return FunctionValue(s, err, CONNECTION)


# ---------------------------------------------------------------------------
# quadrature route
# ---------------------------------------------------------------------------

def psi_quadrature(p: ParameterPoint, tol: float = 1e-12) -> FunctionValue:
    """Evaluate psi(a,c,x), a > 0, by adaptive quadrature of the integral
    representation.

    Written in the Laplace-scaled variable s = x t,

        psi = x^-a / Gamma(a) * int_0^inf e^-s s^(a-1) (1 + s/x)^(c-a-1) ds,

    which keeps the exponential cutoff at s = O(1) for every x.  The piece
    on [0, b], b = min(x, 1), absorbs the s^(a-1) endpoint via the exact
    substitution u = (s/b)^a; the remainder is integrated in w = log s up
    to a cutoff S with analytic tail bound below tol/10.
    """
    a, c, x = p.a, p.c, p.x
    if a <= 0.0:
        raise RegionError(f"integral representation requires a > 0, got a={a}")
    pw = c - a - 1.0
    b = min(x, 1.0)

    def head(u):
        # s = b u^(1/a); the factor s^(a-1) ds collapses to (b^a / a) du
        s = b * u ** (1.0 / a)
        return math.exp(-s + pw * math.log1p(s / x))

    def body_log(w):
        s = math.exp(w)
        return math.exp(-s + a * w + pw * math.log1p(s / x))

    def integrand(s):
        return math.exp(-s + a * math.log(s) + pw * math.log1p(s / x))

    i1, e1 = _quad(head, 0.0, 1.0, tol)
    head_scale = b ** a / a
    i1 *= head_scale
    e1 *= head_scale

    # cutoff: beyond S0 the integrand decays at least like e^(-s/2)
    S = max(4.0 * (max(a - 1.0, 0.0) + max(pw, 0.0) + 2.0), 30.0)
    floor = abs(i1) + 1e-300
    while integrand(S) * 2.0 > 0.1 * tol * floor and S < 700.0:
        S *= 1.5
    pts = [math.log(x)] if b < x < 0.9 * S else None
    i2, e2 = _quad(body_log, math.log(b), math.log(S), tol, points=pts)
    tail = 2.0 * integrand(S)

    scale = math.exp(-a * math.log(x) - gammaln(a))
    value = scale * (i1 + i2)
    err = scale * (e1 + e2 + tail) + EPS * abs(value)
    return FunctionValue(value, err, QUADRATURE)


# ---------------------------------------------------------------------------
# connection-formula route
# ---------------------------------------------------------------------------

def psi_connection(a: float, c: float, z: float | complex,
                   tol: float = 1e-15) -> FunctionValue:
    """Evaluate psi(a,c,z) from the two-term Kummer-M connection formula

        psi = Gamma(1-c)/Gamma(a-c+1) M(a,c,z)
            + Gamma(c-1)/Gamma(a) z^(1-c) M(a-c+1, 2-c, z),

    with z^(1-c) = exp((1-c) Log z) on the principal branch, so that
    z = t e^(i pi) (entered as complex(-t, +0.0)) picks up the phase
    e^(i pi (1-c)) exactly.

    Special cases: a = 0 returns exactly 1; a a negative integer -m
    returns the terminating series (-1)^m (c)_m M(-m, c, z).  Otherwise
    c within ``INTEGER_C_GUARD`` of an integer is rejected, since the
    formula degenerates there.  The estimate includes the cancellation
    of the two terms; when they cancel beyond 10^6 * EPS the result is
    flagged ``"cancellation"``.
    """
    cplx = isinstance(z, complex)
    if a == 0.0:
        return FunctionValue(1.0 + 0.0j if cplx else 1.0, 0.0, CONNECTION)
    if a < 0.0 and a == math.floor(a):
        # psi(-m, c, z) = (-1)^m (c)_m M(-m, c, z), a degree-m polynomial;
        # sum the series directly (no Kummer transform, it must terminate)
        m = int(-a)
        for k in range(m):
            if abs(c + k) < INTEGER_C_GUARD:
                raise EvaluationError(
                    f"terminating series for a={a} undefined near c={-k}")
        s, err, _ = _m_series(a, c, z, tol, max_terms=m + 2)
        sign = -1.0 if m % 2 else 1.0
        coeff = sign * _pochhammer(c, m)
        return FunctionValue(coeff * s, abs(coeff) * err, CONNECTION)
    if abs(c - round(c)) < INTEGER_C_GUARD:
        raise EvaluationError(
            f"connection formula degenerates for integer c (c={c})")

    c1 = _gamma_ratio(1.0 - c, a - c + 1.0)
    c2 = _gamma_ratio(c - 1.0, a)
    zero = 0.0j if cplx else 0.0
    t1 = t2 = zero
    err = 0.0
    if c1 != 0.0:
        m1 = kummer_m(a, c, z, tol)
        t1 = c1 * m1.value
        err += abs(c1) * m1.abs_error
    if c2 != 0.0:
        zp = cmath.exp((1.0 - c) * cmath.log(z)) if cplx \
            else math.exp((1.0 - c) * math.log(z))
        m2 = kummer_m(a - c + 1.0, 2.0 - c, z, tol)
        t2 = c2 * zp * m2.value
        err += abs(c2) * abs(zp) * m2.abs_error
    value = t1 + t2
    if not math.isfinite(abs(value)):
        raise EvaluationError(f"connection formula overflow at a={a}, c={c}, z={z}")
    gross = abs(t1) + abs(t2)
    err += 4.0 * EPS * gross
    flags = ()
    if abs(value) > 0.0 and gross / abs(value) > 1e6:
        flags = ("cancellation",)
    return FunctionValue(value, err, CONNECTION, flags)


# ---------------------------------------------------------------------------
# asymptotic route
# ---------------------------------------------------------------------------

def psi_asymptotic(p: ParameterPoint, order: int = 2) -> FunctionValue:
    """Truncated large-x expansion psi ~ x^-a (1 + alpha1/x + ... ).

    The remainder estimate is the magnitude of the first omitted term.
    Raises :class:`EvaluationError` if the terms grow before the
    requested truncation order (the expansion is divergent, so growth
    means x is too small for this order).
    """
    series = AsymptoticSeries.for_parameters(p.a, p.c, order)
    x = p.x
    s = 0.0
    prev = math.inf
    for n, coeff in enumerate(series.coefficients):
        t = coeff * x ** (-n)
        if abs(t) > prev and n >= 1:
            raise EvaluationError(
                f"asymptotic terms grow before order {order} at x={x}")
        prev = abs(t)
        s += t
    m = p.a + 1.0 - p.c
    omitted = abs(series.coefficients[-1] * (p.a + order) * (m + order)
                  / (order + 1.0)) * x ** (-(order + 1))
    pref = x ** (-p.a)
    return FunctionValue(pref * s, pref * omitted + EPS * abs(pref * s), ASYMPTOTIC)


def _asymptotic_auto(a: float, c: float, x: float,
                     max_order: int = 60) -> FunctionValue:
    """Sum the expansion to its smallest term (optimal truncation)."""
    m = a + 1.0 - c
    term = 1.0
    s = 1.0
    n = 0
    while n < max_order:
        nxt = term * (a + n) * (m + n) / (-(n + 1.0) * x)
        if abs(nxt) >= abs(term) and n > 0:
            break
        term = nxt
        s += term
        n += 1
        if term == 0.0:  # terminating series (a or m a nonpositive integer)
            break
    omitted = abs(term * (a + n) * (m + n) / ((n + 1.0) * x))
    pref = x ** (-a)
    return FunctionValue(pref * s, pref * (omitted + EPS * abs(s)), ASYMPTOTIC)


# ---------------------------------------------------------------------------
# dispatcher
# ---------------------------------------------------------------------------

def asymptotic_threshold(a: float, c: float) -> float:
    """Dispatch boundary: the expansion is preferred only for x above this."""
    return 50.0 * (1.0 + abs(a) + abs(c)) ** 2


@lru_cache(maxsize=200_000)
def _psi_cached(a: float, c: float, x: float, tol: float) -> FunctionValue:
    if a > 0.0:
        if x > asymptotic_threshold(a, c):
            return _asymptotic_auto(a, c, x)
        return psi_quadrature(ParameterPoint(a, c, x), tol)
    if a == 0.0 or a == math.floor(a):
        return psi_connection(a, c, x)
    # a < 0, non-integer: the connection series loses ~e^x to cancellation,
    # while optimal truncation of the divergent expansion gains with x.
    # Take whichever route reports the smaller error.
    candidates = []
    if x <= _CONNECTION_X_MAX:
        try:
            candidates.append(psi_connection(a, c, x))
        except EvaluationError:
            pass
    if x > 1.0:
        candidates.append(_asymptotic_auto(a, c, x))
    if not candidates:
        raise EvaluationError(f"no usable evaluation route for a={a}, c={c}, x={x}")
    return min(candidates, key=lambda fv: fv.abs_error)


def psi(p: ParameterPoint, tol: float = 1e-12) -> FunctionValue:
    """Evaluate psi(a,c,x) for x > 0, selecting a method by parameter region.

    a > 0 uses the quadrature route (or the asymptotic expansion beyond
    ``asymptotic_threshold``); a = 0 and negative-integer a use their
    exact closed forms; other a <= 0 use the connection series, falling
    back to optimally-truncated asymptotics where the series budget is
    worse.  Results are cached per (a, c, x, tol).
    """
    return _psi_cached(p.a, p.c, p.x, tol)
