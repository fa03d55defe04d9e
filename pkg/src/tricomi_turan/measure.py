"""The weight density phi_{a,c} and its integral identities.

For a > 0 and c < 1 the nonnegative density

    phi(t) = t^-c e^-t |psi(a, c, t e^(i pi))|^-2 / (Gamma(a+1) Gamma(a-c+1))

ties the both-shift Turanian ratio to a Stieltjes-type transform,

    D_ac(x)/psi^2(a,c,x) = - int_0^inf t phi(t) / (x+t)^2 dt,

and the first-shift ratio to

    (1+a-c) D_a(x)/psi^2(a,c,x) = 1 - int_0^inf x^2 phi(t) / (x+t)^2 dt.

Its moments have closed forms on their validity regions:

    int phi dt        = 1                  (a > 0, c < 1)
    int t phi dt      = 1 + a - c          (a > 0, c < 1)
    int phi/t dt      = -1/c               (a > 0 > c)
    int phi/t^2 dt    = (c-a)/(c^2 (c+1))  (a > 1, c < -1)

Evaluating phi requires psi on the upper edge of the negative real axis,
hence non-integer c (kernel connection-formula guard).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.special import gammaln

from .kernel import (EPS, EvaluationError, FunctionValue, RegionError,
                     _quad, psi_connection)

_INTEGRAL = "quadrature"


@dataclass(frozen=True)
class WeightDensity:
    """Parameters (a > 0, c < 1) with the log of 1/(Gamma(a+1)Gamma(a-c+1))."""

    a: float
    c: float
    log_prefactor: float = field(init=False)

    def __post_init__(self):
        if not (self.a > 0.0 and self.c < 1.0):
            raise RegionError(
                f"weight density requires a > 0 and c < 1, got a={self.a}, c={self.c}")
        lp = -(gammaln(self.a + 1.0) + gammaln(self.a - self.c + 1.0))
        object.__setattr__(self, "log_prefactor", float(lp))

    @property
    def prefactor(self) -> float:
        return math.exp(self.log_prefactor)


@dataclass(frozen=True)
class MomentIdentity:
    """Closed form of int t^power phi dt together with its region."""

    power: int
    region_text: str

    def region(self, a: float, c: float) -> bool:
        return _MOMENT_REGIONS[self.power](a, c)

    def closed_form(self, a: float, c: float) -> float:
        if not self.region(a, c):
            raise RegionError(
                f"moment power {self.power} needs {self.region_text}, "
                f"got a={a}, c={c}")
        return _MOMENT_FORMS[self.power](a, c)


_MOMENT_REGIONS = {
    1: lambda a, c: a > 0.0 and c < 1.0,
    0: lambda a, c: a > 0.0 and c < 1.0,
    -1: lambda a, c: a > 0.0 > c,
    -2: lambda a, c: a > 1.0 and c < -1.0,
}

_MOMENT_FORMS = {
    1: lambda a, c: 1.0 + a - c,
    0: lambda a, c: 1.0,
    -1: lambda a, c: -1.0 / c,
    -2: lambda a, c: (c - a) / (c * c * (c + 1.0)),
}

MOMENT_IDENTITIES = {
    1: MomentIdentity(1, "a > 0, c < 1"),
    0: MomentIdentity(0, "a > 0, c < 1"),
    -1: MomentIdentity(-1, "a > 0 > c"),
    -2: MomentIdentity(-2, "a > 1, c < -1"),
}


def _psi_neg_axis_sq(d: WeightDensity, t: float, tol: float) -> tuple[float, float]:
    """|psi(a, c, t e^(i pi))|^2 with relative error estimate."""
    fv = psi_connection(d.a, d.c, complex(-t, 0.0), tol)
    mod = abs(fv.value)
    if mod == 0.0 or mod <= fv.abs_error:
        raise EvaluationError(
            f"|psi| indistinguishable from 0 on the negative axis at t={t}")
    return mod * mod, 2.0 * fv.abs_error / mod


def phi(d: WeightDensity, t: float, tol: float = 1e-14) -> FunctionValue:
    """Density value at t > 0 (always >= 0)."""
    if t <= 0.0:
        raise RegionError(f"density argument must satisfy t > 0, got t={t}")
    sq, rel = _psi_neg_axis_sq(d, t, tol)
    value = math.exp(d.log_prefactor - d.c * math.log(t) - t) / sq
    return FunctionValue(value, value * (rel + 4.0 * EPS), _INTEGRAL)


def _weighted_integral(d: WeightDensity, beta: float, extra, tol: float,
                       knee: float | None = None) -> tuple[float, float]:
    """int_0^inf t^(beta-1) e^-t |psi(.,., -t)|^-2 extra(t) dt, unprefixed.

    The endpoint power t^(beta-1) (beta > 0) is removed exactly on [0, 1]
    by u = t^beta; the rest runs to a cutoff T with a doubling tail bound.
    """
    if beta <= 0.0:
        raise RegionError(f"integrand not integrable at 0 (exponent beta={beta})")

    def core(t):
        sq, _ = _psi_neg_axis_sq(d, t, 1e-14)
        return math.exp(-t) / sq * extra(t)

    def g(u):
        return core(u ** (1.0 / beta)) / beta

    i1, e1 = _quad(g, 0.0, 1.0, tol)

    def f(t):
        return t ** (beta - 1.0) * core(t)

    # |psi|^-2 grows like t^(2a); integrand decays like t^(beta-1+2a) e^-t
    T = max(4.0 * (beta + 2.0 * d.a + 2.0), 40.0)
    floor = abs(i1) + 1e-300
    while f(T) * 2.0 > 0.1 * tol * floor and T < 600.0:
        T *= 1.4
    pts = [knee] if (knee is not None and 1.0 < knee < 0.9 * T) else None
    i2, e2 = _quad(f, 1.0, T, tol, points=pts)
    tail = 2.0 * f(T)
    return i1 + i2, e1 + e2 + tail


def phi_moment(d: WeightDensity, power: int, tol: float = 1e-9) -> FunctionValue:
    """Quadrature value of int t^power phi(t) dt for power in {-2,-1,0,1}.

    Requests outside the moment's validity region are region errors, not
    extrapolations; compare against
    ``MOMENT_IDENTITIES[power].closed_form(a, c)``.
    """
    if power not in MOMENT_IDENTITIES:
        raise RegionError(f"unsupported moment power {power}")
    ident = MOMENT_IDENTITIES[power]
    if not ident.region(d.a, d.c):
        raise RegionError(
            f"moment power {power} needs {ident.region_text}, "
            f"got a={d.a}, c={d.c}")
    beta = power - d.c + 1.0
    raw, err = _weighted_integral(d, beta, lambda t: 1.0, tol)
    pref = d.prefactor
    return FunctionValue(pref * raw, pref * err, _INTEGRAL)


def stieltjes_ratio(d: WeightDensity, x: float, tol: float = 1e-9) -> FunctionValue:
    """- int_0^inf t phi(t) / (x+t)^2 dt.

    Equals the both-shift Turanian ratio computed directly from psi
    values; the two code paths share nothing past psi itself, so their
    agreement cross-validates complex evaluation, quadrature and the
    Turanian arithmetic at once.
    """
    if x <= 0.0:
        raise RegionError(f"x > 0 required, got x={x}")
    raw, err = _weighted_integral(d, 2.0 - d.c,
                                  lambda t: 1.0 / (x + t) ** 2, tol, knee=x)
    pref = d.prefactor
    return FunctionValue(-pref * raw, pref * err, _INTEGRAL)


def stieltjes_first_shift(d: WeightDensity, x: float,
                          tol: float = 1e-9) -> FunctionValue:
    """(1 - int_0^inf x^2 phi(t) / (x+t)^2 dt) / (1 + a - c).

    The first-shift counterpart of :func:`stieltjes_ratio`.
    """
    if x <= 0.0:
        raise RegionError(f"x > 0 required, got x={x}")
    raw, err = _weighted_integral(d, 1.0 - d.c,
                                  lambda t: (x / (x + t)) ** 2, tol, knee=x)
    pref = d.prefactor
    scale = 1.0 + d.a - d.c
    return FunctionValue((1.0 - pref * raw) / scale, pref * err / scale, _INTEGRAL)
