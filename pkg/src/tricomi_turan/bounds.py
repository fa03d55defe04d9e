"""Catalog of inequalities for psi and its Turanians, with pointwise checks.

Each entry is normalized to the orientation ``lhs < rhs`` (``<=`` for the
S-family) and verified with margin = rhs - lhs against the combined error
budget of both sides: ``pass`` needs margin > budget, ``fail`` needs
margin < -budget, anything inside the budget is ``inconclusive``.

Ratio bounds (D = Turanian, R = D/psi^2):

    T1L  (c-a-1)/x^2 < R_ac                              a>0, c<1
    T1U  R_ac < 1/c + 2x(c-a)/(c^2(c+1))                 a>1, c<-1
    T2L  -1/(2x) < R_ac                                  a>0, c<1
    P1L  1/c < R_ac                                      a>0>c
    P1U  R_ac < 0                                        a>0, c<1
    T3L  (1 + x/(2c))/(1+a-c) < R_a                      a>0>c
    T3U  R_a < 2/x                                       a>0, c<1
    T5L  (1 - (c-a)x^2/(c^2(c+1)))/(1+a-c) < R_a         a>1, c<-1
    P2L  0 < R_a                                         a>0, c<1
    P2U  R_a < 1/(1+a-c)                                 a>1, c<1
    T6L  -a/x^2 < R_c                                    a>0, c<1
    T6U  R_c < (a/(c(1+a-c)))(1 + 2x(c-a)/(c(c+1)))      a>1, c<-1
    P3L  a/(c(1+a-c)) < R_c                              a>0>c
    P3U  R_c < 0                                         a>0, any c
    P4U  R_ac < 1/a                                      a>1 (probe: 0<a<=1)

Raw psi relations:

    S1   -(1/x) psi psi(a,c-1) <= D_c                    a>0, c<a+2
    S2   -(1/x) psi^2 psi(a+1,c+1) <= D_c                a>1, c<a+1  [advisory]
    S2H  -(1/x) psi psi(a+1,c+1) <= D_c                  a>1, c<a+1  [advisory]
    I1   (G1 psi(a+1,c+1))^(1/(a+1)) < (G0 psi)^(1/a)    a>0>c
    I2   2 < psi/psi(a+1,c+1) - (1/c)(G0 psi)^(1/a)      a>0>c
    I3   (G0 psi)^(c/(a(c+1))) < (G1 psi(a+1,c+1))^(1/(a+1))   a>0, c<-1
    I4   psi(a+1,c+1) < -(1/c) psi                       a>0>c

with G0 = Gamma(a-c+1)/Gamma(1-c) and G1 = Gamma(a-c+1)/Gamma(-c).

S2 is catalogued exactly as quoted even though it mixes psi^3 against
psi^2 and fails systematically at large x; it and its homogenized
variant S2H are therefore advisory (``gating=False``): their failures
are reported but do not gate a verification run.  P4U is gating on
a > 1 only; the 0 < a <= 1 probe is a separate advisory entry.

The eight dominance claims D1..D8 state where one closed-form bound is
tighter than its competitor; ``check_dominance`` compares the two bound
values at points satisfying the claimed threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy.special import gammaln

from .kernel import (EPS, FunctionValue, ParameterPoint, RegionError, psi)
from .turanians import TuranianKind, turanian, turanian_ratio

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

Evaluator = Callable[[ParameterPoint, float], FunctionValue]


@dataclass(frozen=True)
class BoundSpec:
    id: str
    target: str          # ratio_both | ratio_first | ratio_second | raw_psi_relation
    side: str            # lower | upper (side the closed-form bound sits on)
    region: Callable[[float, float], bool]
    region_text: str
    lhs: Evaluator
    rhs: Evaluator
    anchor: str
    gating: bool = True
    bound_fn: Callable[[float, float, float], float] | None = None


@dataclass(frozen=True)
class VerificationRecord:
    bound_id: str
    point: ParameterPoint
    lhs: FunctionValue
    rhs: FunctionValue
    margin: float
    budget: float
    status: str
    anchor: str


def _status(margin: float, budget: float) -> str:
    if margin > budget:
        return PASS
    if margin < -budget:
        return FAIL
    return INCONCLUSIVE


# --- evaluator factories ---------------------------------------------------

def _exact(fn):
    def ev(p: ParameterPoint, tol: float) -> FunctionValue:
        v = fn(p.a, p.c, p.x)
        return FunctionValue(v, 4.0 * EPS * abs(v), "closed_form")
    return ev


def _ratio(kind: TuranianKind):
    def ev(p: ParameterPoint, tol: float) -> FunctionValue:
        return turanian_ratio(kind, p, tol)
    return ev


def _turanian(kind: TuranianKind):
    def ev(p: ParameterPoint, tol: float) -> FunctionValue:
        return turanian(kind, p, tol)
    return ev


def _psi_at(da: float, dc: float):
    def ev(p: ParameterPoint, tol: float) -> FunctionValue:
        return psi(ParameterPoint(p.a + da, p.c + dc, p.x), tol)
    return ev


def _scaled_psi(scale_fn, da: float = 0.0, dc: float = 0.0):
    def ev(p: ParameterPoint, tol: float) -> FunctionValue:
        f = psi(ParameterPoint(p.a + da, p.c + dc, p.x), tol)
        s = scale_fn(p.a, p.c, p.x)
        return FunctionValue(s * f.value, abs(s) * f.abs_error, f.method)
    return ev


def _lg_ratio(u: float, v: float) -> float:
    # log of Gamma(u)/Gamma(v); all I-family arguments are positive in-region
    return float(gammaln(u) - gammaln(v))


def _gamma_power(shift: int, which: str, expo_fn):
    """(Gamma(a-c+1)/Gamma(k-c) * psi(a+shift, c+shift, x))^expo with
    which = '1-c' (k=1) or '-c' (k=0)."""
    def ev(p: ParameterPoint, tol: float) -> FunctionValue:
        f = psi(ParameterPoint(p.a + shift, p.c + shift, p.x), tol)
        base = p.a - p.c + 1.0
        lg = _lg_ratio(base, (1.0 - p.c) if which == "1-c" else (-p.c))
        expo = expo_fn(p.a, p.c)
        val = math.exp(expo * (lg + math.log(f.value)))
        err = abs(val * expo) * (f.abs_error / abs(f.value)) + 4.0 * EPS * abs(val)
        return FunctionValue(val, err, f.method)
    return ev


def _s_product(shifts, x_power: float = -1.0):
    """-(1/x) * product of psi at the given (da, dc) shifts."""
    def ev(p: ParameterPoint, tol: float) -> FunctionValue:
        vals = [psi(ParameterPoint(p.a + da, p.c + dc, p.x), tol)
                for (da, dc) in shifts]
        prod = 1.0
        for f in vals:
            prod *= f.value
        rel = sum(f.abs_error / abs(f.value) for f in vals)
        scale = -p.x ** x_power
        return FunctionValue(scale * prod, abs(scale * prod) * (rel + 4.0 * EPS),
                             vals[0].method)
    return ev


def _i2_rhs(p: ParameterPoint, tol: float) -> FunctionValue:
    f0 = psi(p, tol)
    fp = psi(ParameterPoint(p.a + 1.0, p.c + 1.0, p.x), tol)
    q = f0.value / fp.value
    eq = f0.abs_error / abs(fp.value) + abs(f0.value) * fp.abs_error / fp.value ** 2
    pw = _gamma_power(0, "1-c", lambda a, c: 1.0 / a)(p, tol)
    val = q - pw.value / p.c
    return FunctionValue(val, eq + pw.abs_error / abs(p.c) + 4.0 * EPS * abs(val),
                         f0.method)


# --- the catalog -----------------------------------------------------------

BOTH, FIRST, SECOND = (TuranianKind.BOTH_SHIFT, TuranianKind.FIRST_SHIFT,
                       TuranianKind.SECOND_SHIFT)

CATALOG: dict[str, BoundSpec] = {}


def _add(spec: BoundSpec):
    CATALOG[spec.id] = spec


_add(BoundSpec("T1L", "ratio_both", "lower",
               lambda a, c: a > 0.0 and c < 1.0, "a>0, c<1, x>0",
               _exact(lambda a, c, x: (c - a - 1.0) / (x * x)), _ratio(BOTH),
               "both-shift lower bound (c-a-1)/x^2, sharp as x->inf",
               bound_fn=lambda a, c, x: (c - a - 1.0) / (x * x)))
_add(BoundSpec("T1U", "ratio_both", "upper",
               lambda a, c: a > 1.0 and c < -1.0, "a>1, c<-1, x>0",
               _ratio(BOTH),
               _exact(lambda a, c, x: 1.0 / c + 2.0 * x * (c - a) / (c * c * (c + 1.0))),
               "both-shift upper bound 1/c + 2x(c-a)/(c^2(c+1)), sharp as x->0",
               bound_fn=lambda a, c, x: 1.0 / c + 2.0 * x * (c - a) / (c * c * (c + 1.0))))
_add(BoundSpec("T2L", "ratio_both", "lower",
               lambda a, c: a > 0.0 and c < 1.0, "a>0, c<1, x>0",
               _exact(lambda a, c, x: -0.5 / x), _ratio(BOTH),
               "both-shift lower bound -1/(2x), sharp as x->inf",
               bound_fn=lambda a, c, x: -0.5 / x))
_add(BoundSpec("P1L", "ratio_both", "lower",
               lambda a, c: a > 0.0 > c, "a>0>c, x>0",
               _exact(lambda a, c, x: 1.0 / c), _ratio(BOTH),
               "both-shift prior lower bound 1/c",
               bound_fn=lambda a, c, x: 1.0 / c))
_add(BoundSpec("P1U", "ratio_both", "upper",
               lambda a, c: a > 0.0 and c < 1.0, "a>0, c<1, x>0",
               _ratio(BOTH), _exact(lambda a, c, x: 0.0),
               "both-shift prior upper bound 0 (negativity)",
               bound_fn=lambda a, c, x: 0.0))
_add(BoundSpec("T3L", "ratio_first", "lower",
               lambda a, c: a > 0.0 > c, "a>0>c, x>0",
               _exact(lambda a, c, x: (1.0 + 0.5 * x / c) / (1.0 + a - c)),
               _ratio(FIRST),
               "first-shift lower bound (1 + x/(2c))/(1+a-c), sharp as x->0",
               bound_fn=lambda a, c, x: (1.0 + 0.5 * x / c) / (1.0 + a - c)))
_add(BoundSpec("T3U", "ratio_first", "upper",
               lambda a, c: a > 0.0 and c < 1.0, "a>0, c<1, x>0",
               _ratio(FIRST), _exact(lambda a, c, x: 2.0 / x),
               "first-shift upper bound 2/x, sharp as x->inf",
               bound_fn=lambda a, c, x: 2.0 / x))
_add(BoundSpec("T5L", "ratio_first", "lower",
               lambda a, c: a > 1.0 and c < -1.0, "a>1, c<-1, x>0",
               _exact(lambda a, c, x:
                      (1.0 - (c - a) * x * x / (c * c * (c + 1.0))) / (1.0 + a - c)),
               _ratio(FIRST),
               "first-shift quadratic lower bound, sharp as x->0",
               bound_fn=lambda a, c, x:
                   (1.0 - (c - a) * x * x / (c * c * (c + 1.0))) / (1.0 + a - c)))
_add(BoundSpec("P2L", "ratio_first", "lower",
               lambda a, c: a > 0.0 and c < 1.0, "a>0, c<1, x>0",
               _exact(lambda a, c, x: 0.0), _ratio(FIRST),
               "first-shift prior lower bound 0 (positivity)",
               bound_fn=lambda a, c, x: 0.0))
_add(BoundSpec("P2U", "ratio_first", "upper",
               lambda a, c: a > 1.0 and c < 1.0, "a>1>c, x>0",
               _ratio(FIRST), _exact(lambda a, c, x: 1.0 / (1.0 + a - c)),
               "first-shift prior upper bound 1/(1+a-c)",
               bound_fn=lambda a, c, x: 1.0 / (1.0 + a - c)))
_add(BoundSpec("T6L", "ratio_second", "lower",
               lambda a, c: a > 0.0 and c < 1.0, "a>0, c<1, x>0",
               _exact(lambda a, c, x: -a / (x * x)), _ratio(SECOND),
               "second-shift lower bound -a/x^2, sharp as x->inf",
               bound_fn=lambda a, c, x: -a / (x * x)))
_add(BoundSpec("T6U", "ratio_second", "upper",
               lambda a, c: a > 1.0 and c < -1.0, "a>1, c<-1, x>0",
               _ratio(SECOND),
               _exact(lambda a, c, x: a / (c * (1.0 + a - c))
                      * (1.0 + 2.0 * x * (c - a) / (c * (c + 1.0)))),
               "second-shift upper bound with linear correction, sharp as x->0",
               bound_fn=lambda a, c, x: a / (c * (1.0 + a - c))
                   * (1.0 + 2.0 * x * (c - a) / (c * (c + 1.0)))))
_add(BoundSpec("P3L", "ratio_second", "lower",
               lambda a, c: a > 0.0 > c, "a>0>c, x>0",
               _exact(lambda a, c, x: a / (c * (1.0 + a - c))), _ratio(SECOND),
               "second-shift prior lower bound a/(c(1+a-c))",
               bound_fn=lambda a, c, x: a / (c * (1.0 + a - c))))
_add(BoundSpec("P3U", "ratio_second", "upper",
               lambda a, c: a > 0.0, "a>0, any c, x>0",
               _ratio(SECOND), _exact(lambda a, c, x: 0.0),
               "second-shift prior upper bound 0 (negativity)",
               bound_fn=lambda a, c, x: 0.0))
_add(BoundSpec("P4U", "ratio_both", "upper",
               lambda a, c: a > 1.0, "a>1, any c, x>0",
               _ratio(BOTH), _exact(lambda a, c, x: 1.0 / a),
               "both-shift upper bound 1/a",
               bound_fn=lambda a, c, x: 1.0 / a))
_add(BoundSpec("P4U_probe", "ratio_both", "upper",
               lambda a, c: 0.0 < a <= 1.0, "0<a<=1, any c, x>0",
               _ratio(BOTH), _exact(lambda a, c, x: 1.0 / a),
               "both-shift upper bound 1/a probed outside its proven region",
               gating=False,
               bound_fn=lambda a, c, x: 1.0 / a))
_add(BoundSpec("S1", "raw_psi_relation", "lower",
               lambda a, c: a > 0.0 and c < a + 2.0, "a>0, c<a+2, x>0",
               _s_product(((0.0, 0.0), (0.0, -1.0))), _turanian(SECOND),
               "second-shift Turanian >= -(1/x) psi(a,c,x) psi(a,c-1,x)"))
_add(BoundSpec("S2", "raw_psi_relation", "lower",
               lambda a, c: a > 1.0 and c < a + 1.0, "a>1, c<a+1, x>0",
               _s_product(((0.0, 0.0), (0.0, 0.0), (1.0, 1.0))), _turanian(SECOND),
               "second-shift Turanian >= -(1/x) psi^2(a,c,x) psi(a+1,c+1,x), "
               "checked exactly as quoted (inhomogeneous; fails at large x)",
               gating=False))
_add(BoundSpec("S2H", "raw_psi_relation", "lower",
               lambda a, c: a > 1.0 and c < a + 1.0, "a>1, c<a+1, x>0",
               _s_product(((0.0, 0.0), (1.0, 1.0))), _turanian(SECOND),
               "homogenized variant of S2 with a single psi(a,c,x) factor",
               gating=False))
_add(BoundSpec("I1", "raw_psi_relation", "lower",
               lambda a, c: a > 0.0 > c, "a>0>c, x>0",
               _gamma_power(1, "-c", lambda a, c: 1.0 / (a + 1.0)),
               _gamma_power(0, "1-c", lambda a, c: 1.0 / a),
               "Gamma-normalized psi^(1/a) dominates the (a+1)-shifted power"))
_add(BoundSpec("I2", "raw_psi_relation", "lower",
               lambda a, c: a > 0.0 > c, "a>0>c, x>0",
               _exact(lambda a, c, x: 2.0), _i2_rhs,
               "psi ratio minus (1/c)-scaled power exceeds 2"))
_add(BoundSpec("I3", "raw_psi_relation", "lower",
               lambda a, c: a > 0.0 and c < -1.0, "a>0, c<-1, x>0",
               _gamma_power(0, "1-c", lambda a, c: c / (a * (c + 1.0))),
               _gamma_power(1, "-c", lambda a, c: 1.0 / (a + 1.0)),
               "power-mean comparison with exponent c/(a(c+1))"))
_add(BoundSpec("I4", "raw_psi_relation", "lower",
               lambda a, c: a > 0.0 > c, "a>0>c, x>0",
               _psi_at(1.0, 1.0), _scaled_psi(lambda a, c, x: -1.0 / c),
               "psi(a+1,c+1,x) < -(1/c) psi(a,c,x)"))


def check_bound(bound_id: str, p: ParameterPoint,
                tol: float = 1e-12) -> VerificationRecord:
    """Verify one catalogued inequality at one point.

    Raises :class:`RegionError` outside the bound's region (distinct from
    a ``fail`` status).
    """
    if bound_id not in CATALOG:
        raise KeyError(f"unknown bound id {bound_id!r}")
    spec = CATALOG[bound_id]
    if not spec.region(p.a, p.c):
        raise RegionError(
            f"point (a={p.a}, c={p.c}) outside region of {bound_id} "
            f"({spec.region_text})")
    lhs = spec.lhs(p, tol)
    rhs = spec.rhs(p, tol)
    margin = rhs.value - lhs.value
    budget = lhs.abs_error + rhs.abs_error + EPS * (abs(lhs.value) + abs(rhs.value))
    return VerificationRecord(bound_id, p, lhs, rhs, margin, budget,
                              _status(margin, budget), spec.anchor)


# --- dominance claims ------------------------------------------------------

@dataclass(frozen=True)
class DominanceSpec:
    id: str
    claimed: str          # id of the bound claimed tighter
    other: str
    threshold: Callable[[float, float, float], bool]
    threshold_text: str
    anchor: str


DOMINANCE: dict[str, DominanceSpec] = {}


def _add_dom(spec: DominanceSpec):
    DOMINANCE[spec.id] = spec


_add_dom(DominanceSpec("D1", "T1L", "P1L",
                       lambda a, c, x: x * x > c * (c - a - 1.0),
                       "x^2 > c(c-a-1)",
                       "T1L tighter than P1L for x^2 > c(c-a-1)"))
_add_dom(DominanceSpec("D2", "T1U", "P1U",
                       lambda a, c, x: x < c * (c + 1.0) / (2.0 * (a - c)),
                       "x < c(c+1)/(2(a-c))",
                       "T1U tighter than P1U for x < c(c+1)/(2(a-c))"))
_add_dom(DominanceSpec("D3", "T2L", "P1L",
                       lambda a, c, x: x > -0.5 * c,
                       "x > -c/2",
                       "T2L tighter than P1L for x > -c/2"))
_add_dom(DominanceSpec("D4", "T3L", "P2L",
                       lambda a, c, x: x < -1.5 * c,
                       "x < -3c/2",
                       "T3L tighter than P2L for x < -3c/2"))
_add_dom(DominanceSpec("D5", "T3U", "P2U",
                       lambda a, c, x: x > 2.0 * (1.0 + a - c),
                       "x > 2(1+a-c)",
                       "T3U tighter than P2U for x > 2(1+a-c)"))
_add_dom(DominanceSpec("D6", "T5L", "P2L",
                       lambda a, c, x: x * x < c * c * (c + 1.0) / (c - a),
                       "x^2 < c^2(c+1)/(c-a)",
                       "T5L tighter than P2L for x^2 < c^2(c+1)/(c-a)"))
_add_dom(DominanceSpec("D7", "T6L", "P3L",
                       lambda a, c, x: x * x > c * (c - a - 1.0),
                       "x^2 > c(c-a-1)",
                       "T6L tighter than P3L for x^2 > c(c-a-1)"))
_add_dom(DominanceSpec("D8", "T6U", "P3U",
                       lambda a, c, x: x < c * (c + 1.0) / (2.0 * (a - c)),
                       "x < c(c+1)/(2(a-c))",
                       "T6U tighter than P3U for x < c(c+1)/(2(a-c))"))


def dominance_applicable(dom_id: str, p: ParameterPoint) -> bool:
    """True when p lies in both bounds' regions and meets the threshold."""
    spec = DOMINANCE[dom_id]
    claimed, other = CATALOG[spec.claimed], CATALOG[spec.other]
    return (claimed.region(p.a, p.c) and other.region(p.a, p.c)
            and spec.threshold(p.a, p.c, p.x))


def check_dominance(dom_id: str, p: ParameterPoint) -> VerificationRecord:
    """Compare the two closed-form bound values where the claim applies.

    For lower bounds the claimed one must be the larger, for upper bounds
    the smaller.  Points outside either region or failing the threshold
    raise :class:`RegionError`.
    """
    if dom_id not in DOMINANCE:
        raise KeyError(f"unknown dominance id {dom_id!r}")
    spec = DOMINANCE[dom_id]
    claimed, other = CATALOG[spec.claimed], CATALOG[spec.other]
    if not (claimed.region(p.a, p.c) and other.region(p.a, p.c)):
        raise RegionError(f"point outside joint region of {dom_id}")
    if not spec.threshold(p.a, p.c, p.x):
        raise RegionError(
            f"threshold {spec.threshold_text} not met at "
            f"(a={p.a}, c={p.c}, x={p.x})")
    bc = claimed.bound_fn(p.a, p.c, p.x)
    bo = other.bound_fn(p.a, p.c, p.x)
    margin = (bc - bo) if claimed.side == "lower" else (bo - bc)
    budget = 8.0 * EPS * (abs(bc) + abs(bo))
    fv_c = FunctionValue(bc, 4.0 * EPS * abs(bc), "closed_form")
    fv_o = FunctionValue(bo, 4.0 * EPS * abs(bo), "closed_form")
    return VerificationRecord(dom_id, p, fv_c, fv_o, margin, budget,
                              _status(margin, budget), spec.anchor)


# --- auxiliary monotone log-ratios -----------------------------------------

_AUX_REGIONS = {
    "f": (lambda a, c: a > 0.0 > c, "a>0>c"),
    "g": (lambda a, c: a > 0.0 and c < -1.0, "a>0, c<-1"),
    "h": (lambda a, c: a > 0.0, "a>0"),
}


def auxiliary_log_ratio(which: str, a: float, c: float, x: float,
                        tol: float = 1e-12) -> FunctionValue:
    """The log-ratio combinations whose monotonicity drives the I-family:

        f = (1/a) log psi - (1/(a+1)) log psi(a+1,c+1,.)        increasing
        g = (c/(a(c+1))) log psi - (1/(a+1)) log psi(a+1,c+1,.) decreasing
        h = log psi - log psi(a+1,c+1,.)                        increasing
    """
    if which not in _AUX_REGIONS:
        raise KeyError(f"unknown auxiliary function {which!r}")
    region, text = _AUX_REGIONS[which]
    if not region(a, c):
        raise RegionError(f"auxiliary {which} requires {text}, got a={a}, c={c}")
    f0 = psi(ParameterPoint(a, c, x), tol)
    fp = psi(ParameterPoint(a + 1.0, c + 1.0, x), tol)
    if f0.value <= 0.0 or fp.value <= 0.0:
        raise RegionError("psi must be positive for the log-ratios (a > 0)")
    l0, lp = math.log(f0.value), math.log(fp.value)
    e0, ep = f0.abs_error / f0.value, fp.abs_error / fp.value
    if which == "f":
        w0, wp = 1.0 / a, 1.0 / (a + 1.0)
    elif which == "g":
        w0, wp = c / (a * (c + 1.0)), 1.0 / (a + 1.0)
    else:
        w0, wp = 1.0, 1.0
    value = w0 * l0 - wp * lp
    err = abs(w0) * e0 + abs(wp) * ep + EPS * (abs(w0 * l0) + abs(wp * lp))
    return FunctionValue(value, err, f0.method)


AUX_MONOTONE_SIGN = {"f": +1.0, "g": -1.0, "h": +1.0}


def catalog_document() -> list[dict]:
    """The catalog as a structured document for reports and the CLI."""
    out = []
    for spec in CATALOG.values():
        out.append({
            "id": spec.id,
            "target": spec.target,
            "side": spec.side,
            "region": spec.region_text,
            "anchor": spec.anchor,
            "gating": spec.gating,
        })
    return out
