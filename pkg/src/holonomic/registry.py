"""Registry of primitive functions the derivation engine understands.

Each PrimitiveEntry bundles, for one named function:
  de_template  -- differential equation satisfied as a function of its
                  continuous argument (index treated as a parameter),
  re_template  -- recurrence satisfied as a sequence in its index argument,
  value_fn     -- exact evaluation at an integer index (polynomial families),
  init_derivs  -- local data for series expansion: the first order-many
                  derivative values at a point, as Fractions or named opaque
                  constants ("sin@y" denotes the number sin(y)); the equation
                  supplies every later coefficient,
  supported    -- False marks a function the engine recognizes but cannot
                  handle; derivation then reports that the extended algorithm
                  is required instead of silently misbehaving.

registry_default() builds a fresh name -> PrimitiveEntry dict; callers may
register additional entries on their own copy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import ExtendedAlgorithmRequired
from .expr import NUM
from .operator import DIFF, SHIFT, LinearOperatorEq
from .poly import MultiPoly, RatFun


@dataclass
class PrimitiveEntry:
    name: str
    arity: int
    supported: bool = True
    index_pos: Optional[int] = None
    de_template: Optional[Callable] = None
    re_template: Optional[Callable] = None
    value_fn: Optional[Callable] = None
    init_derivs: Optional[Callable] = None


def _polys_eq(var, kind, ring, polys):
    return LinearOperatorEq.from_polys(var, kind, polys)


def perfect_sqrt(f: Fraction) -> Optional[Fraction]:
    if f < 0:
        return None
    a = math.isqrt(f.numerator)
    b = math.isqrt(f.denominator)
    if a * a == f.numerator and b * b == f.denominator:
        return Fraction(a, b)
    return None


def _point_is(point_rf: RatFun, c) -> bool:
    return point_rf.is_constant() and point_rf.constant_value() == c


def _rational_point(point_rf: RatFun) -> Optional[Fraction]:
    if point_rf.is_constant():
        return point_rf.constant_value()
    return None


# -- differential templates --------------------------------------------------


def _de_exp(var, ring, idx, extra):
    one = MultiPoly.const(ring, 1)
    return _polys_eq(var, DIFF, ring, [-one, one])


def _de_sin_cos(var, ring, idx, extra):
    one = MultiPoly.const(ring, 1)
    return _polys_eq(var, DIFF, ring, [one, MultiPoly.zero(ring), one])


def _de_arcsin(var, ring, idx, extra):
    x = MultiPoly.var(ring, var)
    one = MultiPoly.const(ring, 1)
    return _polys_eq(var, DIFF, ring, [MultiPoly.zero(ring), -x, one - x * x])


def _de_arctan(var, ring, idx, extra):
    x = MultiPoly.var(ring, var)
    one = MultiPoly.const(ring, 1)
    return _polys_eq(var, DIFF, ring, [MultiPoly.zero(ring), x * 2, one + x * x])


def _de_airyai(var, ring, idx, extra):
    x = MultiPoly.var(ring, var)
    one = MultiPoly.const(ring, 1)
    return _polys_eq(var, DIFF, ring, [-x, MultiPoly.zero(ring), one])


def _de_legendrep(var, ring, nu: RatFun, extra):
    x = RatFun.var(ring, var)
    one = RatFun.from_const(ring, 1)
    return LinearOperatorEq(var, DIFF, [-(nu * (nu + 1)), x * 2, x * x - one])


def _de_hermiteh(var, ring, nu: RatFun, extra):
    x = RatFun.var(ring, var)
    one = RatFun.from_const(ring, 1)
    return LinearOperatorEq(var, DIFF, [nu * 2, -(x * 2), one])


def _check_gegenbauer_lambda(extra):
    if len(extra) != 1 or extra[0].kind != NUM or extra[0].value != Fraction(-1, 2):
        raise ExtendedAlgorithmRequired(
            "ultraspherical weight other than -1/2 requires the extended algorithm")


def _de_gegenbauerc(var, ring, nu: RatFun, extra):
    _check_gegenbauer_lambda(extra)
    x = RatFun.var(ring, var)
    one = RatFun.from_const(ring, 1)
    return LinearOperatorEq(var, DIFF, [nu - nu * nu,
                                        RatFun.from_const(ring, 0),
                                        x * x - one])


# -- recurrence templates -----------------------------------------------------


def _re_legendrep(var, ring, params):
    x = params[0]
    n = RatFun.var(ring, var)
    return LinearOperatorEq(var, SHIFT, [n + 1, -((n * 2 + 3) * x), n + 2])


def _re_hermiteh(var, ring, params):
    x = params[0]
    n = RatFun.var(ring, var)
    one = RatFun.from_const(ring, 1)
    return LinearOperatorEq(var, SHIFT, [(n + 1) * 2, -(x * 2), one])


def _re_gegenbauerc(var, ring, params):
    # params = (lambda, x) as rational functions
    if not (params[0].is_constant() and params[0].constant_value() == Fraction(-1, 2)):
        raise ExtendedAlgorithmRequired(
            "ultraspherical weight other than -1/2 requires the extended algorithm")
    x = params[-1]
    n = RatFun.var(ring, var)
    return LinearOperatorEq(var, SHIFT, [n - 1, -((n * 2 + 1) * x), n + 2])


# -- exact polynomial values ---------------------------------------------------


def _three_term_values(k: int, ring, x: RatFun, first, second, recur):
    """Evaluate an orthogonal-family polynomial by its three-term recurrence.

    recur(m, x, pm, pm1) returns p_(m+1) from p_m and p_(m-1)."""
    if k < 0:
        return None
    p0 = RatFun.from_const(ring, first)
    if k == 0:
        return p0
    p1 = second(x)
    if k == 1:
        return p1
    for m in range(1, k):
        p0, p1 = p1, recur(m, x, p1, p0)
    return p1


def _value_legendrep(k, extra, ring, x):
    return _three_term_values(
        k, ring, x, 1, lambda t: t,
        lambda m, t, pm, pm1: (t * pm * (2 * m + 1) - pm1 * m) / (m + 1))


def _value_hermiteh(k, extra, ring, x):
    return _three_term_values(
        k, ring, x, 1, lambda t: t * 2,
        lambda m, t, pm, pm1: t * pm * 2 - pm1 * (2 * m))


def _value_gegenbauerc(k, extra, ring, x):
    _check_gegenbauer_lambda(extra)
    return _three_term_values(
        k, ring, x, 1, lambda t: -t,
        lambda m, t, pm, pm1: (t * pm * (2 * m - 1) - pm1 * (m - 2)) / (m + 1))


# -- series initial data -----------------------------------------------------------


def _init_exp(point_rf, point_text):
    if _point_is(point_rf, 0):
        return [Fraction(1)]
    return [f"exp@{point_text}"]


def _init_sin(point_rf, point_text):
    if _point_is(point_rf, 0):
        return [Fraction(0), Fraction(1)]
    return [f"sin@{point_text}", f"cos@{point_text}"]


def _init_cos(point_rf, point_text):
    if _point_is(point_rf, 0):
        return [Fraction(1), Fraction(0)]
    return [f"cos@{point_text}", (Fraction(-1), f"sin@{point_text}")]


def _init_arcsin(point_rf, point_text):
    if _point_is(point_rf, 0):
        return [Fraction(0), Fraction(1)]
    c = _rational_point(point_rf)
    if c is not None and abs(c) < 1:
        s = perfect_sqrt(1 - c * c)
        if s is not None:
            return [f"arcsin@{point_text}", 1 / s]
    return [f"arcsin@{point_text}", f"rsqrt@1-({point_text})^2"]


def _init_arctan(point_rf, point_text):
    if _point_is(point_rf, 0):
        return [Fraction(0), Fraction(1)]
    c = _rational_point(point_rf)
    if c is not None:
        return [f"arctan@{point_text}", 1 / (1 + c * c)]
    return [f"arctan@{point_text}", f"rpoly@1+({point_text})^2"]


def _init_airyai(point_rf, point_text):
    return [f"airyai@{point_text}", f"airyai'@{point_text}"]


# -- the default table --------------------------------------------------


def registry_default() -> dict:
    entries = [
        PrimitiveEntry("exp", 1, de_template=_de_exp, init_derivs=_init_exp),
        PrimitiveEntry("sin", 1, de_template=_de_sin_cos, init_derivs=_init_sin),
        PrimitiveEntry("cos", 1, de_template=_de_sin_cos, init_derivs=_init_cos),
        PrimitiveEntry("arcsin", 1, de_template=_de_arcsin, init_derivs=_init_arcsin),
        PrimitiveEntry("arctan", 1, de_template=_de_arctan, init_derivs=_init_arctan),
        PrimitiveEntry("airyai", 1, de_template=_de_airyai, init_derivs=_init_airyai),
        PrimitiveEntry("legendrep", 2, index_pos=0,
                       de_template=_de_legendrep, re_template=_re_legendrep,
                       value_fn=_value_legendrep),
        PrimitiveEntry("hermiteh", 2, index_pos=0,
                       de_template=_de_hermiteh, re_template=_re_hermiteh,
                       value_fn=_value_hermiteh),
        PrimitiveEntry("gegenbauerc", 3, index_pos=0,
                       de_template=_de_gegenbauerc, re_template=_re_gegenbauerc,
                       value_fn=_value_gegenbauerc),
        # handled structurally by the derivation code; listed so lookups succeed
        PrimitiveEntry("factorial", 1),
        PrimitiveEntry("geompow", 2),
        # recognized but outside the implemented fragment
        PrimitiveEntry("hypergeometric2f1", 4, supported=False),
        PrimitiveEntry("hypergeometric1f1", 3, supported=False),
        PrimitiveEntry("besselj", 2, supported=False),
    ]
    return {e.name: e for e in entries}


def register(registry: dict, entry: PrimitiveEntry) -> dict:
    registry[entry.name] = entry
    return registry
