"""Truncated power series with exact RatFun coefficients.

A series is a plain list of RatFun over a shared coefficient ring; entry i is
the coefficient of t^i.  List length is the truncation depth: every operation
returns a result valid to the depth its inputs support.  SeriesPrefix packages
a series (or a value table, for shift equations) together with its expansion
point, and check_annihilates tests a LinearOperatorEq against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import InsufficientDepth, PoleAtExpansionPoint
from .operator import DIFF, SHIFT, LinearOperatorEq
from .poly import MultiPoly, RatFun, change_ring, ratfun_change_ring


def union_ring(*var_tuples) -> tuple:
    names = set()
    for vs in var_tuples:
        names.update(vs)
    return tuple(sorted(names))


def s_const(vars: tuple, c, depth: int) -> List[RatFun]:
    out = [RatFun.from_const(vars, 0)] * depth
    if depth:
        out[0] = RatFun.from_const(vars, c)
    return out


def s_var(vars: tuple, depth: int) -> List[RatFun]:
    """The series t itself."""
    out = [RatFun.from_const(vars, 0)] * depth
    if depth > 1:
        out[1] = RatFun.from_const(vars, 1)
    return out


def s_add(a: Sequence[RatFun], b: Sequence[RatFun]) -> List[RatFun]:
    n = min(len(a), len(b))
    return [a[i] + b[i] for i in range(n)]


def s_sub(a: Sequence[RatFun], b: Sequence[RatFun]) -> List[RatFun]:
    n = min(len(a), len(b))
    return [a[i] - b[i] for i in range(n)]


def s_neg(a: Sequence[RatFun]) -> List[RatFun]:
    return [-c for c in a]


def s_scale(a: Sequence[RatFun], c) -> List[RatFun]:
    return [x * c for x in a]


def s_mul(a: Sequence[RatFun], b: Sequence[RatFun], depth: int = None) -> List[RatFun]:
    n = min(len(a), len(b))
    if depth is not None:
        n = min(n, depth)
    if n <= 0:
        return []
    zero = a[0] - a[0] if a else RatFun.from_const((), 0)
    out = [zero] * n
    for i, ai in enumerate(a):
        if i >= n or ai.is_zero():
            continue
        for j, bj in enumerate(b):
            if i + j >= n:
                break
            if bj.is_zero():
                continue
            out[i + j] = out[i + j] + ai * bj
    return out


def s_inverse(a: Sequence[RatFun]) -> List[RatFun]:
    if not a or a[0].is_zero():
        raise PoleAtExpansionPoint("series has zero constant term, cannot invert")
    inv0 = a[0].inverse()
    out = [inv0]
    for n in range(1, len(a)):
        acc = None
        for i in range(1, n + 1):
            if i < len(a) and not a[i].is_zero():
                t = a[i] * out[n - i]
                acc = t if acc is None else acc + t
        out.append(-acc * inv0 if acc is not None else a[0] - a[0])
    return out


def s_div(a: Sequence[RatFun], b: Sequence[RatFun]) -> List[RatFun]:
    return s_mul(a, s_inverse(b))


def s_derivative(a: Sequence[RatFun]) -> List[RatFun]:
    return [a[i + 1] * (i + 1) for i in range(len(a) - 1)]


def s_integrate(a: Sequence[RatFun], constant=None) -> List[RatFun]:
    vars = a[0].vars if a else ()
    c0 = constant if constant is not None else RatFun.from_const(vars, 0)
    return [c0] + [a[i] * Fraction(1, i + 1) for i in range(len(a))]


def s_compose(outer: Sequence[RatFun], inner: Sequence[RatFun]) -> List[RatFun]:
    """outer(inner(t)); inner must have zero constant term."""
    if inner and not inner[0].is_zero():
        raise ValueError("composition needs zero constant term in inner series")
    if not outer:
        return []
    n = min(len(outer), len(inner)) if inner else len(outer)
    vars = outer[0].vars
    acc = s_const(vars, 0, n)
    for i in range(len(outer) - 1, -1, -1):
        acc = s_mul(acc, inner, n)
        acc = acc + [RatFun.from_const(vars, 0)] * (n - len(acc))
        acc[0] = acc[0] + outer[i]
    return acc


def _binom_frac(q: Fraction, m: int) -> Fraction:
    out = Fraction(1)
    for i in range(m):
        out *= (q - i) / (i + 1)
    return out


def s_binomial(u: Sequence[RatFun], q: Fraction) -> List[RatFun]:
    """(1 + u)^q for a series u with zero constant term, q rational."""
    if u and not u[0].is_zero():
        raise ValueError("binomial series needs zero constant term")
    n = len(u)
    vars = u[0].vars if u else ()
    acc = s_const(vars, 0, n)
    upow = s_const(vars, 1, n)
    for m in range(n):
        c = _binom_frac(q, m)
        if c:
            acc = s_add(acc, s_scale(upow, c))
        if m + 1 < n:
            upow = s_mul(upow, u, n)
    return acc


def s_pow_int(a: Sequence[RatFun], k: int) -> List[RatFun]:
    if k < 0:
        return s_pow_int(s_inverse(a), -k)
    vars = a[0].vars if a else ()
    out = s_const(vars, 1, len(a))
    base = list(a)
    while k:
        if k & 1:
            out = s_mul(out, base, len(a))
        k >>= 1
        if k:
            base = s_mul(base, base, len(a))
    return out


def series_of_ratfun(rf: RatFun, var: str, point, depth: int, coeff_vars: tuple) -> List[RatFun]:
    """Expand a rational function of var about var = point to given depth.

    Coefficients land in RatFun over coeff_vars (which must cover the other
    variables of rf).  Raises PoleAtExpansionPoint when the denominator
    vanishes identically at the point.
    """
    shifted = rf.shift(var, Fraction(point))
    num_by = shifted.num.as_univariate(var)
    den_by = shifted.den.as_univariate(var)

    def tolist(by_power):
        out = [RatFun.from_const(coeff_vars, 0)] * depth
        for p, coeff in by_power.items():
            if p < depth:
                out[p] = RatFun.from_poly(change_ring(coeff, coeff_vars))
        return out

    num_s = tolist(num_by)
    den_s = tolist(den_by)
    if not den_s or den_s[0].is_zero():
        raise PoleAtExpansionPoint(
            f"denominator of coefficient vanishes at {var} = {point}")
    return s_mul(num_s, s_inverse(den_s))


@dataclass(frozen=True)
class SeriesPrefix:
    """Exact local data for one function or sequence.

    kind DIFF: coeffs[i] is the Taylor coefficient of (var - point)^i.
    kind SHIFT: coeffs[i] is the value at var = point + i (point integral).
    Coefficients are RatFun over a ring that excludes var; extra names in the
    ring are free parameters or opaque constants.
    """

    variable: str
    kind: str
    point: Fraction
    coeffs: Tuple[RatFun, ...]

    @property
    def depth(self) -> int:
        return len(self.coeffs)

    @property
    def coeff_vars(self) -> tuple:
        return self.coeffs[0].vars if self.coeffs else ()

    def value(self, i: int) -> RatFun:
        return self.coeffs[i]

    def with_depth(self, d: int) -> "SeriesPrefix":
        if d > len(self.coeffs):
            raise InsufficientDepth(f"prefix holds {len(self.coeffs)} terms, need {d}")
        return SeriesPrefix(self.variable, self.kind, self.point, self.coeffs[:d])


def check_annihilates(eq: LinearOperatorEq, prefix: SeriesPrefix, min_checks: int = 1):
    """Test whether the equation annihilates the series/table prefix.

    Returns (ok, residuals).  For a differential equation the residuals are
    the first depth - order series coefficients of sum_i c_i f^(i) about the
    expansion point; for a shift equation they are the pointwise residuals
    sum_i c_i(n) a(n+i) at each usable integer point of the table.
    """
    if eq.variable != prefix.variable or eq.kind != prefix.kind:
        raise ValueError("equation and prefix disagree on variable or kind")
    if eq.is_zero():
        return True, []
    r = eq.order
    cv = union_ring(prefix.coeff_vars,
                    tuple(v for v in eq.ring_vars if v != eq.variable))
    coeffs = [ratfun_change_ring(c, cv) for c in prefix.coeffs]

    if eq.kind == DIFF:
        n_out = prefix.depth - r
        if n_out < min_checks:
            raise InsufficientDepth(
                f"need at least {r + min_checks} series terms, have {prefix.depth}")
        acc = s_const(cv, 0, n_out)
        ds = list(coeffs)
        for i in range(r + 1):
            ci = eq.coeff(i)
            if not ci.is_zero():
                ci_s = series_of_ratfun(ci, eq.variable, prefix.point, n_out, cv)
                acc = s_add(acc, s_mul(ci_s, ds, n_out))
            if i < r:
                ds = s_derivative(ds)
        residuals = acc
    else:
        n_out = prefix.depth - r
        if n_out < min_checks:
            raise InsufficientDepth(
                f"need at least {r + min_checks} table values, have {prefix.depth}")
        residuals = []
        for j in range(n_out):
            n_val = Fraction(prefix.point) + j
            total = RatFun.from_const(cv, 0)
            usable = True
            for i in range(r + 1):
                ci = eq.coeff(i)
                if ci.is_zero():
                    continue
                try:
                    ci_at = ci.subs({eq.variable: n_val})
                except ZeroDivisionError:
                    # coefficient has a pole at this integer point; skip it
                    usable = False
                    break
                total = total + ratfun_change_ring(ci_at, cv) * coeffs[j + i]
            if usable:
                residuals.append(total)
    ok = all(res.is_zero() for res in residuals)
    return ok, residuals
