"""Independent exact evaluation used to validate derived equations.

Two oracles live here, deliberately built from definitions rather than from
the derivation machinery they check:

* series_of_expr expands an expression into an exact Taylor prefix.  Values
  the rationals cannot express (sin(y), Ai(0), sqrt(pi), ...) become opaque
  ring symbols with canonical names, so identities must hold coefficient by
  coefficient in Q(params, opaques).

* sequence_term evaluates a term at concrete integer indices, regularizing
  factorials of negative integers by one shared infinitesimal: m! for m < 0
  carries a simple pole, products track the pole order, and a surviving pole
  at extraction time raises EvaluationPole.  This gives the standard limit
  semantics for binomials at integer arguments.  brute_sum adds a window
  check asserting the summand vanishes just outside the stated support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import EvaluationPole, NonHolonomicInput, PoleAtExpansionPoint
from .expr import (ADD, CALL, INTG, MUL, NUM, POW, SUM, SYM, Expr, parse)
from .operator import DIFF, SHIFT, LinearOperatorEq
from .poly import MultiPoly, RatFun, ratfun_change_ring
from .series import (SeriesPrefix, s_add, s_binomial, s_compose, s_const,
                     s_inverse, s_mul, s_pow_int, s_scale,
                     series_of_ratfun, union_ring)

EXACT_ZERO_ORDER = 10 ** 9


# -- regularized values --------------------------------------------------------


@dataclass(frozen=True)
class EpsValue:
    """Leading term coeff * eps^order of a regularized quantity."""

    order: int
    coeff: RatFun

    @classmethod
    def exact_zero(cls, ring) -> "EpsValue":
        return cls(EXACT_ZERO_ORDER, RatFun.from_const(ring, 0))

    @classmethod
    def finite(cls, value: RatFun) -> "EpsValue":
        if value.is_zero():
            return cls(EXACT_ZERO_ORDER, value)
        return cls(0, value)

    def is_exact_zero(self) -> bool:
        return self.order >= EXACT_ZERO_ORDER

    def mul(self, other: "EpsValue") -> "EpsValue":
        if self.is_exact_zero() or other.is_exact_zero():
            return EpsValue(EXACT_ZERO_ORDER, self.coeff * 0)
        return EpsValue(self.order + other.order, self.coeff * other.coeff)

    def inverse(self) -> "EpsValue":
        if self.is_exact_zero():
            raise EvaluationPole("division by exact zero")
        return EpsValue(-self.order, self.coeff.inverse())

    def add(self, other: "EpsValue") -> "EpsValue":
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        if self.order < other.order:
            return self
        if other.order < self.order:
            return other
        s = self.coeff + other.coeff
        if s.is_zero():
            if self.order < 0:
                raise EvaluationPole(
                    "cancellation between poles; leading term undetermined")
            return EpsValue(EXACT_ZERO_ORDER, s)
        return EpsValue(self.order, s)

    def pow_int(self, k: int) -> "EpsValue":
        if k == 0:
            return EpsValue(0, self.coeff ** 0) if not self.coeff.is_zero() \
                else EpsValue(0, self.coeff + 1)
        if self.is_exact_zero():
            if k < 0:
                raise EvaluationPole("zero to a negative power")
            return self
        return EpsValue(self.order * k, self.coeff ** k)

    def extract(self) -> RatFun:
        """The value as eps -> 0."""
        if self.order > 0:
            return self.coeff * 0
        if self.order == 0:
            return self.coeff
        raise EvaluationPole("value has a pole")


def factorial_eps(m: int, ring) -> EpsValue:
    if m >= 0:
        return EpsValue(0, RatFun.from_const(ring, math.factorial(m)))
    j = -m - 1
    return EpsValue(-1, RatFun.from_const(
        ring, Fraction((-1) ** j, math.factorial(j))))


# -- term evaluation at integer indices ----------------------------------------


def sequence_term(e: Expr, assign: Dict[str, Fraction], ring: tuple,
                  registry=None) -> EpsValue:
    """Evaluate a term exactly; assign maps index names to rational values,
    remaining symbols stay symbolic in the ring."""
    if registry is None:
        from .registry import registry_default
        registry = registry_default()
    return _seq_eval(e, assign, ring, registry)


def _seq_eval(e: Expr, assign, ring, registry) -> EpsValue:
    if e.kind == NUM:
        return EpsValue.finite(RatFun.from_const(ring, e.value))
    if e.kind == SYM:
        if e.name in assign:
            return EpsValue.finite(RatFun.from_const(ring, assign[e.name]))
        if e.name in ring:
            return EpsValue.finite(RatFun.var(ring, e.name))
        raise ValueError(f"symbol {e.name} has no value and is not in the ring")
    if e.kind == ADD:
        total = EpsValue.exact_zero(ring)
        for a in e.args:
            total = total.add(_seq_eval(a, assign, ring, registry))
        return total
    if e.kind == MUL:
        vals = []
        pending_error = None
        for a in e.args:
            try:
                vals.append(_seq_eval(a, assign, ring, registry))
            except (EvaluationPole, ValueError) as err:
                pending_error = err
        if pending_error is not None:
            # 0 * undefined -> 0 for truncated-support sums
            if any(v.is_exact_zero() for v in vals):
                return EpsValue.exact_zero(ring)
            raise pending_error
        total = EpsValue.finite(RatFun.from_const(ring, 1))
        for v in vals:
            total = total.mul(v)
        return total
    if e.kind == POW:
        q = e.exponent
        base = _seq_eval(e.args[0], assign, ring, registry)
        if q.denominator == 1:
            return base.pow_int(int(q))
        v = base.extract()
        if v.is_constant():
            root = _perfect_rational_power(v.constant_value(), q)
            if root is not None:
                return EpsValue.finite(RatFun.from_const(ring, root))
        raise EvaluationPole(f"cannot evaluate exact power ^{q}")
    if e.kind == CALL:
        return _seq_eval_call(e, assign, ring, registry)
    raise ValueError(f"cannot evaluate {e.kind} node pointwise")


def _int_value(v: EpsValue) -> int:
    rf = v.extract()
    if not rf.is_constant():
        raise ValueError("expected an integer, got a symbolic value")
    c = rf.constant_value()
    if c.denominator != 1:
        raise ValueError(f"expected an integer, got {c}")
    return int(c)


def _seq_eval_call(e: Expr, assign, ring, registry) -> EpsValue:
    name = e.name
    if name == "factorial":
        m = _int_value(_seq_eval(e.args[0], assign, ring, registry))
        return factorial_eps(m, ring)
    if name == "geompow":
        base = _seq_eval(e.args[0], assign, ring, registry)
        s = _int_value(_seq_eval(e.args[1], assign, ring, registry))
        return base.pow_int(s)
    entry = registry.get(name)
    if entry is not None and entry.value_fn is not None and entry.index_pos is not None:
        k = _int_value(_seq_eval(e.args[entry.index_pos], assign, ring, registry))
        arg = _seq_eval(e.args[-1], assign, ring, registry).extract()
        val = entry.value_fn(k, e.args[1:-1], ring, arg)
        if val is None:
            raise ValueError(f"{name} undefined at index {k}")
        return EpsValue.finite(val)
    raise ValueError(f"no pointwise rule for {name}")


def _int_nth_root(n: int, d: int) -> Optional[int]:
    """Exact d-th root of a nonnegative integer, or None."""
    if n == 0:
        return 0
    if d == 1:
        return n
    if d == 2:
        r = math.isqrt(n)
        return r if r * r == n else None
    # integer Newton iteration
    r = 1 << (-(-n.bit_length() // d))
    while True:
        nr = ((d - 1) * r + n // r ** (d - 1)) // d
        if nr >= r:
            break
        r = nr
    return r if r ** d == n else None


def _perfect_rational_power(c: Fraction, q: Fraction) -> Optional[Fraction]:
    if c == 0:
        return Fraction(0) if q > 0 else None
    if c < 0:
        return None
    rn = _int_nth_root(c.numerator, q.denominator)
    rd = _int_nth_root(c.denominator, q.denominator)
    if rn is None or rd is None:
        return None
    base = Fraction(rn, rd)
    return base ** q.numerator


# -- brute-force summation ----------------------------------------------------------


def brute_sum(sum_expr: Expr, assign: Dict[str, Fraction], ring: tuple = (),
              registry=None, margin: int = 3) -> RatFun:
    """Sum the summand over its stated finite support, asserting that the
    term vanishes on a margin just outside the window."""
    if sum_expr.kind != SUM:
        raise ValueError("brute_sum expects a summation node")
    k = sum_expr.bound_var
    body = sum_expr.args[0]
    lo = _bound_value(sum_expr.lo, assign)
    hi = _bound_value(sum_expr.hi, assign)
    if lo is None or hi is None:
        raise ValueError("brute_sum needs finite bounds")
    total = RatFun.from_const(ring, 0)
    for kv in range(lo, hi + 1):
        a2 = dict(assign)
        a2[k] = Fraction(kv)
        total = total + sequence_term(body, a2, ring, registry).extract()
    for kv in list(range(lo - margin, lo)) + list(range(hi + 1, hi + 1 + margin)):
        a2 = dict(assign)
        a2[k] = Fraction(kv)
        try:
            v = sequence_term(body, a2, ring, registry).extract()
        except (EvaluationPole, ValueError):
            continue
        if not v.is_zero():
            raise ValueError(
                f"summand does not vanish at {k} = {kv} outside the window; "
                "the stated support is not natural")
    return total


def _bound_value(b: Optional[Expr], assign) -> Optional[int]:
    if b is None:
        return None
    if b.kind == SYM and b.name == "inf":
        return None
    rf_assign = {k: v for k, v in assign.items()}
    v = _eval_plain(b, rf_assign)
    if v is None or v.denominator != 1:
        raise ValueError(f"summation bound {b} is not an integer here")
    return int(v)


def _eval_plain(e: Expr, assign) -> Optional[Fraction]:
    if e.kind == NUM:
        return e.value
    if e.kind == SYM:
        return assign.get(e.name)
    if e.kind == ADD:
        total = Fraction(0)
        for a in e.args:
            v = _eval_plain(a, assign)
            if v is None:
                return None
            total += v
        return total
    if e.kind == MUL:
        total = Fraction(1)
        for a in e.args:
            v = _eval_plain(a, assign)
            if v is None:
                return None
            total *= v
        return total
    if e.kind == POW and e.exponent.denominator == 1:
        v = _eval_plain(e.args[0], assign)
        if v is None:
            return None
        return v ** int(e.exponent)
    return None


# -- series oracle ---------------------------------------------------------------


class _ScanRestart(Exception):
    pass


class OpaqueTags:
    def __init__(self, params: tuple):
        self.params = tuple(params)
        self.tags: List[str] = []
        self.frozen = False

    @property
    def ring(self) -> tuple:
        return tuple(sorted(set(self.params) | set(self.tags)))

    def opaque(self, tag: str) -> None:
        if tag not in self.tags:
            if self.frozen:
                raise _ScanRestart(tag)
            self.tags.append(tag)
            raise _ScanRestart(tag)


def series_of_expr(e: Expr, var: str, point, depth: int,
                   registry=None, extra_params: Sequence[str] = ()) -> SeriesPrefix:
    """Taylor prefix of the expression about var = point, exact, with opaque
    constants for non-rational values."""
    if isinstance(e, str):
        e = parse(e)
    if registry is None:
        from .registry import registry_default
        registry = registry_default()
    point = Fraction(point)
    params = set(e.free_symbols()) | set(extra_params)
    params.discard(var)
    params.discard("inf")
    tags = OpaqueTags(tuple(sorted(params)))
    while True:
        try:
            coeffs = _series(e, var, point, depth, tags.ring, registry, tags)
            break
        except _ScanRestart:
            continue
    tags.frozen = True
    return SeriesPrefix(var, DIFF, point, tuple(coeffs))


def _opaque_rf(tags: OpaqueTags, ring, tag: str) -> RatFun:
    if tag not in tags.tags:
        tags.opaque(tag)  # raises _ScanRestart
    return RatFun.var(ring, tag)


def _spec_to_rf(spec, tags: OpaqueTags, ring) -> RatFun:
    if isinstance(spec, str):
        return _opaque_rf(tags, ring, spec)
    if isinstance(spec, tuple):
        c, tag = spec
        return _opaque_rf(tags, ring, tag) * c
    return RatFun.from_const(ring, spec)


def _rf_text(rf: RatFun) -> str:
    return str(rf).replace(" ", "")


def _series(e: Expr, var: str, point: Fraction, depth: int, ring: tuple,
            registry, tags: OpaqueTags) -> List[RatFun]:
    if e.kind == NUM:
        return s_const(ring, e.value, depth)
    if e.kind == SYM:
        if e.name == var:
            out = s_const(ring, point, depth)
            if depth > 1:
                out[1] = RatFun.from_const(ring, 1)
            return out
        return _sym_series(e.name, ring, depth)
    if e.kind == ADD:
        out = s_const(ring, 0, depth)
        for a in e.args:
            out = s_add(out, _series(a, var, point, depth, ring, registry, tags))
        return out
    if e.kind == MUL:
        out = s_const(ring, 1, depth)
        for a in e.args:
            out = s_mul(out, _series(a, var, point, depth, ring, registry, tags), depth)
        return out
    if e.kind == POW:
        b = _series(e.args[0], var, point, depth, ring, registry, tags)
        return _pow_series(b, e.exponent, ring, tags)
    if e.kind == CALL:
        return _call_series(e, var, point, depth, ring, registry, tags)
    raise NonHolonomicInput(f"series oracle cannot expand a {e.kind} node")


def _sym_series(name: str, ring, depth: int) -> List[RatFun]:
    out = [RatFun.from_const(ring, 0)] * depth
    if depth:
        out[0] = RatFun.var(ring, name)
    return out


def _valuation(b: List[RatFun]) -> int:
    for i, c in enumerate(b):
        if not c.is_zero():
            return i
    return len(b)


def _pow_series(b: List[RatFun], q: Fraction, ring, tags) -> List[RatFun]:
    depth = len(b)
    v = _valuation(b)
    if v == depth:
        if q > 0:
            return b
        raise PoleAtExpansionPoint("power of the zero series")
    vq = v * q
    if vq.denominator != 1 or vq < 0:
        raise PoleAtExpansionPoint(
            f"power ^{q} of a series with valuation {v} is not a power series here")
    shift = int(vq)
    u = b[v:] + [RatFun.from_const(ring, 0)] * v
    u0 = u[0]
    if q.denominator == 1:
        k = int(q)
        core = s_pow_int(u, k) if k >= 0 else s_pow_int(s_inverse(u), -k)
    else:
        w = s_scale(u, u0.inverse())
        w[0] = w[0] - 1
        core = s_scale(s_binomial(w, q), _rf_power(u0, q, ring, tags))
    out = [RatFun.from_const(ring, 0)] * shift + core
    return out[:depth]


def _rf_power(u0: RatFun, q: Fraction, ring, tags) -> RatFun:
    if u0.is_constant():
        c = u0.constant_value()
        root = _perfect_rational_power(c, q)
        if root is not None:
            return RatFun.from_const(ring, root)
    if u0 == RatFun.from_const(ring, 1):
        return u0
    return _opaque_rf(tags, ring, f"pow@({_rf_text(u0)})^({q})")


def _call_series(e: Expr, var: str, point: Fraction, depth: int, ring: tuple,
                 registry, tags: OpaqueTags) -> List[RatFun]:
    from .core import expr_to_ratfun

    name = e.name
    entry = registry.get(name)
    if entry is None:
        raise NonHolonomicInput(f"unknown function {name}")
    full_ring = tuple(sorted(set(ring) | {var}))

    if name == "factorial":
        v = _eval_plain(e.args[0], {})
        if v is not None and v.denominator == 1 and v >= 0:
            return s_const(ring, math.factorial(int(v)), depth)
        raise NonHolonomicInput("factorial inside a series expansion")

    if name == "geompow":
        base, s_expr = e.args
        s_rf0 = expr_to_ratfun(s_expr, full_ring)
        if s_rf0 is None or s_rf0.num.uses_var(var) or s_rf0.den.uses_var(var):
            raise NonHolonomicInput("series oracle: exponent must be var-free")
        s_rf = ratfun_change_ring(s_rf0, ring)
        b = _series(base, var, point, depth, ring, registry, tags)
        if _valuation(b) != 0:
            raise PoleAtExpansionPoint("symbolic power of a vanishing base")
        u0 = b[0]
        w = s_scale(b, u0.inverse())
        w[0] = w[0] - 1
        scale = _symbolic_base_power(u0, s_rf, ring, tags)
        return s_scale(_binomial_series_symbolic(w, s_rf, ring), scale)

    if entry.index_pos is not None:
        return _family_series(e, entry, var, point, depth, ring, registry, tags)

    if entry.de_template is None or entry.init_derivs is None:
        raise NonHolonomicInput(f"no series rule for {name}")

    arg = e.args[0]
    u = _series(arg, var, point, depth, ring, registry, tags)
    u0 = u[0]
    template = entry.de_template(var, (var,), None, ())
    f_series = _function_series_at(template, entry, u0, depth, ring, tags)
    inner = list(u)
    inner[0] = RatFun.from_const(ring, 0)
    if all(c.is_zero() for c in inner):
        # constant argument: the call is the constant f(u0)
        return [f_series[0]] + [RatFun.from_const(ring, 0)] * (depth - 1)
    return s_compose(f_series, inner)


def _function_series_at(template: LinearOperatorEq, entry, u0: RatFun,
                        depth: int, ring: tuple, tags: OpaqueTags) -> List[RatFun]:
    """Series of a registered unary function about the (possibly symbolic)
    point u0, coefficients over the opaque ring."""
    specs = entry.init_derivs(u0, _rf_text(u0))
    init = [_spec_to_rf(s, tags, ring) for s in specs]
    return extend_series_by_de(template, u0, init, depth, ring)


def extend_series_by_de(eq: LinearOperatorEq, point_rf: RatFun,
                        init: List[RatFun], depth: int, ring: tuple) -> List[RatFun]:
    """Taylor coefficients to given depth from a differential equation and the
    first order-many coefficients; the expansion point may be symbolic.

    init holds derivative VALUES f(c), f'(c), ..., f^(r-1)(c); the returned
    list holds Taylor coefficients a_i = f^(i)(c)/i!.
    """
    var = eq.variable
    r = eq.order
    if len(init) < r:
        raise ValueError(f"need {r} initial values, got {len(init)}")
    full_ring = tuple(sorted(set(ring) | {var}))
    pt = ratfun_change_ring(point_rf, ring)
    shift_val = RatFun.var(full_ring, var) + ratfun_change_ring(pt, full_ring)
    csers = []
    for i in range(r + 1):
        ci = ratfun_change_ring(eq.coeff(i), full_ring)
        shifted = ci.subs_ratfun(var, shift_val)
        csers.append(series_of_ratfun(shifted, var, Fraction(0), depth, ring))
    lead0 = csers[r][0]
    if lead0.is_zero():
        raise PoleAtExpansionPoint(
            "expansion point is singular for the equation")
    a = [init[i] * Fraction(1, math.factorial(i)) for i in range(r)]
    inv_lead = lead0.inverse()
    for m in range(depth - r):
        acc = RatFun.from_const(ring, 0)
        for i in range(r + 1):
            ci = csers[i]
            for j in range(m + 1):
                if j >= len(ci) or ci[j].is_zero():
                    continue
                s = m - j
                idx = s + i
                if i == r and j == 0:
                    continue  # the unknown a_{m+r}
                if idx >= len(a):
                    continue
                acc = acc + ci[j] * a[idx] * _ff(s, i)
        unknown = -(acc * inv_lead) * Fraction(1, _ff(m, r))
        a.append(unknown)
    return a[:depth]


def _ff(s: int, i: int) -> int:
    out = 1
    for t in range(1, i + 1):
        out *= s + t
    return out


def _binomial_series_symbolic(u: List[RatFun], q: RatFun, ring) -> List[RatFun]:
    """(1+u)^q with symbolic rational-function exponent q."""
    if u and not u[0].is_zero():
        raise ValueError("binomial series needs zero constant term")
    n = len(u)
    acc = s_const(ring, 0, n)
    upow = s_const(ring, 1, n)
    coeff = RatFun.from_const(ring, 1)
    for m in range(n):
        if m > 0:
            coeff = coeff * (q - (m - 1)) * Fraction(1, m)
        if not coeff.is_zero():
            acc = s_add(acc, s_scale(upow, coeff))
        if m + 1 < n:
            upow = s_mul(upow, u, n)
    return acc


def _symbolic_base_power(u0: RatFun, s_rf: RatFun, ring, tags) -> RatFun:
    if u0 == RatFun.from_const(ring, 1):
        return u0
    if s_rf.is_constant() and s_rf.constant_value().denominator == 1:
        return u0 ** int(s_rf.constant_value())
    return _opaque_rf(tags, ring, f"pow@({_rf_text(u0)})^({_rf_text(s_rf)})")


# -- family series (integer or special symbolic index) -------------------------------


def _family_series(e: Expr, entry, var: str, point: Fraction, depth: int,
                   ring: tuple, registry, tags: OpaqueTags) -> List[RatFun]:
    from .core import expr_to_ratfun

    full_ring = tuple(sorted(set(ring) | {var}))
    idx = e.args[entry.index_pos]
    arg = e.args[-1]
    arg_rf = expr_to_ratfun(arg, full_ring)
    if arg_rf is None:
        raise NonHolonomicInput(f"{e.name}: series oracle needs a rational argument")
    iv = _eval_plain(idx, {})
    if iv is not None and iv.denominator == 1:
        val = entry.value_fn(int(iv), e.args[1:-1], full_ring, arg_rf)
        if val is None:
            raise ValueError(f"{e.name} undefined at index {iv}")
        return series_of_ratfun(val, var, point, depth, ring)
    # symbolic index: supported for the Legendre family about argument value 1
    if e.name == "legendrep":
        idx_rf0 = expr_to_ratfun(idx, full_ring)
        if idx_rf0 is not None:
            arg_at = arg_rf.subs({var: MultiPoly.const(arg_rf.vars, point)})
            if arg_at.is_constant() and arg_at.constant_value() == 1 \
                    and arg_rf == RatFun.var(full_ring, var):
                nu = ratfun_change_ring(idx_rf0, ring)
                return legendre_series_at_one(nu, depth, ring)
    raise NonHolonomicInput(
        f"{e.name}: no series rule for a symbolic index at this point")


def legendre_series_at_one(nu: RatFun, depth: int, ring: tuple) -> List[RatFun]:
    """Legendre function of degree nu expanded about argument 1:
    coefficient of t^m is (-nu)_m (nu+1)_m (-1/2)^m / (m!)^2."""
    out = []
    term = RatFun.from_const(ring, 1)
    for m in range(depth):
        if m:
            factor = (-(nu) + (m - 1)) * (nu + m) * Fraction(-1, 2) \
                * Fraction(1, m * m)
            term = term * factor
        out.append(term)
    return out


# -- integral moments ----------------------------------------------------------


def gaussian_moment(t: int, ring: tuple) -> RatFun:
    """integral over the real line of x^t exp(-x^2); ring must contain sqrt_pi."""
    if t % 2 == 1:
        return RatFun.from_const(ring, 0)
    m = t // 2
    dfac = 1
    for i in range(1, 2 * m, 2):
        dfac *= i
    return RatFun.var(ring, "sqrt_pi") * Fraction(dfac, 2 ** m)


def hermite_weighted_moment(n: int, registry=None) -> RatFun:
    """integral over the real line of x^n exp(-x^2) H_n(x), exactly, in terms
    of sqrt_pi."""
    if registry is None:
        from .registry import registry_default
        registry = registry_default()
    ring = ("sqrt_pi", "x")
    x = RatFun.var(ring, "x")
    h = registry["hermiteh"].value_fn(n, (), ring, x)
    p = (h * (x ** n)).as_poly()
    total = RatFun.from_const(ring, 0)
    for exps, c in p.terms.items():
        t = exps[p.vars.index("x")]
        total = total + gaussian_moment(t, ring) * c
    return total
