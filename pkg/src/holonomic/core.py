"""Closure properties and equation derivation for holonomic functions.

The central datatype is LinearOperatorEq.  Everything here reduces to linear
algebra over rational-function fields: a function (or sequence) annihilated by
an order-r equation spans, together with its first r-1 derivatives (shifts),
a finite-dimensional module; sums, products, and rational substitutions act on
such modules, and minimal_annihilator recovers an equation for the result by
finding the first linear dependence among iterated applications of D or N.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from .errors import (ConstantSubstitution, ExtendedAlgorithmRequired,
                     NonHolonomicInput, OrderExceeded)
from .expr import (ADD, CALL, INTG, MUL, NUM, POW, SUM, SYM, Expr, parse)
from .lineareq import solve_linear
from .operator import DIFF, SHIFT, LinearOperatorEq
from .poly import MultiPoly, RatFun, change_ring, ratfun_change_ring
from .series import check_annihilates, union_ring  # noqa: F401  (public API)


# -- minimal annihilating equation from a module action -------------------------


def minimal_annihilator(variable: str, kind: str, ring_vars: tuple,
                        v0: Sequence[RatFun],
                        step: Callable[[List[RatFun]], List[RatFun]],
                        max_order: int) -> LinearOperatorEq:
    """First linear dependence among v0, step(v0), step^2(v0), ...

    step must implement the action of D (kind DIFF) or N (kind SHIFT) on
    coordinate vectors over Q(ring_vars).  The dependence sum_i c_i v_i = 0
    with c_m = 1 yields the equation sum_i c_i Op^i = 0.
    """
    zero = RatFun.from_const(ring_vars, 0)
    one = RatFun.from_const(ring_vars, 1)
    if all(c.is_zero() for c in v0):
        return LinearOperatorEq(variable, kind, [one])
    vecs = [list(v0)]
    for m in range(1, max_order + 2):
        vecs.append(step(vecs[-1]))
        rows = [[vecs[i][c] for i in range(m)] for c in range(len(v0))]
        rhs = [vecs[m][c] for c in range(len(v0))]
        sol = solve_linear(rows, rhs, zero, one, lambda r: r.is_zero())
        if sol is not None:
            coeffs = [-x for x in sol] + [one]
            return LinearOperatorEq(variable, kind, coeffs)
    raise OrderExceeded(max_order)


def _unify(a: LinearOperatorEq, b: LinearOperatorEq):
    ring = union_ring(a.ring_vars, b.ring_vars)
    ca = [ratfun_change_ring(c, ring) for c in a.coeffs]
    cb = [ratfun_change_ring(c, ring) for c in b.coeffs]
    return ring, ca, cb


def _reduction_row(coeffs: List[RatFun]) -> List[RatFun]:
    """Components of Op^r f in terms of Op^i f, i < r."""
    top = coeffs[-1]
    return [-(c / top) for c in coeffs[:-1]]


# -- closure: sum -----------------------------------------------------------


def closure_sum(a: LinearOperatorEq, b: LinearOperatorEq,
                max_order: Optional[int] = None) -> LinearOperatorEq:
    """Equation for f + g given equations for f and for g."""
    if a.variable != b.variable or a.kind != b.kind:
        raise ValueError("cannot add: different variable or kind")
    if a.is_zero() or b.is_zero():
        raise ValueError("zero equation carries no information")
    var, kind = a.variable, a.kind
    ring, ca, cb = _unify(a, b)
    ra, rb = a.order, b.order
    if ra == 0:
        return b
    if rb == 0:
        return a
    reda = _reduction_row(ca)
    redb = _reduction_row(cb)
    zero = RatFun.from_const(ring, 0)
    one = RatFun.from_const(ring, 1)
    dim = ra + rb

    def step_block(v, r, red):
        if kind == DIFF:
            out = [v[i].derivative(var) for i in range(r)]
            for i in range(1, r):
                out[i] = out[i] + v[i - 1]
            top = v[r - 1]
            if not top.is_zero():
                for i in range(r):
                    out[i] = out[i] + top * red[i]
        else:
            shifted = [v[i].shift(var, 1) for i in range(r)]
            out = [zero] * r
            for i in range(r - 1):
                out[i + 1] = out[i + 1] + shifted[i]
            top = shifted[r - 1]
            if not top.is_zero():
                for i in range(r):
                    out[i] = out[i] + top * red[i]
        return out

    def step(v):
        return step_block(v[:ra], ra, reda) + step_block(v[ra:], rb, redb)

    v0 = [one] + [zero] * (ra - 1) + [one] + [zero] * (rb - 1)
    return minimal_annihilator(var, kind, ring, v0, step,
                               max_order if max_order is not None else dim)


# -- closure: product ------------------------------------------------------------


def closure_product(a: LinearOperatorEq, b: LinearOperatorEq,
                    max_order: Optional[int] = None) -> LinearOperatorEq:
    """Equation for f * g given equations for f and for g."""
    if a.variable != b.variable or a.kind != b.kind:
        raise ValueError("cannot multiply: different variable or kind")
    if a.is_zero() or b.is_zero():
        raise ValueError("zero equation carries no information")
    var, kind = a.variable, a.kind
    ring, ca, cb = _unify(a, b)
    ra, rb = a.order, b.order
    if ra == 0 or rb == 0:
        # one factor is annihilated by a 0th-order equation, i.e. is 0
        return LinearOperatorEq(var, kind, [RatFun.from_const(ring, 1)])
    reda = _reduction_row(ca)
    redb = _reduction_row(cb)
    zero = RatFun.from_const(ring, 0)
    one = RatFun.from_const(ring, 1)
    dim = ra * rb

    def idx(i, j):
        return i * rb + j

    if kind == DIFF:
        def step(v):
            out = [c.derivative(var) for c in v]
            for i in range(ra):
                for j in range(rb):
                    c = v[idx(i, j)]
                    if c.is_zero():
                        continue
                    # f-derivative bump
                    if i + 1 < ra:
                        out[idx(i + 1, j)] = out[idx(i + 1, j)] + c
                    else:
                        for t in range(ra):
                            out[idx(t, j)] = out[idx(t, j)] + c * reda[t]
                    # g-derivative bump
                    if j + 1 < rb:
                        out[idx(i, j + 1)] = out[idx(i, j + 1)] + c
                    else:
                        for s in range(rb):
                            out[idx(i, s)] = out[idx(i, s)] + c * redb[s]
            return out
    else:
        def step(v):
            out = [zero] * dim
            for i in range(ra):
                fa = None
                if i + 1 < ra:
                    fa = [(i + 1, one)]
                else:
                    fa = [(t, reda[t]) for t in range(ra) if not reda[t].is_zero()]
                for j in range(rb):
                    c = v[idx(i, j)]
                    if c.is_zero():
                        continue
                    cs = c.shift(var, 1)
                    if j + 1 < rb:
                        gb = [(j + 1, one)]
                    else:
                        gb = [(s, redb[s]) for s in range(rb) if not redb[s].is_zero()]
                    for t, ft in fa:
                        for s, gt in gb:
                            out[idx(t, s)] = out[idx(t, s)] + cs * ft * gt
            return out

    v0 = [zero] * dim
    v0[idx(0, 0)] = one
    return minimal_annihilator(var, kind, ring, v0, step,
                               max_order if max_order is not None else dim)


# -- closure: rational substitution ------------------------------------------------


def substitute_rational(a: LinearOperatorEq, r: RatFun,
                        max_order: Optional[int] = None) -> LinearOperatorEq:
    """Equation for f(r(x)) given a differential equation for f."""
    if a.kind != DIFF:
        raise ValueError("rational substitution applies to differential equations")
    var = a.variable
    ring = union_ring(a.ring_vars, r.vars)
    r = ratfun_change_ring(r, ring)
    rp = r.derivative(var)
    if rp.is_zero():
        raise ConstantSubstitution(f"substitution {r} is constant in {var}")
    ca = [ratfun_change_ring(c, ring) for c in a.coeffs]
    ra = a.order
    if ra == 0:
        return LinearOperatorEq(var, DIFF, [RatFun.from_const(ring, 1)])
    top = ca[-1].subs_ratfun(var, r)
    redc = [-(c.subs_ratfun(var, r) / top) for c in ca[:-1]]
    zero = RatFun.from_const(ring, 0)
    one = RatFun.from_const(ring, 1)

    def step(v):
        out = [v[i].derivative(var) for i in range(ra)]
        for i in range(1, ra):
            out[i] = out[i] + rp * v[i - 1]
        topv = v[ra - 1]
        if not topv.is_zero():
            for i in range(ra):
                out[i] = out[i] + rp * topv * redc[i]
        return out

    v0 = [one] + [zero] * (ra - 1)
    return minimal_annihilator(var, DIFF, ring, v0, step,
                               max_order if max_order is not None else ra)


# -- conversions between differential and shift form ---------------------------


def de_to_re(eq: LinearOperatorEq, seq_var: str = "n") -> LinearOperatorEq:
    """Recurrence for the Taylor coefficients at 0 of a solution.

    Uses [x^n] x^j f^(i) = (n-j+1)...(n-j+i) a(n-j+i), valid for every
    integer n under the convention a(m) = 0 for m < 0.
    """
    if eq.kind != DIFF:
        raise ValueError("de_to_re expects a differential equation")
    if eq.is_zero():
        raise ValueError("zero equation")
    x = eq.variable
    if seq_var in eq.ring_vars and any(
            c.num.uses_var(seq_var) or c.den.uses_var(seq_var) for c in eq.coeffs):
        raise ValueError(f"sequence variable {seq_var} already occurs as a parameter")
    polys = eq.cleared()
    params = tuple(v for v in eq.ring_vars if v != x)
    ring = tuple(sorted(set(params) | {seq_var}))
    n = MultiPoly.var(ring, seq_var)
    by_delta = {}
    for i, p in enumerate(polys):
        if p.is_zero():
            continue
        for j, cj in p.as_univariate(x).items():
            if cj.is_zero():
                continue
            fall = MultiPoly.const(ring, 1)
            for t in range(1, i + 1):
                fall = fall * (n - j + t)
            term = change_ring(cj, ring) * fall
            d = i - j
            by_delta[d] = by_delta.get(d, MultiPoly.zero(ring)) + term
    by_delta = {d: p for d, p in by_delta.items() if not p.is_zero()}
    if not by_delta:
        raise ValueError("equation collapsed to 0 = 0")
    dmin = min(by_delta)
    dmax = max(by_delta)
    out = []
    for k in range(dmax - dmin + 1):
        p = by_delta.get(k + dmin)
        if p is None:
            out.append(MultiPoly.zero(ring))
        else:
            out.append(p.shift(seq_var, -dmin))
    return LinearOperatorEq.from_polys(seq_var, SHIFT, out)


def re_to_de(eq: LinearOperatorEq, func_var: str = "x") -> LinearOperatorEq:
    """Differential equation for the generating function sum a(n) x^n.

    Builds A = sum_i x^(I-i) c_i(theta - i) with theta = xD; the recurrence
    only holds from index 0 on, so A f equals a polynomial in the unknown
    initial terms rather than 0.  When that polynomial is not identically
    zero it has degree < I, and left-multiplying by D^(deg+1) kills it.
    """
    if eq.kind != SHIFT:
        raise ValueError("re_to_de expects a shift equation")
    if eq.is_zero():
        raise ValueError("zero equation")
    nv = eq.variable
    if func_var in eq.ring_vars and any(
            c.num.uses_var(func_var) or c.den.uses_var(func_var) for c in eq.coeffs):
        raise ValueError(f"function variable {func_var} already occurs as a parameter")
    # keep any common factor: dividing it out can tighten the recurrence at
    # its nonnegative integer roots, which the generating function need not obey
    polys = eq.cleared(remove_common=False)
    I = len(polys) - 1
    params = tuple(v for v in eq.ring_vars if v != nv)
    ring = tuple(sorted(set(params) | {func_var}))
    xp = MultiPoly.var(ring, func_var)
    theta = LinearOperatorEq.from_polys(func_var, DIFF, [MultiPoly.zero(ring), xp])
    ident = LinearOperatorEq.identity(func_var, DIFF, ring)
    total = LinearOperatorEq.zero(func_var, DIFF)
    for i, ci in enumerate(polys):
        if ci.is_zero():
            continue
        by_n = ci.as_univariate(nv)
        dmax_n = max(by_n)
        # Horner for c_i(theta - i) in operator arithmetic
        arg = theta - ident.scale(RatFun.from_const(ring, i))
        acc = LinearOperatorEq.zero(func_var, DIFF)
        for t in range(dmax_n, -1, -1):
            acc = acc.compose(arg) if not acc.is_zero() else acc
            coeff = by_n.get(t)
            if coeff is not None and not coeff.is_zero():
                acc = acc + ident.scale(RatFun.from_poly(change_ring(coeff, ring)))
        acc = acc.scale(RatFun.from_poly(xp ** (I - i)))
        total = total + acc
    # degree of the initial-terms correction polynomial
    deg = -1
    for i, ci in enumerate(polys):
        if ci.is_zero():
            continue
        for t in range(i):
            val = ci.subs({nv: MultiPoly.const(ci.vars, Fraction(t - i))})
            if not val.is_zero():
                deg = max(deg, I - i + t)
    if deg >= 0:
        D = LinearOperatorEq.op(func_var, DIFF, ring)
        for _ in range(deg + 1):
            total = D.compose(total)
    return total


# -- expression -> rational function -----------------------------------------------


def expr_to_ratfun(e: Expr, ring: tuple) -> Optional[RatFun]:
    """Interpret an expression tree as a rational function, or None."""
    if e.kind == NUM:
        return RatFun.from_const(ring, e.value)
    if e.kind == SYM:
        if e.name == "inf" or e.name not in ring:
            return None
        return RatFun.var(ring, e.name)
    if e.kind == ADD:
        total = RatFun.from_const(ring, 0)
        for a in e.args:
            v = expr_to_ratfun(a, ring)
            if v is None:
                return None
            total = total + v
        return total
    if e.kind == MUL:
        total = RatFun.from_const(ring, 1)
        for a in e.args:
            v = expr_to_ratfun(a, ring)
            if v is None:
                return None
            total = total * v
        return total
    if e.kind == POW:
        if e.exponent.denominator != 1:
            return None
        v = expr_to_ratfun(e.args[0], ring)
        if v is None:
            return None
        k = int(e.exponent)
        if k < 0 and v.is_zero():
            raise ZeroDivisionError("zero to a negative power")
        return v ** k
    return None


def _expr_ring(e: Expr, var: str) -> tuple:
    syms = {s for s in e.free_symbols() if s != "inf"}
    syms.add(var)
    return tuple(sorted(syms))


# -- equation derivation: differential side ---------------------------------------


def holonomic_de(e: Expr, var: str, registry=None,
                 order_max: Optional[int] = None) -> LinearOperatorEq:
    """Derive a linear differential equation with rational coefficients
    annihilating the expression, viewed as a function of var."""
    if isinstance(e, str):
        e = parse(e)
    if registry is None:
        from .registry import registry_default
        registry = registry_default()
    ring = _expr_ring(e, var)
    return _holo_de(e, var, ring, registry)


def _first_order_logderiv(ring, var, u: RatFun, s: RatFun) -> LinearOperatorEq:
    """Equation u F' - s u' F = 0 for F = u^s (u rational, s var-free)."""
    up = u.derivative(var)
    return LinearOperatorEq(var, DIFF, [-(s * up), u])


def _const_eq(ring, var, kind) -> LinearOperatorEq:
    zero = RatFun.from_const(ring, 0)
    one = RatFun.from_const(ring, 1)
    if kind == DIFF:
        return LinearOperatorEq(var, DIFF, [zero, one])
    return LinearOperatorEq(var, SHIFT, [-one, one])


def _holo_de(e: Expr, var: str, ring: tuple, registry) -> LinearOperatorEq:
    if var not in e.free_symbols():
        _raise_if_unsupported(e, registry)
        return _const_eq(ring, var, DIFF)
    rf = expr_to_ratfun(e, ring)
    if rf is not None:
        if rf.is_zero() or not (rf.num.uses_var(var) or rf.den.uses_var(var)):
            return _const_eq(ring, var, DIFF)
        return LinearOperatorEq(var, DIFF, [-rf.derivative(var), rf])

    if e.kind == ADD:
        eqs = [_holo_de(a, var, ring, registry) for a in e.args]
        out = eqs[0]
        for q in eqs[1:]:
            out = closure_sum(out, q)
        return out
    if e.kind == MUL:
        eqs = [_holo_de(a, var, ring, registry) for a in e.args]
        out = eqs[0]
        for q in eqs[1:]:
            out = closure_product(out, q)
        return out
    if e.kind == POW:
        base, q = e.args[0], e.exponent
        if q.denominator == 1:
            k = int(q)
            if k == 1:
                return _holo_de(base, var, ring, registry)
            if k >= 2:
                beq = _holo_de(base, var, ring, registry)
                out = beq
                for _ in range(k - 1):
                    out = closure_product(out, beq)
                return out
            # negative integer power of a nonrational function
            raise NonHolonomicInput(
                "reciprocal of a non-rational holonomic function need not be "
                "holonomic; rewrite the input if an equation is known")
        u = expr_to_ratfun(base, ring)
        if u is None:
            raise NonHolonomicInput(
                "fractional power of a non-rational function is not supported")
        return _first_order_logderiv(ring, var, u, RatFun.from_const(ring, q))
    if e.kind == CALL:
        return _holo_de_call(e, var, ring, registry)
    if e.kind in (SUM, INTG):
        raise NonHolonomicInput(
            "sums and integrals need creative telescoping; use the dedicated entry points")
    raise NonHolonomicInput(f"unsupported expression kind {e.kind}")


def _raise_if_unsupported(e: Expr, registry):
    """A var-free subtree is a constant, but still reject primitives that the
    engine recognizes without supporting (they signal a needed extension)."""
    if e.kind == CALL:
        entry = registry.get(e.name)
        if entry is not None and not entry.supported:
            raise ExtendedAlgorithmRequired(
                f"extended algorithm required for {e.name}")
    for a in e.args:
        _raise_if_unsupported(a, registry)


def _int_const(e: Expr) -> Optional[int]:
    if e.kind == NUM and e.value.denominator == 1:
        return int(e.value)
    return None


def _holo_de_call(e: Expr, var: str, ring: tuple, registry) -> LinearOperatorEq:
    entry = registry.get(e.name)
    if entry is None:
        raise NonHolonomicInput(f"unknown function {e.name}")
    if not entry.supported:
        raise ExtendedAlgorithmRequired(f"extended algorithm required for {e.name}")

    if e.name == "factorial":
        raise NonHolonomicInput(
            "factorial of an expression in the continuous variable")

    if e.name == "geompow":
        base, expo = e.args
        if var in expo.free_symbols():
            raise NonHolonomicInput(
                "exponential with the variable in the exponent has no "
                "rational-coefficient equation unless the base is e")
        u = expr_to_ratfun(base, ring)
        if u is None:
            raise NonHolonomicInput("power of a non-rational base")
        s = expr_to_ratfun(expo, ring)
        if s is None:
            raise NonHolonomicInput("unsupported exponent")
        return _first_order_logderiv(ring, var, u, s)

    if entry.de_template is None:
        raise NonHolonomicInput(f"{e.name} has no differential-equation rule")

    if entry.index_pos is not None:
        # orthogonal-family call f(idx, [extra params,] arg)
        idx = e.args[entry.index_pos]
        arg = e.args[-1]
        if var in idx.free_symbols():
            raise NonHolonomicInput(
                f"{e.name}: continuous derivation with the variable in the index")
        r = expr_to_ratfun(arg, ring)
        if r is None:
            raise NonHolonomicInput(
                f"{e.name} applied to a non-rational inner function")
        k = _int_const(idx)
        if k is not None and entry.value_fn is not None:
            val = entry.value_fn(k, e.args[1:-1], ring, r)
            if val is not None:
                if val.is_zero() or not (val.num.uses_var(var) or val.den.uses_var(var)):
                    return _const_eq(ring, var, DIFF)
                return LinearOperatorEq(var, DIFF, [-val.derivative(var), val])
        idx_rf = expr_to_ratfun(idx, ring)
        if idx_rf is None:
            raise NonHolonomicInput(f"{e.name}: index must be rational in parameters")
        template = entry.de_template(var, ring, idx_rf, e.args[1:-1])
    else:
        arg = e.args[0]
        template = entry.de_template(var, ring, None, ())

    if arg.kind == SYM and arg.name == var:
        return template
    r = expr_to_ratfun(arg, ring)
    if r is None:
        raise NonHolonomicInput(
            f"{e.name} applied to a non-rational inner function")
    if not r.derivative(var).is_zero():
        return substitute_rational(template, r)
    # constant argument: the whole call is a constant
    return _const_eq(ring, var, DIFF)


# -- equation derivation: shift side --------------------------------------------


def holonomic_re(e: Expr, var: str, registry=None,
                 order_max: Optional[int] = None) -> LinearOperatorEq:
    """Derive a linear recurrence with rational coefficients annihilating the
    expression, viewed as a sequence in var."""
    if isinstance(e, str):
        e = parse(e)
    if registry is None:
        from .registry import registry_default
        registry = registry_default()
    ring = _expr_ring(e, var)
    return _holo_re(e, var, ring, registry, order_max)


def _holo_re(e: Expr, var: str, ring: tuple, registry, order_max) -> LinearOperatorEq:
    if e.kind == SUM:
        from .hyper import zeilberger
        res = zeilberger(e.args[0], var, e.bound_var,
                         order_max=order_max if order_max else 6)
        return res.recurrence
    if var not in e.free_symbols():
        _raise_if_unsupported(e, registry)
        return _const_eq(ring, var, SHIFT)

    from .hyper import TermRatioError, term_ratio
    try:
        ratio = term_ratio(e, var, ring, registry)
    except TermRatioError:
        ratio = None
    if ratio is not None:
        one = RatFun.from_const(ring, 1)
        return LinearOperatorEq(var, SHIFT, [-ratio, one])

    if e.kind == ADD:
        eqs = [_holo_re(a, var, ring, registry, order_max) for a in e.args]
        out = eqs[0]
        for q in eqs[1:]:
            out = closure_sum(out, q)
        return out
    if e.kind == MUL:
        eqs = [_holo_re(a, var, ring, registry, order_max) for a in e.args]
        out = eqs[0]
        for q in eqs[1:]:
            out = closure_product(out, q)
        return out
    if e.kind == POW:
        q = e.exponent
        if q.denominator == 1 and int(q) >= 2:
            beq = _holo_re(e.args[0], var, ring, registry, order_max)
            out = beq
            for _ in range(int(q) - 1):
                out = closure_product(out, beq)
            return out
        raise NonHolonomicInput(
            f"power with exponent {q} of a non-hypergeometric sequence")
    if e.kind == CALL:
        return _holo_re_call(e, var, ring, registry)
    if e.kind == INTG:
        raise NonHolonomicInput(
            "integrals need creative telescoping; use the dedicated entry points")
    raise NonHolonomicInput(f"unsupported expression kind {e.kind}")


def _holo_re_call(e: Expr, var: str, ring: tuple, registry) -> LinearOperatorEq:
    entry = registry.get(e.name)
    if entry is None:
        raise NonHolonomicInput(f"unknown function {e.name}")
    if not entry.supported:
        raise ExtendedAlgorithmRequired(f"extended algorithm required for {e.name}")

    if e.name == "factorial":
        # term_ratio already failed, so the argument is not integer-linear
        arg = e.args[0]
        rf = expr_to_ratfun(arg, ring)
        if rf is not None and rf.is_poly() and rf.as_poly().degree(var) == 1:
            raise ExtendedAlgorithmRequired(
                "factorial of a non-integer linear argument requires the "
                "extended algorithm")
        raise NonHolonomicInput("factorial argument is not linear in the index")

    if entry.re_template is not None and entry.index_pos is not None:
        idx = e.args[entry.index_pos]
        extra = e.args[:entry.index_pos] + e.args[entry.index_pos + 1:]
        for a in extra:
            if var in a.free_symbols():
                raise NonHolonomicInput(
                    f"{e.name}: the index variable appears in a parameter slot")
        shift = _linear_shift_of(idx, var)
        if shift is None:
            raise NonHolonomicInput(
                f"{e.name}: index must be the variable plus an integer")
        params_rf = []
        for a in extra:
            rf = expr_to_ratfun(a, ring)
            if rf is None:
                raise NonHolonomicInput(f"{e.name}: non-rational parameter")
            params_rf.append(rf)
        template = entry.re_template(var, ring, params_rf)
        if shift:
            template = template.map_coeffs(lambda c: c.shift(var, shift))
        return template
    raise NonHolonomicInput(f"{e.name} has no recurrence rule")


def _linear_shift_of(e: Expr, var: str) -> Optional[int]:
    """Recognize e == var + s for an integer s (s may be 0)."""
    if e.kind == SYM and e.name == var:
        return 0
    if e.kind == ADD:
        shift = 0
        seen_var = False
        for a in e.args:
            if a.kind == SYM and a.name == var and not seen_var:
                seen_var = True
            elif a.kind == NUM and a.value.denominator == 1:
                shift += int(a.value)
            else:
                return None
        return shift if seen_var else None
    return None
