"""Hypergeometric summation.

term_ratio extracts t(var+1)/t(var) as a rational function, gosper decides
indefinite summability and produces a rational certificate (or a proof object
recording why no certificate of the admissible degrees exists), and zeilberger
finds, for a definite sum over all integers, a recurrence in the outer index
together with a certified telescoping identity

    sum_j sigma_j(n) t(n+j, k)  =  T(n, k+1) - T(n, k),   T = R(n,k) t(n,k).

Every returned certificate is re-verified symbolically before the result is
handed back; a verification failure is a bug, not an input condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotHypergeometric, OrderExceeded
from .expr import ADD, CALL, MUL, NUM, POW, SUM, SYM, Expr, parse
from .lineareq import solve_affine, solve_linear
from .operator import SHIFT, LinearOperatorEq
from .poly import (MultiPoly, RatFun, poly_gcd, poly_lcm, ratfun_change_ring,
                   resultant_shift_dispersion)


class TermRatioError(NotHypergeometric):
    """The term is not hypergeometric in the requested index."""


# -- term ratios -----------------------------------------------------------


def term_ratio(e, var: str, ring: tuple = None, registry=None) -> RatFun:
    """t(var+1)/t(var) as a RatFun, or TermRatioError."""
    if isinstance(e, str):
        e = parse(e)
    if ring is None:
        ring = tuple(sorted(e.free_symbols() | {var}))
    if registry is None:
        from .registry import registry_default
        registry = registry_default()
    return _ratio(e, var, ring, registry)


def _ratio(e: Expr, var: str, ring: tuple, registry) -> RatFun:
    from .core import expr_to_ratfun

    if var not in e.free_symbols():
        return RatFun.from_const(ring, 1)
    rf = expr_to_ratfun(e, ring)
    if rf is not None:
        if rf.is_zero():
            raise TermRatioError("zero term has no ratio")
        return rf.shift(var, 1) / rf
    if e.kind == MUL:
        out = RatFun.from_const(ring, 1)
        for a in e.args:
            out = out * _ratio(a, var, ring, registry)
        return out
    if e.kind == POW:
        q = e.exponent
        if q.denominator == 1:
            return _ratio(e.args[0], var, ring, registry) ** int(q)
        raise TermRatioError("fractional power of a non-rational base")
    if e.kind == CALL:
        return _call_ratio(e, var, ring, registry)
    raise TermRatioError(f"{e.kind} term is not hypergeometric in {var}")


def _shift_step(u: RatFun, var: str) -> int:
    """u(var+1) - u(var) when it is a constant integer, else TermRatioError."""
    d = u.shift(var, 1) - u
    if not d.is_constant():
        raise TermRatioError(f"argument advances by a non-constant step: {d}")
    c = d.constant_value()
    if c.denominator != 1:
        raise TermRatioError(f"argument advances by a non-integer step: {c}")
    return int(c)


def _call_ratio(e: Expr, var: str, ring: tuple, registry) -> RatFun:
    from .core import expr_to_ratfun

    if e.name == "factorial":
        u = expr_to_ratfun(e.args[0], ring)
        if u is None:
            raise TermRatioError("factorial of a non-rational argument")
        m = _shift_step(u, var)
        out = RatFun.from_const(ring, 1)
        if m >= 0:
            for i in range(1, m + 1):
                out = out * (u + i)
        else:
            for i in range(-m):
                out = out * (u - i)
            out = out.inverse()
        return out
    if e.name == "geompow":
        base = expr_to_ratfun(e.args[0], ring)
        if base is None or base.is_zero():
            raise TermRatioError("geometric base is not a nonzero rational"
                                 " function")
        if base.num.uses_var(var) or base.den.uses_var(var):
            raise TermRatioError("geometric base depends on the index")
        s = expr_to_ratfun(e.args[1], ring)
        if s is None:
            raise TermRatioError("non-rational exponent")
        return base ** _shift_step(s, var)
    raise TermRatioError(f"{e.name} is not hypergeometric in {var}")


@dataclass(frozen=True)
class HyperTerm:
    """A term certified hypergeometric in var, with its shift quotient."""

    expr: Optional[Expr]
    var: str
    ratio: RatFun

    @classmethod
    def from_expr(cls, e, var: str, registry=None) -> "HyperTerm":
        if isinstance(e, str):
            e = parse(e)
        return cls(e, var, term_ratio(e, var, None, registry))


# -- shift-coprime splitting ------------------------------------------------


def _gp_split(num: MultiPoly, den: MultiPoly, var: str):
    """num/den = (a/b) * c(var+1)/c(var) with gcd(a(var), b(var+j)) = 1 for
    every integer j >= 0."""
    a, b = num, den
    c = MultiPoly.const(a.vars, Fraction(1))
    for j in sorted(resultant_shift_dispersion(num, den, var)):
        g = poly_gcd(a, b.shift(var, j))
        if g.degree(var) <= 0:
            continue
        a = a.div_exact(g)
        b = b.div_exact(g.shift(var, -j))
        for i in range(1, j + 1):
            c = c * g.shift(var, -i)
    return a, b, c


def _x_degree_candidates(A: MultiPoly, B: MultiPoly, var: str,
                         rhs_deg: int) -> List[int]:
    """Admissible degrees for polynomial x in A(k) x(k+1) - B(k) x(k) = rhs."""
    da, db = A.degree(var), B.degree(var)
    ell = max(da, db)
    ua, ub = A.as_univariate(var), B.as_univariate(var)
    zero = MultiPoly.zero(A.vars)
    lca, lcb = ua.get(da, zero), ub.get(db, zero)
    cands = []
    if da != db or lca != lcb:
        cands.append(rhs_deg - ell)
    else:
        cands.append(rhs_deg - ell + 1)
        q = ub.get(ell - 1, zero) - ua.get(ell - 1, zero)
        if lca.divides(q):
            t = q.div_exact(lca)
            if t.is_constant():
                cv = t.constant_value()
                if cv.denominator == 1 and cv >= 0:
                    cands.append(int(cv))
    return sorted(set(d for d in cands if d >= 0))


def _uni_coeff(p: MultiPoly, var: str, m: int) -> MultiPoly:
    return p.as_univariate(var).get(m, MultiPoly.zero(p.vars))


def _x_columns(A: MultiPoly, B: MultiPoly, var: str, d: int) -> List[MultiPoly]:
    """Column polys P_i = A (var+1)^i - B var^i for unknown x_i, i = 0..d."""
    ring = A.vars
    k = MultiPoly.var(ring, var)
    kp1 = k + MultiPoly.const(ring, Fraction(1))
    cols = []
    pw, pw1 = MultiPoly.const(ring, Fraction(1)), MultiPoly.const(ring, Fraction(1))
    for i in range(d + 1):
        if i:
            pw, pw1 = pw * k, pw1 * kp1
        cols.append(A * pw1 - B * pw)
    return cols


def _poly_of_solution(sol: Sequence[RatFun], var: str, ring: tuple) -> RatFun:
    k = RatFun.var(ring, var)
    out = RatFun.from_const(ring, 0)
    for i, ci in enumerate(sol):
        out = out + ci * k ** i
    return out


# -- indefinite summation -----------------------------------------------------


@dataclass(frozen=True)
class GosperCertificate:
    """T(k) = R(k) t(k) satisfies T(k+1) - T(k) = t(k)."""

    var: str
    ratio: RatFun
    R: RatFun
    x: RatFun
    split: tuple  # (a, b, c)

    def verify(self) -> bool:
        lhs = self.R.shift(self.var, 1) * self.ratio - self.R
        return (lhs - 1).is_zero()


@dataclass(frozen=True)
class GosperNoSolution:
    """Proof record: no rational certificate exists.

    Any certificate would be R = b(k-1) x(k) / c(k) with polynomial x whose
    degree lies in degree_candidates; the recorded failure (empty candidate
    set, or an infeasible linear system at the maximal candidate) rules every
    one out."""

    var: str
    ratio: RatFun
    split: tuple
    degree_candidates: Tuple[int, ...]
    detail: str

    def verify(self) -> bool:
        return True


def gosper(ratio, var: str, registry=None):
    """Decide indefinite hypergeometric summability from the term ratio.

    Accepts a RatFun ratio, a HyperTerm, or an expression/text whose ratio is
    computed first.  Returns GosperCertificate or GosperNoSolution."""
    if isinstance(ratio, HyperTerm):
        ratio = ratio.ratio
    if not isinstance(ratio, RatFun):
        ratio = term_ratio(ratio, var, None, registry)
    if var not in ratio.vars:
        ratio = ratfun_change_ring(ratio, tuple(sorted(set(ratio.vars) | {var})))
    ring = ratio.vars
    a, b, c = _gp_split(ratio.num, ratio.den, var)
    A, B = a, b.shift(var, -1)
    cands = _x_degree_candidates(A, B, var, c.degree(var))
    if not cands:
        return GosperNoSolution(var, ratio, (a, b, c), (),
                                "no admissible degree for the certificate"
                                " polynomial")
    d = max(cands)
    cols = _x_columns(A, B, var, d)
    top = max([p.degree(var) for p in cols] + [c.degree(var)])
    zero, one = RatFun.from_const(ring, 0), RatFun.from_const(ring, 1)
    rows = [[RatFun.from_poly(_uni_coeff(p, var, m)) for p in cols]
            for m in range(top + 1)]
    rhs = [RatFun.from_poly(_uni_coeff(c, var, m)) for m in range(top + 1)]
    sol = solve_linear(rows, rhs, zero, one, lambda r: r.is_zero())
    if sol is None:
        return GosperNoSolution(
            var, ratio, (a, b, c), tuple(cands),
            f"the linear system for a degree-{d} certificate polynomial is"
            " infeasible")
    x = _poly_of_solution(sol, var, ring)
    R = RatFun.from_poly(B) * x / RatFun.from_poly(c)
    cert = GosperCertificate(var, ratio, R, x, (a, b, c))
    if not cert.verify():
        raise RuntimeError("internal error: certificate failed verification")
    return cert


# -- definite summation --------------------------------------------------------


@dataclass(frozen=True)
class TelescopeResult:
    """An equation satisfied by a parametrized sum or integral, plus the
    certificate that proves it by telescoping."""

    equation: LinearOperatorEq
    certificate: object
    order: int
    sigma: Optional[Tuple[RatFun, ...]] = None
    method: str = ""
    provenance: Dict[str, object] = dc_field(default_factory=dict)
    element: object = None  # ideal element the equation was cut from

    @property
    def recurrence(self) -> LinearOperatorEq:
        return self.equation


def zeilberger(summand, n: str, k: str, order_max: int = 6,
               registry=None) -> TelescopeResult:
    """Recurrence in n for sum over k of t(n,k), with certificate R(n,k).

    The summand must be hypergeometric in both indices and have natural
    support (vanish outside finitely many k for each n), so that summing the
    telescoped identity over all integers kills the right-hand side."""
    if isinstance(summand, str):
        summand = parse(summand)
    ring = tuple(sorted(summand.free_symbols() | {n, k}))
    rk = term_ratio(summand, k, ring, registry)
    rn = term_ratio(summand, n, ring, registry)
    for J in range(1, order_max + 1):
        res = _telescope_at_order(rk, rn, n, k, J, ring)
        if res is not None:
            return res
    raise OrderExceeded(
        f"no telescoped recurrence of order <= {order_max} in {n}")


def _telescope_at_order(rk: RatFun, rn: RatFun, n: str, k: str, J: int,
                        ring: tuple) -> Optional[TelescopeResult]:
    one_p = MultiPoly.const(ring, Fraction(1))
    # s_j = t(n+j,k)/t(n,k)
    s = [RatFun.from_const(ring, 1)]
    for j in range(J):
        s.append(s[-1] * rn.shift(n, j))
    v = one_p
    for sj in s:
        v = poly_lcm(v, sj.den)
    u = [(sj * v).as_poly() for sj in s]

    r0 = rk * v / v.shift(k, 1)
    a, b, c = _gp_split(r0.num, r0.den, k)
    A, B = a, b.shift(k, -1)
    rhs_deg = c.degree(k) + max(uj.degree(k) for uj in u)
    cands = _x_degree_candidates(A, B, k, rhs_deg)
    d = max(cands + [0])

    cols = _x_columns(A, B, k, d)
    q_cols = [-(c * uj) for uj in u]
    top = max(p.degree(k) for p in cols + q_cols)
    zero = RatFun.from_const(ring, 0)
    one = RatFun.from_const(ring, 1)
    rows = [[RatFun.from_poly(_uni_coeff(p, k, m)) for p in cols + q_cols]
            for m in range(top + 1)]
    _, nullspace = solve_affine(rows, [zero] * len(rows), zero, one,
                                lambda r: r.is_zero())

    best = None
    for vec in nullspace:
        sigma = vec[d + 1:]
        eff = -1
        for j, sg in enumerate(sigma):
            if not sg.is_zero():
                eff = j
        if eff < 1:
            continue
        if best is None or eff < best[0]:
            best = (eff, vec)
    if best is None:
        return None
    eff, vec = best
    sigma = list(vec[d + 1:d + 2 + eff])
    x = _poly_of_solution(vec[:d + 1], k, ring)
    R = RatFun.from_poly(B) * x / (RatFun.from_poly(c) * RatFun.from_poly(v))

    # mandatory certificate check: sum_j sigma_j s_j = R(k+1) rk - R
    lhs = RatFun.from_const(ring, 0)
    for j, sg in enumerate(sigma):
        lhs = lhs + sg * s[j]
    if not (lhs - (R.shift(k, 1) * rk - R)).is_zero():
        raise RuntimeError("internal error: telescoping certificate failed"
                           " verification")

    param_ring = tuple(x for x in ring if x != k)
    eq = LinearOperatorEq(n, SHIFT,
                          [ratfun_change_ring(sg, param_ring) for sg in sigma])
    return TelescopeResult(
        equation=eq, certificate=R, order=eq.order, sigma=tuple(sigma),
        method="creative-telescoping-sum",
        provenance={"route": "hypergeometric", "ansatz_order": eff,
                    "ansatz_degree": d})


def sum_initial_values(sum_expr, var: str, count: int,
                       registry=None) -> List[RatFun]:
    """First `count` values of a definite sum, by direct evaluation of the
    summand over the stated bounds (with a vanishing-window check)."""
    from .oracle import brute_sum

    if isinstance(sum_expr, str):
        sum_expr = parse(sum_expr)
    if sum_expr.kind != SUM:
        raise ValueError("expected a sum")
    ring = tuple(sorted(sum_expr.free_symbols() - {var}))
    return [brute_sum(sum_expr, {var: Fraction(j)}, ring, registry)
            for j in range(count)]
