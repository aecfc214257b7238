"""Right factors of operator polynomials in one operator variable.

An order-m operator p may split as l*q in the noncommutative ring; q is a
right factor exactly when right division of p by q leaves no remainder.
Factors are searched with an ansatz: a monic candidate of order r whose
coefficients are rational functions u_i/u_r with bounded numerator and
denominator degrees.  Reducing Op^i modulo the candidate is kept fraction
free, so the remainder conditions become commutative polynomial systems in
the unknown ansatz coefficients; rational solutions are read off by linear
elimination, univariate rational roots, and a lex Groebner basis restart
when neither applies.  Completeness over all degree bounds is not claimed.

A factor compatible with a function's initial data (deep series or table
residual check) yields a lower-order valid equation; iterating gives the
lowest-order equation reachable by right-factor extraction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import (DegreeBoundExceeded, DiagnosticAbort, EvaluationPole,
                     NotTwoTerm, PoleAtExpansionPoint, SingularPoint)
from .expr import SUM, Expr, ex_num, parse, subs_symbol
from .groebner import GroebnerConfig, groebner
from .operator import DIFF, SHIFT, LinearOperatorEq
from .ore import (OrePoly, OreRing, TermOrder, coefficient_polys,
                  content_free, graded_order, lift_to_ore, nc_mul)
from .poly import (MultiPoly, RatFun, change_ring, poly_gcd, poly_lcm,
                   rational_roots)
from .series import SeriesPrefix, check_annihilates


# -- univariate views ---------------------------------------------------------


def _single_opname(p: OrePoly, q: Optional[OrePoly] = None) -> str:
    used = {o for o in p.ring.ops if p.uses(o)}
    if q is not None:
        used |= {o for o in q.ring.ops if q.uses(o)}
    if len(used) != 1:
        raise ValueError("expected operator polynomials univariate in one"
                         f" operator generator, found {sorted(used)}")
    return used.pop()


def _eq_kind(ring_kind: str) -> str:
    return DIFF if ring_kind == "diff" else SHIFT


def _raw_equation(p: OrePoly, opname: str) -> LinearOperatorEq:
    """Coefficient view of p as an equation; no normalization applied."""
    ring = p.ring
    base, kind = ring.op_info(opname)
    oi = ring.ops.index(opname)
    coeffs: Dict[int, MultiPoly] = {}
    for op_e, poly in coefficient_polys(p).items():
        if any(e and i != oi for i, e in enumerate(op_e)):
            raise ValueError(f"not univariate in {opname}")
        coeffs[op_e[oi]] = poly
    if not coeffs:
        return LinearOperatorEq.zero(base, _eq_kind(kind))
    m = max(coeffs)
    zero = MultiPoly.zero(ring.bases)
    return LinearOperatorEq.from_polys(
        base, _eq_kind(kind), [coeffs.get(i, zero) for i in range(m + 1)])


def _assemble(ring: OreRing, opname: str,
              coeffs: Dict[int, MultiPoly]) -> OrePoly:
    terms: Dict[tuple, Fraction] = {}
    for i, cpoly in coeffs.items():
        if cpoly.is_zero():
            continue
        cpoly = change_ring(cpoly, ring.bases)
        tail = tuple(i if o == opname else 0 for o in ring.ops)
        for exps, c in cpoly.terms.items():
            terms[tuple(exps) + tail] = c
    return OrePoly(ring, terms)


def _ore_from_eq(eq: LinearOperatorEq, ring: OreRing, opname: str) -> OrePoly:
    coeffs = {}
    for i, c in enumerate(eq.coeffs):
        if c.is_zero():
            continue
        if not c.is_poly():
            raise ValueError("coefficient is not polynomial; no exact"
                             " operator form exists")
        coeffs[i] = c.as_poly()
    return _assemble(ring, opname, coeffs)


def _poly_as_ore(ring: OreRing, mp: MultiPoly) -> OrePoly:
    return _assemble(ring, ring.ops[0], {0: mp}) if ring.ops else \
        OrePoly(ring, dict(change_ring(mp, ring.bases).terms))


def _equation_of(p: OrePoly, opname: Optional[str] = None) -> LinearOperatorEq:
    """Scalar equation for a univariate operator polynomial, coefficients
    content-free with canonical sign."""
    if opname is None:
        opname = _single_opname(p)
    p = content_free(p).normalized(graded_order(p.ring))
    eq = _raw_equation(p, opname)
    polys = eq.cleared(remove_common=False)
    used = sorted({v for q in polys for v in q.vars if q.degree(v) > 0}
                  | {eq.variable})
    return LinearOperatorEq.from_polys(
        eq.variable, eq.kind, [change_ring(q, tuple(used)) for q in polys])


# -- exact right division ----------------------------------------------------


def nc_divide_right(p: OrePoly, q: OrePoly) -> Tuple[OrePoly, OrePoly]:
    """p = nc_mul(quotient, q) + remainder with order(remainder) < order(q).

    Unique; raises ValueError when the exact quotient or remainder needs
    nonpolynomial coefficients (the division itself runs over the rational
    function field)."""
    if p.ring != q.ring:
        raise ValueError("operands live in different rings")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero operator")
    opname = _single_opname(p, q)
    quot, rem = _raw_equation(p, opname).right_divmod(_raw_equation(q, opname))
    return (_ore_from_eq(quot, p.ring, opname),
            _ore_from_eq(rem, p.ring, opname))


@dataclass(frozen=True)
class Factorization:
    """content * original = nc_mul(left, right); content is commutative,
    pulled out front so both factors keep polynomial coefficients."""

    left: OrePoly
    right: OrePoly
    content: MultiPoly

    def reexpanded(self) -> OrePoly:
        return nc_mul(self.left, self.right)


def cofactor_of(p: OrePoly, right: OrePoly) -> Factorization:
    """Reconstruct the left cofactor of a known right factor, clearing
    denominators into the commutative content."""
    opname = _single_opname(p, right)
    pe = _raw_equation(p, opname)
    qe = _raw_equation(right, opname)
    quot, rem = pe.right_divmod(qe)
    if not rem.is_zero():
        raise ValueError("not a right factor: remainder is nonzero")
    den = MultiPoly.const(pe.ring_vars, 1)
    for c in quot.coeffs:
        den = poly_lcm(den, c.den)
    left = _ore_from_eq(
        quot.map_coeffs(lambda c: c * RatFun.from_poly(den)), p.ring, opname)
    content = change_ring(den, p.ring.bases)
    fact = Factorization(left, right, content)
    if fact.reexpanded() != nc_mul(_poly_as_ore(p.ring, content), p):
        raise RuntimeError("cofactor re-expansion failed")
    return fact


# -- ansatz construction ------------------------------------------------------


def _param_monomials(params: tuple, dp: int) -> List[tuple]:
    if not params:
        return [()]
    out: List[tuple] = []

    def rec(i, left, acc):
        if i == len(params):
            out.append(tuple(acc))
            return
        for e in range(left + 1):
            acc.append(e)
            rec(i + 1, left - e, acc)
            acc.pop()

    rec(0, dp, [])
    return out


def _build_profile(ring: OreRing, base: str, params: tuple, r: int,
                   dn: int, dd: int, dp: int):
    """Ansatz coefficients u_0..u_r over an extended ring with one variable
    per unknown; u_r is the common denominator, monic of degree dd in the
    base variable and free of parameters."""
    pmono = _param_monomials(params, dp)
    unknowns = [f"@w{t}" for t in range(dd)]
    for i in range(r):
        for t in range(dn + 1):
            for s in range(len(pmono)):
                unknowns.append(f"@u{i}_{t}_{s}")
    ext = ring.bases + tuple(unknowns)
    bi = ext.index(base)
    pidx = [ext.index(name) for name in params]

    def mono(bexp, pexps, uname):
        e = [0] * len(ext)
        e[bi] = bexp
        for ix, pe in zip(pidx, pexps):
            e[ix] = pe
        if uname is not None:
            e[ext.index(uname)] = 1
        return tuple(e)

    terms = {mono(dd, (0,) * len(params), None): Fraction(1)}
    for t in range(dd):
        terms[mono(t, (0,) * len(params), f"@w{t}")] = Fraction(1)
    us: List[MultiPoly] = []
    for i in range(r):
        t2 = {}
        for t in range(dn + 1):
            for s, pe in enumerate(pmono):
                t2[mono(t, pe, f"@u{i}_{t}_{s}")] = Fraction(1)
        us.append(MultiPoly(ext, t2))
    us.append(MultiPoly(ext, terms))
    return us, tuple(unknowns), ext


def _remainder_system(cp: Dict[int, MultiPoly], m: int, r: int,
                      us: List[MultiPoly], base: str, ring_kind: str,
                      ext: tuple) -> List[MultiPoly]:
    """Polynomial conditions equivalent to: the monic candidate with
    coefficients us[i]/us[r] right-divides the operator with coefficients cp.

    Op^i mod candidate is a row of rational functions with denominator a
    product of (shifted) powers of us[r]; rows are stored cleared, so the
    final conditions are polynomial in the unknowns."""
    ur = us[r]
    zero = MultiPoly.zero(ext)
    rows: Dict[int, Dict[int, MultiPoly]] = {r: {j: -us[j] for j in range(r)}}
    if ring_kind == "diff":
        urd = ur.derivative(base)
        for i in range(r, m):
            cur = rows[i]
            e = i - r + 1
            nxt = {}
            for j in range(r):
                t = cur[j].derivative(base) * ur - cur[j] * urd.scale(e)
                if j:
                    t = t + cur[j - 1] * ur
                nxt[j] = t - cur[r - 1] * us[j]
            rows[i + 1] = nxt
        ratios = {i: ur ** (m - i) for i in range(r, m + 1)}
        tm = ur ** (m - r + 1)
    else:
        for i in range(r, m):
            cur = rows[i]
            nxt = {}
            for j in range(r):
                t = cur[j - 1].shift(base, 1) * ur if j else zero
                nxt[j] = t - cur[r - 1].shift(base, 1) * us[j]
            rows[i + 1] = nxt
        shifted = [ur.shift(base, t) for t in range(m - r + 1)]
        tm = MultiPoly.const(ext, 1)
        for s in shifted:
            tm = tm * s
        ratios = {}
        for i in range(r, m + 1):
            acc = MultiPoly.const(ext, 1)
            for t in range(i - r + 1, m - r + 1):
                acc = acc * shifted[t]
            ratios[i] = acc
    conds = []
    for j in range(r):
        total = cp[j] * tm if j in cp else zero
        for i in range(r, m + 1):
            if i in cp and not rows[i][j].is_zero():
                total = total + cp[i] * rows[i][j] * ratios[i]
        conds.append(total)
    return conds


def _coefficient_system(conds: List[MultiPoly], nb: int,
                        unknowns: tuple) -> List[MultiPoly]:
    polys: List[MultiPoly] = []
    seen = set()
    for cond in conds:
        buckets: Dict[tuple, dict] = {}
        for e, c in cond.terms.items():
            buckets.setdefault(e[:nb], {})[e[nb:]] = c
        for t in buckets.values():
            q = MultiPoly(unknowns, t).primitive()
            if q.is_zero():
                continue
            key = tuple(sorted(q.terms.items()))
            if key not in seen:
                seen.add(key)
                polys.append(q)
    return polys


# -- linear prefix conditions pinning the ansatz to one function -------------


def _guide_prefixes(f, var: str, kind: str, depth: int, point,
                    registry) -> List[tuple]:
    """Concrete local data for f as (param assignment, start, coefficients)
    triples with Fraction coefficients.  Symbols of f other than var are
    specialized over a small integer window; specializations whose data is
    not exactly rational are skipped.  Best effort: an empty list just
    means no pinning conditions are available."""
    if isinstance(f, SeriesPrefix):
        if f.variable != var or f.kind != kind:
            return []
        try:
            cs = tuple(c if isinstance(c, Fraction) else c.eval_frac({})
                       for c in f.coeffs)
        except Exception:
            return []
        return [({}, Fraction(f.point), cs)]
    if isinstance(f, str):
        f = parse(f)
    pnames = sorted(f.free_symbols() - {var})
    if pnames:
        width = 8 if len(pnames) == 1 else 3
        combos = [dict(zip(pnames, c))
                  for c in itertools.product(range(width), repeat=len(pnames))]
    else:
        combos = [{}]
    out = []
    for assign in combos:
        g = f
        for name, k in assign.items():
            g = subs_symbol(g, name, ex_num(k))
        try:
            if kind == DIFF:
                from .oracle import series_of_expr

                pt = Fraction(0) if point is None else Fraction(point)
                prefix = None
                for _ in range(6):
                    try:
                        prefix = series_of_expr(g, var, pt, depth, registry)
                        break
                    except PoleAtExpansionPoint:
                        if point is not None:
                            raise
                        pt += 1
                if prefix is None:
                    continue
                cs = tuple(c if isinstance(c, Fraction) else c.eval_frac({})
                           for c in prefix.coeffs)
                out.append((assign, Fraction(prefix.point), cs))
            else:
                from .hyper import sum_initial_values
                from .oracle import sequence_term

                start = 0 if point is None else int(point)
                if isinstance(g, Expr) and g.kind == SUM:
                    vals = sum_initial_values(g, var, start + depth,
                                              registry)[start:]
                else:
                    vals = [sequence_term(g, {var: Fraction(start + i)},
                                          (var,), registry).extract()
                            for i in range(depth)]
                cs = tuple(v if isinstance(v, Fraction) else v.eval_frac({})
                           for v in vals)
                out.append((assign, Fraction(start), cs))
        except Exception:
            continue
    return out


def _series_factors(cs: tuple, i: int) -> List[Fraction]:
    """Coefficients of the i-th derivative of the series with prefix cs."""
    out = []
    for j in range(len(cs) - i):
        fac = cs[j + i]
        for m in range(1, i + 1):
            fac *= (j + m)
        out.append(fac)
    return out


def _prefix_rows(prefixes: List[tuple], us: List[MultiPoly], base: str,
                 kind: str, ext: tuple, nb: int,
                 unknowns: tuple) -> List[MultiPoly]:
    """Vanishing conditions from applying the ansatz to each concrete
    prefix, as polynomials linear in the unknowns.  Built by direct term
    accumulation: ansatz coefficients are linear in the unknowns, so each
    row splits by residual base exponents into unknown-linear rows."""
    r = len(us) - 1
    bi = ext.index(base)
    rows_out: List[MultiPoly] = []
    for assign, start, cs in prefixes:
        d = len(cs)
        if d <= r:
            continue
        limit = d - r
        aidx = {}
        for name, v in assign.items():
            if name in ext:
                aidx[ext.index(name)] = Fraction(v)
        # rows[t]: (residual base exps, unknown exps) -> coefficient
        rows: List[Dict[tuple, Fraction]] = [dict() for _ in range(limit)]
        if kind == DIFF:
            dvals = [_series_factors(cs, i) for i in range(r + 1)]
            for i, u in enumerate(us):
                dv = dvals[i]
                shifted = u.shift(base, start) if start else u
                for e, c in shifted.terms.items():
                    xdeg = e[bi]
                    v = c
                    res = list(e[:nb])
                    res[bi] = 0
                    for pos, pval in aidx.items():
                        if pos < nb and res[pos]:
                            v *= pval ** res[pos]
                            res[pos] = 0
                    key = (tuple(res), e[nb:])
                    for j in range(min(len(dv), limit - xdeg)):
                        if dv[j]:
                            t = rows[xdeg + j]
                            s = t.get(key, Fraction(0)) + v * dv[j]
                            if s:
                                t[key] = s
                            else:
                                t.pop(key, None)
        else:
            for i, u in enumerate(us):
                for e, c in u.terms.items():
                    xdeg = e[bi]
                    v = c
                    res = list(e[:nb])
                    res[bi] = 0
                    for pos, pval in aidx.items():
                        if pos < nb and res[pos]:
                            v *= pval ** res[pos]
                            res[pos] = 0
                    key = (tuple(res), e[nb:])
                    for s_at in range(limit):
                        f = cs[s_at + i]
                        if not f:
                            continue
                        if xdeg:
                            f *= (start + s_at) ** xdeg
                        t = rows[s_at]
                        sval = t.get(key, Fraction(0)) + v * f
                        if sval:
                            t[key] = sval
                        else:
                            t.pop(key, None)
        for t in rows:
            buckets: Dict[tuple, dict] = {}
            for (res, mu), c in t.items():
                buckets.setdefault(res, {})[mu] = c
            for part in buckets.values():
                q = MultiPoly(unknowns, part).primitive()
                if not q.is_zero():
                    rows_out.append(q)
    return rows_out


def _linear_solve(conds: List[MultiPoly], unknowns: tuple):
    """Gauss-reduce the degree <= 1 members of conds over the rationals.
    Returns ("inconsistent", None), ("unique", assignment), or
    ("under", None) when unknowns remain free."""
    n = len(unknowns)
    pivots: Dict[int, List[Fraction]] = {}
    for p in conds:
        if p.total_degree() > 1:
            continue
        vec = [Fraction(0)] * (n + 1)
        for e, c in p.terms.items():
            pos = [i for i, k in enumerate(e) if k]
            vec[pos[0] if pos else n] = c
        for col in sorted(pivots):
            if vec[col]:
                pv = pivots[col]
                f = vec[col] / pv[col]
                vec = [a - f * b for a, b in zip(vec, pv)]
        lead = next((i for i in range(n) if vec[i]), None)
        if lead is None:
            if vec[n]:
                return "inconsistent", None
            continue
        pivots[lead] = vec
    if len(pivots) < n:
        return "under", None
    vals: Dict[int, Fraction] = {}
    for col in sorted(pivots, reverse=True):
        vec = pivots[col]
        acc = vec[n]
        for j in range(col + 1, n):
            if vec[j]:
                acc += vec[j] * vals[j]
        vals[col] = -acc / vec[col]
    return "unique", {unknowns[i]: vals[i] for i in range(n)}


# -- rational points of small polynomial systems -----------------------------


def _only_var(p: MultiPoly, zi: int) -> bool:
    return all(all(x == 0 for i, x in enumerate(e) if i != zi)
               for e in p.terms) and p.degree(p.vars[zi]) > 0


def _comm_groebner(polys: List[MultiPoly], unknowns: tuple) -> List[MultiPoly]:
    # an operator-free ring makes Buchberger plain commutative; tight caps
    # so a blowing-up profile aborts quickly and the sweep moves on
    ring = OreRing.make([], params=list(unknowns))
    order = TermOrder.lex(ring, *unknowns)
    gens = [OrePoly(ring, dict(p.terms)) for p in polys]
    basis = groebner(gens, order, GroebnerConfig(max_basis=60, max_degree=24))
    return [MultiPoly(unknowns, dict(g.terms)) for g in basis]


def _rational_solutions(system: List[MultiPoly], unknowns: tuple,
                        cap: int = 64) -> List[Dict[str, Fraction]]:
    """Rational points of the system; positive-dimensional components are
    sampled at small rational representatives, never enumerated."""
    sols: List[Dict[str, Fraction]] = []

    def resolve(fixed, pending):
        out = dict(fixed)
        for name, expr in reversed(pending):
            out[name] = expr.eval_frac(out)
        return out

    def walk(polys, fixed, pending, gb_done):
        if len(sols) >= cap:
            return
        polys = [p for p in polys if not p.is_zero()]
        if any(p.is_constant() for p in polys):
            return
        solved = set(fixed) | {name for name, _ in pending}
        live = [z for z in unknowns if z not in solved]
        if not polys:
            probe = live[:4]
            for combo in itertools.product((Fraction(0), Fraction(1)),
                                           repeat=len(probe)):
                if len(sols) >= cap:
                    return
                fx = dict(fixed)
                fx.update(dict(zip(probe, combo)))
                for z in live[4:]:
                    fx[z] = Fraction(0)
                sols.append(resolve(fx, pending))
            return
        for p in polys:
            if p.total_degree() == 1:
                cand = [i for i, z in enumerate(unknowns)
                        if p.degree(z) > 0]
                zi = cand[0]
                unit = tuple(1 if i == zi else 0 for i in range(len(unknowns)))
                coef = p.terms[unit]
                rest = MultiPoly(unknowns,
                                 {e: c for e, c in p.terms.items() if e != unit})
                expr = rest.scale(Fraction(-1) / coef)
                nxt = [q.subs({unknowns[zi]: expr}) for q in polys if q is not p]
                walk(nxt, fixed, pending + [(unknowns[zi], expr)], False)
                return
        for z in live:
            zi = unknowns.index(z)
            uni = [p for p in polys if _only_var(p, zi)]
            if not uni:
                continue
            g = uni[0]
            for p in uni[1:]:
                g = poly_gcd(g, p)
            if g.is_constant():
                return
            for root in rational_roots(g, z):
                nxt = [q.subs({z: root}) for q in polys]
                walk(nxt, {**fixed, z: root}, pending, False)
            return
        if not gb_done:
            walk(_comm_groebner(polys, unknowns), fixed, pending, True)
            return
        # positive-dimensional and not triangular: sample the least variable
        z = live[-1]
        for val in (Fraction(0), Fraction(1)):
            nxt = [q.subs({z: val}) for q in polys]
            walk(nxt, {**fixed, z: val}, pending, False)

    walk(system, {}, [], False)
    return sols


# -- factor search ------------------------------------------------------------


def _factor_stream(p: OrePoly, r: int, degree_bound: Optional[int],
                   guide=None):
    """Yield (level, factor) pairs, sweeping ansatz degree profiles by
    increasing total degree; factors are canonical, verified, deduplicated.
    guide, when given, maps (us, unknowns, ext) to extra polynomial
    conditions on the unknowns; it must be sound for the factors wanted
    (a family of factors can be positive-dimensional, and the plain sweep
    only samples it).  Raises DegreeBoundExceeded at exhaustion if a
    profile aborted and nothing was found."""
    opname = _single_opname(p)
    ring = p.ring
    base, ring_kind = ring.op_info(opname)
    p = content_free(p).normalized(graded_order(ring))
    m = p.degree(opname)
    if not 1 <= r <= m:
        raise ValueError(f"factor order {r} outside 1..{m}")
    if r == m:
        yield 0, p
        return
    cp = {i: c for i, c in enumerate(
        [q.as_poly() for q in _raw_equation(p, opname).coeffs])
        if not c.is_zero()}
    if degree_bound is None:
        degree_bound = max(c.degree(base) for c in cp.values()) + r
    params = tuple(b for b in ring.bases if b != base and p.uses(b))
    dp_max = degree_bound if params else 0
    pe = _raw_equation(p, opname)
    nb = len(ring.bases)
    found: Dict[OrePoly, None] = {}
    aborted = False
    for total in range(2 * degree_bound + dp_max + 1):
        for dd in range(min(degree_bound, total) + 1):
            for dn in range(min(degree_bound, total - dd) + 1):
                dp = total - dd - dn
                if dp > dp_max:
                    continue
                try:
                    us, unknowns, ext = _build_profile(
                        ring, base, params, r, dn, dd, dp)
                    gconds = None
                    if guide is not None:
                        gconds = guide(us, unknowns, ext)
                    if gconds:
                        status, gsol = _linear_solve(gconds, unknowns)
                        if status == "inconsistent":
                            continue
                        if status == "unique":
                            # the pinning conditions leave exactly one
                            # candidate; the division check below decides
                            # it, no polynomial system needed
                            sols = [gsol]
                        else:
                            cpe = {i: change_ring(c, ext)
                                   for i, c in cp.items()}
                            conds = _remainder_system(cpe, m, r, us, base,
                                                      ring_kind, ext)
                            system = _coefficient_system(conds, nb, unknowns)
                            sols = _rational_solutions(system + gconds,
                                                       unknowns)
                    else:
                        cpe = {i: change_ring(c, ext) for i, c in cp.items()}
                        conds = _remainder_system(cpe, m, r, us, base,
                                                  ring_kind, ext)
                        system = _coefficient_system(conds, nb, unknowns)
                        sols = _rational_solutions(system, unknowns)
                except DiagnosticAbort:
                    aborted = True
                    continue
                for sol in sols:
                    coeffs = {}
                    for i, u in enumerate(us):
                        val = change_ring(u.subs(sol), ring.bases)
                        if not val.is_zero():
                            coeffs[i] = val
                    q = _assemble(ring, opname, coeffs)
                    q = content_free(q).normalized(graded_order(ring))
                    if q in found or q.degree(opname) != r:
                        continue
                    if not pe.right_divmod(_raw_equation(q, opname))[1].is_zero():
                        continue
                    cofactor_of(p, q)
                    found[q] = None
                    yield total, q
    if not found and aborted:
        raise DegreeBoundExceeded(
            "factor search aborted before exhausting the degree bound")


def right_factors(p: OrePoly, r: int,
                  degree_bound: Optional[int] = None) -> List[OrePoly]:
    """Monic right factor classes of order r, each returned as its primitive
    integer-coefficient representative; sorted canonically.

    The ansatz degree profiles are swept by increasing total; the sweep
    stops after the first level that produces factors, so the result holds
    the factors of least ansatz complexity within the bound."""
    found: List[OrePoly] = []
    first_level = None
    for level, q in _factor_stream(p, r, degree_bound):
        if first_level is None:
            first_level = level
        elif level > first_level:
            break
        found.append(q)
    return sorted(found, key=lambda q: str(q))


# -- compatibility with a function's local data -------------------------------


def _lead_at(eq: LinearOperatorEq, pt: Fraction) -> bool:
    """True when the leading coefficient does not vanish at the point."""
    lead = eq.coeff(eq.order)
    try:
        return not lead.subs({eq.variable: pt}).is_zero()
    except ZeroDivisionError:
        return False


def _regular_point(eq: LinearOperatorEq, point) -> Fraction:
    if point is not None:
        pt = Fraction(point)
        if not _lead_at(eq, pt):
            raise SingularPoint(
                f"leading coefficient vanishes at {eq.variable} = {pt}")
        return pt
    for t in range(60):
        if _lead_at(eq, Fraction(t)):
            return Fraction(t)
    raise SingularPoint("no regular expansion point found")


def compatible(candidate, f, point=None, depth: int = 30,
               registry=None) -> bool:
    """True when the candidate equation annihilates the function's exact
    local data (series prefix or value table) to the given depth.

    Discrete parameters of a differential candidate are specialized over a
    window of integer values, since series extraction needs concrete
    indices; a shift candidate is checked symbolically in its parameters."""
    if isinstance(candidate, OrePoly):
        eq = _equation_of(candidate)
    else:
        eq = candidate
    if eq.is_zero():
        return True
    if isinstance(f, SeriesPrefix):
        if f.variable != eq.variable or f.kind != eq.kind:
            raise ValueError("prefix disagrees with candidate on variable"
                             " or kind")
        ok, _ = check_annihilates(eq, f)
        return ok
    if isinstance(f, str):
        f = parse(f)

    if eq.kind == DIFF:
        from .oracle import series_of_expr

        pt = _regular_point(eq, point)
        pnames = [v for v in eq.params() if v in f.free_symbols()]
        if pnames:
            width = 8 if len(pnames) == 1 else 3
            windows = itertools.product(range(width), repeat=len(pnames))
        else:
            windows = [()]
        for combo in windows:
            asg = dict(zip(pnames, combo))
            f_spec = f
            for name, k in asg.items():
                f_spec = subs_symbol(f_spec, name, ex_num(k))
            eq_spec = eq.map_coeffs(
                lambda c: c.subs({n: Fraction(k) for n, k in asg.items()})
            ) if asg else eq
            if eq_spec.is_zero():
                continue
            prefix = None
            probe = pt
            for _ in range(6):
                try:
                    prefix = series_of_expr(f_spec, eq.variable, probe,
                                            depth + eq.order, registry)
                    break
                except PoleAtExpansionPoint:
                    if point is not None:
                        raise
                    probe += 1
                    if not _lead_at(eq_spec, probe):
                        probe += 1
            if prefix is None:
                raise SingularPoint("no regular point clears the function's"
                                    " poles")
            ok, _ = check_annihilates(eq_spec, prefix)
            if not ok:
                return False
        return True

    from .hyper import sum_initial_values
    from .oracle import sequence_term

    pt = _regular_point(eq, point)
    start = int(pt)
    count = depth + eq.order
    if isinstance(f, Expr) and f.kind == SUM:
        vals = sum_initial_values(f, eq.variable, start + count,
                                  registry)[start:]
    else:
        ring = tuple(sorted(f.free_symbols() - {eq.variable}))
        vals = [sequence_term(f, {eq.variable: Fraction(start + i)}, ring,
                              registry).extract() for i in range(count)]
    prefix = SeriesPrefix(eq.variable, SHIFT, Fraction(start), tuple(vals))
    ok, _ = check_annihilates(eq, prefix)
    return ok


# -- normal form --------------------------------------------------------------


def _ring_for(eq: LinearOperatorEq) -> OreRing:
    opname = "D" if eq.kind == DIFF else "N"
    names = set(eq.ring_vars)
    while opname in names:
        opname += "_"
    params = [v for v in eq.ring_vars if v != eq.variable]
    kind = "diff" if eq.kind == DIFF else "shift"
    return OreRing.make([(opname, eq.variable, kind)], params=params)


def normal_form(eq: LinearOperatorEq, f, degree_bound: Optional[int] = None,
                point=None, depth: int = 30,
                registry=None) -> LinearOperatorEq:
    """Lowest-order equation reachable from eq by extracting right factors
    that stay compatible with f's initial data.  Idempotent."""
    current = eq
    prefixes = _guide_prefixes(f, eq.variable, eq.kind,
                               depth + eq.order, point, registry)
    while current.order > 1:
        ring = _ring_for(current)
        lifted = lift_to_ore(current, ring)
        nb = len(ring.bases)
        guide = None
        if prefixes:
            def guide(us, unknowns, ext, _p=prefixes, _nb=nb,
                      _var=current.variable, _kind=current.kind):
                return _prefix_rows(_p, us, _var, _kind, ext, _nb, unknowns)
        step = None
        for r in range(1, current.order):
            try:
                # consume the full sweep, not just the first hit level: the
                # factor matching f's branch may carry higher coefficient
                # degrees than the factors of the pure branches, and prefix
                # conditions cut a positive-dimensional factor family down
                # to the members annihilating f
                for _, q in _factor_stream(lifted, r, degree_bound, guide):
                    qeq = _equation_of(q)
                    if compatible(qeq, f, point=point, depth=depth,
                                  registry=registry):
                        step = qeq
                        break
            except DegreeBoundExceeded as exc:
                raise DegreeBoundExceeded(
                    f"normal form not certified minimal: {exc}")
            if step is not None:
                break
        if step is None:
            return current
        current = step
    return current


# -- explicit solutions of two-term recurrences -------------------------------


@dataclass(frozen=True)
class TwoTermSolution:
    """a(var + gap) = ratio(var) * a(var), one branch per residue class."""

    variable: str
    gap: int
    low: int
    ratio: RatFun

    def coefficient(self, n: int, start: int = 0,
                    params: Optional[Dict[str, Fraction]] = None) -> Fraction:
        """Multiplier of a(start) in a(n) along the branch of start."""
        if n < start or (n - start) % self.gap:
            raise ValueError(f"{n} not reachable from {start} by steps"
                             f" of {self.gap}")
        acc = Fraction(1)
        asg = dict(params or {})
        t = start
        while t < n:
            asg[self.variable] = Fraction(t)
            try:
                acc *= self.ratio.eval_frac(asg)
            except ZeroDivisionError:
                raise EvaluationPole(f"term ratio undefined at"
                                     f" {self.variable} = {t}")
            t += self.gap
        return acc

    def closed_form(self, initial="1") -> str:
        var = self.variable
        one_up = RatFun.from_poly(
            MultiPoly.var(self.ratio.vars, var) +
            MultiPoly.const(self.ratio.vars, 1)) \
            if var in self.ratio.vars else None
        if self.ratio.is_constant() and self.gap == 1:
            c = self.ratio.constant_value()
            body = f"{c}^{var}" if c > 0 and c.denominator == 1 \
                else f"({c})^{var}"
        elif self.gap == 1 and one_up is not None and self.ratio == one_up:
            body = f"{var}!"
        else:
            body = f"prod({self.ratio}, {var} in steps of {self.gap})"
        if str(initial) in ("", "1"):
            return body
        return f"{initial}*{body}"


def solve_two_term(eq: LinearOperatorEq) -> TwoTermSolution:
    """Explicit hypergeometric-term solution of a recurrence whose support
    is exactly two shifts."""
    if eq.kind != SHIFT:
        raise ValueError("two-term solving applies to shift equations")
    nz = [i for i, c in enumerate(eq.coeffs) if not c.is_zero()]
    if len(nz) != 2:
        raise NotTwoTerm(f"equation supports {len(nz)} shifts, need exactly 2")
    lo, hi = nz
    ratio = -(eq.coeff(lo) / eq.coeff(hi)).shift(eq.variable, -lo)
    return TwoTermSolution(eq.variable, hi - lo, lo, ratio)
