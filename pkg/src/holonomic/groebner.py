"""Left Groebner bases in operator algebras, elimination, and creative
telescoping for sums and integrals.

Reduction and S-polynomials work exactly as in the commutative case on
leading monomials: the commutator tails produced while normal-ordering are
strictly smaller than the product monomial under every admissible order, so
multiplying a generator by a monomial never disturbs its leading term.
Buchberger's product criterion is NOT applied (it is unsound in general once
tails appear); pairs are processed by minimal lcm of leading monomials with
a deterministic queue.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import (DiagnosticAbort, InadmissibleOrder, NoKFreeElement,
                     NoXFreeElement)
from .hyper import TelescopeResult
from .operator import DIFF, SHIFT, LinearOperatorEq
from .ore import (DIFF_PAIR, SHIFT_PAIR, OrePoly, OreRing, TermOrder,
                  content_free, graded_order, nc_mul)
from .poly import MultiPoly, RatFun, change_ring


@dataclass(frozen=True)
class GroebnerConfig:
    """Safety valves: abort loudly instead of hanging on blowups."""

    max_basis: int = 400
    max_degree: int = 120


DEFAULT_CONFIG = GroebnerConfig()


@dataclass(frozen=True)
class LeftIdealBasis:
    ring: OreRing
    order: TermOrder
    generators: Tuple[OrePoly, ...]
    is_groebner: bool = False

    def __iter__(self):
        return iter(self.generators)


def _mono_divides(a: Tuple[int, ...], b: Tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_poly(ring: OreRing, exps: Tuple[int, ...], coeff) -> OrePoly:
    return OrePoly(ring, {tuple(exps): Fraction(coeff)})


def left_reduce(p: OrePoly, basis, order: Optional[TermOrder] = None) -> OrePoly:
    """Total normal form: no term of the result is divisible by any basis
    leading monomial, and p minus the result lies in the left ideal."""
    if isinstance(basis, LeftIdealBasis):
        order = basis.order
        gens = basis.generators
    else:
        gens = tuple(g for g in basis if not g.is_zero())
        if order is None:
            raise ValueError("left_reduce needs a term order")
    leads = [g.leading(order) for g in gens]
    ring = p.ring
    remainder: Dict[Tuple[int, ...], Fraction] = {}
    work = p
    while not work.is_zero():
        t, c = work.leading(order)
        for g, (lt, lc) in zip(gens, leads):
            if _mono_divides(lt, t):
                shift = tuple(x - y for x, y in zip(t, lt))
                work = work - nc_mul(_mono_poly(ring, shift, c / lc), g)
                break
        else:
            remainder[t] = remainder.get(t, Fraction(0)) + c
            work = work - _mono_poly(ring, t, c)
    return OrePoly(ring, remainder)


def _head_reduce(p: OrePoly, gens: Sequence[OrePoly],
                 leads: Sequence[Tuple[Tuple[int, ...], Fraction]],
                 order: TermOrder) -> OrePoly:
    """Reduce only while the leading monomial is divisible; the result is a
    nonzero rational multiple of p modulo the left ideal, which is all
    Buchberger needs.  Zero detection is exact: a surviving leading monomial
    is irreducible, so the true normal form is nonzero too.

    Works on a mutable term dict with a lazy max-heap of candidate leading
    monomials, so each step costs the size of the subtracted multiple rather
    than the size of the whole intermediate polynomial."""
    if p.is_zero():
        return p
    ring = p.ring
    work: Dict[Tuple[int, ...], Fraction] = dict(
        p.normalized(order).terms)
    heap = [(tuple(-v for v in order.key(e)), e) for e in work]
    heapq.heapify(heap)
    while heap:
        _, t = heapq.heappop(heap)
        c = work.get(t)
        if not c:
            continue
        for g, (lt, lc) in zip(gens, leads):
            if _mono_divides(lt, t):
                shift = tuple(x - y for x, y in zip(t, lt))
                delta = nc_mul(_mono_poly(ring, shift, c / lc), g)
                for e, dc in delta.terms.items():
                    cur = work.get(e)
                    if cur is None:
                        work[e] = -dc
                        heapq.heappush(
                            heap, (tuple(-v for v in order.key(e)), e))
                    else:
                        nv = cur - dc
                        if nv:
                            work[e] = nv
                        else:
                            del work[e]
                break
        else:
            break  # leading monomial irreducible; work still holds it
    return OrePoly(ring, work)


def s_polynomial(f: OrePoly, g: OrePoly, order: TermOrder) -> OrePoly:
    tf, cf = f.leading(order)
    tg, cg = g.leading(order)
    lcm = tuple(max(a, b) for a, b in zip(tf, tg))
    mf = _mono_poly(f.ring, tuple(l - a for l, a in zip(lcm, tf)),
                    Fraction(1) / cf)
    mg = _mono_poly(g.ring, tuple(l - b for l, b in zip(lcm, tg)),
                    Fraction(1) / cg)
    return nc_mul(mf, f) - nc_mul(mg, g)


def _auto_reduce(basis: List[OrePoly], order: TermOrder) -> List[OrePoly]:
    """Minimal then fully tail-reduced basis, deterministically sorted."""
    basis = [g for g in basis if not g.is_zero()]
    # drop generators whose leading monomial another one divides
    keep: List[OrePoly] = []
    leads = [g.leading(order)[0] for g in basis]
    for i, g in enumerate(basis):
        t = leads[i]
        redundant = False
        for j, s in enumerate(leads):
            if i == j:
                continue
            if _mono_divides(s, t) and not (s == t and j > i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    # tail-reduce each against the others until stable
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            others = keep[:i] + keep[i + 1:]
            if not others:
                continue
            r = left_reduce(keep[i], others, order)
            if r.is_zero():
                keep.pop(i)
                changed = True
                break
            r = r.normalized(order)
            if r != keep[i]:
                keep[i] = r
                changed = True
    keep.sort(key=lambda g: order.key(g.leading(order)[0]))
    return keep


def groebner(gens: Sequence[OrePoly], order: TermOrder,
             config: GroebnerConfig = DEFAULT_CONFIG,
             until=None) -> LeftIdealBasis:
    """Buchberger on left ideals.  With `until` (a predicate on basis
    elements, used by the telescope drivers), the loop stops at the first
    element satisfying it and returns the partial basis unmarked; every
    element of a partial basis still lies in the ideal."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return LeftIdealBasis(order.ring, order, (), True)
    ring = gens[0].ring
    if order.ring != ring:
        raise InadmissibleOrder("term order declared over a different ring")
    for g in gens:
        if g.ring != ring:
            raise InadmissibleOrder("generators live in different rings")
    basis = []
    for g in gens:
        g = g.normalized(order)
        if g not in basis:
            basis.append(g)
    if until is not None and any(until(g) for g in basis):
        return LeftIdealBasis(ring, order, tuple(basis), False)
    queue: List[Tuple] = []
    leads = [g.leading(order) for g in basis]

    def push_pairs(j: int):
        tj = leads[j][0]
        for i in range(j):
            ti = leads[i][0]
            lcm = tuple(max(a, b) for a, b in zip(ti, tj))
            # total degree first keeps weight-zero variables from making
            # huge pairs look cheap under weighted orders
            heapq.heappush(queue, (sum(lcm), order.key(lcm), i, j))

    for j in range(len(basis)):
        push_pairs(j)
    while queue:
        _, _, i, j = heapq.heappop(queue)
        s = s_polynomial(basis[i], basis[j], order)
        r = _head_reduce(s, basis, leads, order)
        if r.is_zero():
            continue
        r = r.normalized(order)
        if r.total_degree() > config.max_degree:
            raise DiagnosticAbort(
                f"monomial degree {r.total_degree()} exceeds the cap"
                f" {config.max_degree}")
        basis.append(r)
        leads.append(r.leading(order))
        if until is not None and until(r):
            return LeftIdealBasis(ring, order, tuple(basis), False)
        if len(basis) > config.max_basis:
            raise DiagnosticAbort(
                f"basis size {len(basis)} exceeds the cap {config.max_basis}")
        push_pairs(len(basis) - 1)
    reduced = _auto_reduce(basis, order)
    return LeftIdealBasis(ring, order, tuple(reduced), True)


def same_left_ideal(a: Sequence[OrePoly], b: Sequence[OrePoly],
                    order: TermOrder,
                    config: GroebnerConfig = DEFAULT_CONFIG) -> bool:
    """Ideal equality by mutual reduction to zero."""
    ga = groebner(a, order, config)
    gb = groebner(b, order, config)
    return (all(left_reduce(p, gb).is_zero() for p in a)
            and all(left_reduce(p, ga).is_zero() for p in b))


def eliminate(basis: LeftIdealBasis, kill: Iterable[str]) -> List[OrePoly]:
    """Basis elements free of the kill variables.  The basis must have been
    computed under an order ranking the kill variables highest; empty output
    is a legal answer."""
    kill = set(kill)
    for name in kill:
        if name not in basis.ring.gens:
            raise ValueError(f"{name} is not a generator of the ring")
    _check_ranks_highest(basis.order, kill)
    out = [g for g in basis.generators
           if all(not g.uses(name) for name in kill)]
    return out


def _check_ranks_highest(order: TermOrder, kill: Set[str]):
    if not kill:
        return
    head = set(order.names[:len(kill)])
    if not kill <= head:
        raise ValueError(
            "elimination needs the kill variables most significant;"
            f" order ranks {order.names[:len(kill)]} first")
    if order.kind == "weighted":
        # kill variables must also dominate by weight
        wmap = dict(zip(order.names, order.weights))
        wmax = max((wmap.get(g, 0) for g in order.ring.gens
                    if g not in kill), default=0)
        for name in kill:
            if wmap[name] < max(wmax, 1):
                raise ValueError(
                    f"weighted order does not rank {name} highest")


# -- creative telescoping -----------------------------------------------------


def _collect_candidates(free: Sequence[OrePoly], ring: OreRing,
                        cert_op: str, value: Fraction,
                        outer_op: str) -> List[Tuple[OrePoly, OrePoly]]:
    cands = []
    for elem in free:
        sub = elem.subs_op(cert_op, value)
        if sub.is_zero():
            continue
        if any(sub.uses(op) for op in ring.ops if op != outer_op):
            continue
        cands.append((elem, sub))
    return cands


def _usable_predicate(ring: OreRing, core_var: str, cert_op: str,
                      value: Fraction, outer_op: str):
    """Stop condition for element hunting under weighted orders: a full
    reduced basis can be enormous there (zero-weight variables let leading
    monomials wander), but any intermediate ideal element already telescopes
    once it is core-free and survives the substitution."""

    def usable(g: OrePoly) -> bool:
        if g.uses(core_var):
            return False
        return bool(_collect_candidates([g], ring, cert_op, value, outer_op))

    return usable


def _short_repr(p: OrePoly, cap: int = 2000) -> str:
    s = str(p)
    if len(s) <= cap:
        return s
    return (f"<{len(p.terms)} terms, total degree {p.total_degree()},"
            " omitted for size>")


def _second_stage(free: Sequence[OrePoly], core_var: str, foreign: List[str],
                  outer_op: str, outer_var: str, cert_op: str,
                  config: GroebnerConfig) -> Tuple[List[OrePoly], TermOrder]:
    """The first elimination can leave every candidate carrying an operator
    acting on a spectator variable (a shift when a pure differential equation
    is wanted, or vice versa).  Those operators generate their own elimination
    problem inside the core_var-free subalgebra: rerun Buchberger on the free
    elements with the foreign operators most significant and drop them too."""
    ring = free[0].ring
    order2 = TermOrder.lex(ring, *foreign, core_var, outer_op, outer_var,
                           cert_op)
    basis2 = groebner(list(free), order2, config)
    return eliminate(basis2, set(foreign)), order2


def _ore_to_equation(p: OrePoly, outer_base: str, outer_op: str,
                     kind: str) -> LinearOperatorEq:
    ring = p.ring
    # scaling by a nonzero rational function keeps the annihilation property,
    # so report the content-free sign-normalized form
    p = content_free(p).normalized(graded_order(ring))
    oi = ring.index(outer_op)
    for op in ring.ops:
        if op != outer_op and p.uses(op):
            raise ValueError(f"element still uses operator {op}")
    vars_used = [b for b in ring.bases if p.uses(b)]
    eq_vars = tuple(sorted(set(vars_used) | {outer_base}))
    nb = len(ring.bases)
    by_order: Dict[int, Dict[Tuple[int, ...], Fraction]] = {}
    for e, c in p.terms.items():
        base_part = e[:nb]
        by_order.setdefault(e[oi], {})[base_part] = c
    top = max(by_order)
    coeffs = []
    for i in range(top + 1):
        poly = MultiPoly(ring.bases, by_order.get(i, {}))
        coeffs.append(RatFun.from_poly(change_ring(poly, eq_vars)))
    return LinearOperatorEq(outer_base, kind, coeffs)


def _central_split(p: OrePoly, op: str, value: Fraction):
    """p = (op - value)*q + r with r = p at op=value; sound because p is free
    of the operator's base variable, making op central in p's subalgebra."""
    ring = p.ring
    oi = ring.index(op)
    by_pow: Dict[int, Dict[Tuple[int, ...], Fraction]] = {}
    for e, c in p.terms.items():
        ne = list(e)
        ne[oi] = 0
        by_pow.setdefault(e[oi], {}).setdefault(tuple(ne), Fraction(0))
        by_pow[e[oi]][tuple(ne)] += c
    top = max(by_pow, default=0)

    def at_pow(d: int) -> OrePoly:
        return OrePoly(ring, by_pow.get(d, {}))

    op_poly = OrePoly.gen(ring, op)
    quot = OrePoly.zero(ring)
    carry = OrePoly.zero(ring)
    for d in range(top, 0, -1):
        carry = at_pow(d) + carry.scale(value)
        quot = quot + nc_mul(op_poly ** (d - 1), carry)
    rem = at_pow(0) + carry.scale(value)
    return quot, rem


def _pick_telescoped(cands: List[Tuple[OrePoly, OrePoly]], outer_op: str,
                     order: TermOrder) -> Tuple[OrePoly, OrePoly]:
    def rank(item):
        elem, sub = item
        return (sub.degree(outer_op), order.key(elem.leading(order)[0]))

    return min(cands, key=rank)


def telescope_sum(annihilators: Sequence[OrePoly], sum_var: str,
                  order: Optional[TermOrder] = None,
                  config: GroebnerConfig = DEFAULT_CONFIG,
                  full: bool = False):
    """Recurrence for s(n) = sum over sum_var of F; finite support in the
    summation variable is the caller's responsibility.

    The sum_var-free basis element T splits as T = P + (K-1)Q with
    P = T at K=1; P annihilates the sum and Q certifies the split."""
    if not annihilators:
        raise ValueError("no annihilators given")
    ring = annihilators[0].ring
    sum_op = ring.op_over(sum_var, SHIFT_PAIR)
    if sum_op is None:
        raise ValueError(f"ring has no shift operator over {sum_var}")
    outers = [(op, base) for op, base, kind in ring.pairs
              if kind == SHIFT_PAIR and base != sum_var]
    if len(outers) != 1:
        raise ValueError("expected exactly one outer shift pair")
    outer_op, outer_base = outers[0]
    foreign = [op for op in ring.ops if op not in (sum_op, outer_op)]
    if order is None:
        order = TermOrder.lex(ring, sum_var, outer_op, outer_base, sum_op)
    until = (_usable_predicate(ring, sum_var, sum_op, Fraction(1), outer_op)
             if order.kind == "weighted" else None)
    basis = groebner(annihilators, order, config, until=until)
    free = eliminate(basis, {sum_var})
    orders_used = [str(order)]
    cands = _collect_candidates(free, ring, sum_op, Fraction(1), outer_op)
    if not cands and free and foreign:
        free, order2 = _second_stage(free, sum_var, foreign, outer_op,
                                     outer_base, sum_op, config)
        orders_used.append(str(order2))
        cands = _collect_candidates(free, ring, sum_op, Fraction(1), outer_op)
        order = order2
    if not cands:
        raise NoKFreeElement(
            f"no {sum_var}-free element survives {sum_op}=1 in the basis")
    elem, sub = _pick_telescoped(cands, outer_op, order)
    eq = _ore_to_equation(sub, outer_base, outer_op, SHIFT)
    quot, rem = _central_split(elem, sum_op, Fraction(1))
    if rem != sub:
        raise RuntimeError("central split disagrees with substitution")
    result = TelescopeResult(
        equation=eq,
        certificate=quot,
        order=eq.order,
        method="creative-telescoping-sum",
        provenance={
            "route": "nc-elimination",
            "term_order": ", then ".join(orders_used),
            "eliminated": sum_var,
            "telescoped_element": _short_repr(elem),
            "assumption": f"finite support of the summand in {sum_var}",
        },
        element=elem,
    )
    return result if full else eq


def telescope_integral(annihilators: Sequence[OrePoly], int_var: str,
                       outer_var: str,
                       order: Optional[TermOrder] = None,
                       config: GroebnerConfig = DEFAULT_CONFIG,
                       full: bool = False):
    """Equation for I(outer_var) = integral over int_var of F.

    An int_var-free element T splits as T = D*Q + P with P = T at D=0;
    integrating, the D*Q part contributes only boundary terms, which are
    assumed to vanish (recorded in provenance, never verified here)."""
    if not annihilators:
        raise ValueError("no annihilators given")
    ring = annihilators[0].ring
    int_op = ring.op_over(int_var, DIFF_PAIR)
    if int_op is None:
        raise ValueError(f"ring has no derivation over {int_var}")
    outer_op = (ring.op_over(outer_var, SHIFT_PAIR)
                or ring.op_over(outer_var, DIFF_PAIR))
    if outer_op is None or outer_op == int_op:
        raise ValueError(f"no operator pair over {outer_var}")
    _, outer_kind = ring.op_info(outer_op)
    foreign = [op for op in ring.ops if op not in (int_op, outer_op)]
    if order is None:
        order = TermOrder.lex(ring, int_var, outer_op, outer_var, int_op)
    until = (_usable_predicate(ring, int_var, int_op, Fraction(0), outer_op)
             if order.kind == "weighted" else None)
    basis = groebner(annihilators, order, config, until=until)
    free = eliminate(basis, {int_var})
    orders_used = [str(order)]
    cands = _collect_candidates(free, ring, int_op, Fraction(0), outer_op)
    if not cands and free and foreign:
        free, order2 = _second_stage(free, int_var, foreign, outer_op,
                                     outer_var, int_op, config)
        orders_used.append(str(order2))
        cands = _collect_candidates(free, ring, int_op, Fraction(0), outer_op)
        order = order2
    if not cands:
        raise NoXFreeElement(
            f"no {int_var}-free element survives {int_op}=0 in the basis")
    elem, sub = _pick_telescoped(cands, outer_op, order)
    kind = SHIFT if outer_kind == SHIFT_PAIR else DIFF
    eq = _ore_to_equation(sub, outer_var, outer_op, kind)
    quot, rem = _central_split(elem, int_op, Fraction(0))
    if rem != sub:
        raise RuntimeError("central split disagrees with substitution")
    result = TelescopeResult(
        equation=eq,
        certificate=quot,
        order=eq.order,
        method="creative-telescoping-integral",
        provenance={
            "route": "nc-elimination",
            "term_order": ", then ".join(orders_used),
            "eliminated": int_var,
            "telescoped_element": _short_repr(elem),
            "assumption": ("boundary terms vanish: enough derivatives of the"
                           f" integrand vanish at the {int_var} endpoints"
                           " (assumed, not verified)"),
        },
        element=elem,
    )
    return result if full else eq
