"""Normal-ordered noncommutative polynomial arithmetic for mixed
differential/shift operator algebras.

Generators split into commutative base variables and operator generators,
each operator bound to one base: a differential pair obeys D*x = x*D + 1 and
a shift pair obeys N*n = (n+1)*N; all other pairs commute.  Monomials are
stored normal-ordered (bases left of operators) with Fraction coefficients;
rational-function coefficients are realized by clearing denominators.

Term orders rank monomials only; the storage order of generators inside a
monomial comes from the ring declaration.  Both commutator tails (1 against
x*D, N against n*N) are strictly smaller than the product monomial under any
order that is multiplicative with 1 minimal, so every lex permutation and
every nonnegative-weight weighted-lex order is admissible here; negative
weights are rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import (InadmissibleOrder, InsufficientDepth, RingMismatch)
from .expr import ADD, MUL, NUM, POW, SYM, Expr, parse
from .operator import DIFF, LinearOperatorEq
from .poly import MultiPoly, RatFun, poly_gcd
from .series import SeriesPrefix, s_derivative

DIFF_PAIR = "diff"
SHIFT_PAIR = "shift"


@dataclass(frozen=True)
class OreRing:
    """bases and ops fix both the monomial storage order and printing order;
    pairs bind each operator generator to its base variable."""

    bases: Tuple[str, ...]
    ops: Tuple[str, ...]
    pairs: Tuple[Tuple[str, str, str], ...]  # (op, base, kind)

    def __post_init__(self):
        seen = set()
        for g in self.gens:
            if g in seen:
                raise ValueError(f"duplicate generator {g}")
            seen.add(g)
        paired_ops = set()
        for op, base, kind in self.pairs:
            if op not in self.ops or base not in self.bases:
                raise ValueError(f"pair ({op},{base}) outside the ring")
            if kind not in (DIFF_PAIR, SHIFT_PAIR):
                raise ValueError(f"unknown pair kind {kind}")
            if op in paired_ops:
                raise ValueError(f"operator {op} bound twice")
            paired_ops.add(op)
        for op in self.ops:
            if op not in paired_ops:
                raise ValueError(f"operator {op} has no base variable")

    @property
    def gens(self) -> Tuple[str, ...]:
        return self.bases + self.ops

    def index(self, name: str) -> int:
        return self.gens.index(name)

    def op_info(self, op: str) -> Tuple[str, str]:
        for o, base, kind in self.pairs:
            if o == op:
                return base, kind
        raise KeyError(op)

    def op_over(self, base: str, kind: str) -> Optional[str]:
        for o, b, k in self.pairs:
            if b == base and k == kind:
                return o
        return None

    @classmethod
    def make(cls, pairs: Sequence[Tuple[str, str, str]],
             params: Sequence[str] = ()) -> "OreRing":
        bases = tuple(b for _, b, _ in pairs) + tuple(params)
        ops = tuple(o for o, _, _ in pairs)
        return cls(bases, ops, tuple(pairs))

    @classmethod
    def from_text(cls, text: str, params: Sequence[str] = ()) -> "OreRing":
        """Ring notation 'x:D,n:N': base:operator pairs; an operator name
        starting with 'D' is differential, any other is a shift."""
        pairs = []
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            if ":" not in item:
                raise ValueError(f"bad ring item {item!r}, expected base:op")
            base, op = (s.strip() for s in item.split(":", 1))
            kind = DIFF_PAIR if op.startswith("D") else SHIFT_PAIR
            pairs.append((op, base, kind))
        return cls.make(pairs, params)

    def __str__(self) -> str:
        items = [f"{b}:{o}" for o, b, _ in self.pairs]
        extra = [b for b in self.bases if all(b != p[1] for p in self.pairs)]
        return ",".join(items + extra)


@dataclass(frozen=True)
class TermOrder:
    """lex(names most significant first) or weighted-lex (nonnegative weights,
    ties broken by lex over the same name list).  Generators missing from
    names are appended least-significant in ring order (weight 0)."""

    kind: str
    names: Tuple[str, ...]
    ring: OreRing
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ("lex", "weighted"):
            raise InadmissibleOrder(f"unknown term order kind {self.kind}")
        gens = self.ring.gens
        if len(set(self.names)) != len(self.names):
            raise InadmissibleOrder("repeated generator in term order")
        for nm in self.names:
            if nm not in gens:
                raise InadmissibleOrder(f"{nm} is not a ring generator")
        if self.kind == "weighted":
            if self.weights is None or len(self.weights) != len(self.names):
                raise InadmissibleOrder("weights must match the named"
                                        " generators")
            if any(w < 0 for w in self.weights):
                raise InadmissibleOrder("negative weights break"
                                        " well-foundedness")
        object.__setattr__(self, "_perm", tuple(
            [gens.index(nm) for nm in self.names]
            + [i for i, g in enumerate(gens) if g not in self.names]))

    @classmethod
    def lex(cls, ring: OreRing, *names: str) -> "TermOrder":
        return cls("lex", tuple(names), ring)

    @classmethod
    def weighted(cls, ring: OreRing, weights: Sequence[int],
                 names: Sequence[str]) -> "TermOrder":
        return cls("weighted", tuple(names), ring, tuple(weights))

    @classmethod
    def from_text(cls, text: str, ring: OreRing) -> "TermOrder":
        """'lex:k,N,n,K' or 'weighted:3,1,0,0:x,N,n,D'."""
        parts = text.split(":")
        if parts[0] == "lex" and len(parts) == 2:
            return cls.lex(ring, *[s.strip() for s in parts[1].split(",")])
        if parts[0] == "weighted" and len(parts) == 3:
            ws = tuple(int(s) for s in parts[1].split(","))
            names = tuple(s.strip() for s in parts[2].split(","))
            return cls.weighted(ring, ws, names)
        raise InadmissibleOrder(f"cannot parse term order {text!r}")

    def key(self, exps: Tuple[int, ...]):
        lexpart = tuple(exps[i] for i in self._perm)
        if self.kind == "lex":
            return lexpart
        w = sum(wi * exps[self._perm[i]] for i, wi in enumerate(self.weights))
        return (w,) + lexpart

    def __str__(self) -> str:
        if self.kind == "lex":
            return "lex:" + ",".join(self.names)
        return ("weighted:" + ",".join(str(w) for w in self.weights)
                + ":" + ",".join(self.names))


# -- elements ---------------------------------------------------------------


class OrePoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: OreRing, terms: Dict[Tuple[int, ...], Fraction]):
        self.ring = ring
        n = len(ring.gens)
        clean = {}
        for e, c in terms.items():
            if len(e) != n:
                raise ValueError("exponent vector has wrong length")
            c = Fraction(c)
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def _make(cls, ring: OreRing,
              terms: Dict[Tuple[int, ...], Fraction]) -> "OrePoly":
        """Trusted constructor: exponent tuples of the right length, values
        nonzero Fractions.  Internal hot paths only."""
        self = cls.__new__(cls)
        self.ring = ring
        self.terms = terms
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ring: OreRing) -> "OrePoly":
        return cls(ring, {})

    @classmethod
    def const(cls, ring: OreRing, c) -> "OrePoly":
        return cls(ring, {(0,) * len(ring.gens): Fraction(c)})

    @classmethod
    def gen(cls, ring: OreRing, name: str) -> "OrePoly":
        i = ring.index(name)
        e = [0] * len(ring.gens)
        e[i] = 1
        return cls(ring, {tuple(e): Fraction(1)})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def _check(self, other: "OrePoly"):
        if self.ring != other.ring:
            raise RingMismatch("operands live in different rings")

    def __add__(self, other) -> "OrePoly":
        other = self._coerce(other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            if cur is None:
                out[e] = c
            else:
                nv = cur + c
                if nv:
                    out[e] = nv
                else:
                    del out[e]
        return OrePoly._make(self.ring, out)

    def _coerce(self, other) -> "OrePoly":
        if isinstance(other, OrePoly):
            return other
        return OrePoly.const(self.ring, other)

    def __neg__(self) -> "OrePoly":
        return OrePoly._make(self.ring,
                             {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "OrePoly":
        return self + (-self._coerce(other))

    def scale(self, c) -> "OrePoly":
        c = Fraction(c)
        if c == 0:
            return OrePoly._make(self.ring, {})
        return OrePoly._make(
            self.ring, {e: cc * c for e, cc in self.terms.items()})

    def __mul__(self, other) -> "OrePoly":
        return nc_mul(self, self._coerce(other))

    def __rmul__(self, other) -> "OrePoly":
        return nc_mul(self._coerce(other), self)

    def __pow__(self, k: int) -> "OrePoly":
        if k < 0:
            raise ValueError("operators have no inverses")
        out = OrePoly.const(self.ring, 1)
        for _ in range(k):
            out = nc_mul(out, self)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrePoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def degree(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.ring.index(name)
        return max(e[i] for e in self.terms)

    def uses(self, name: str) -> bool:
        i = self.ring.index(name)
        return any(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- leading data under a term order -------------------------------------

    def leading(self, order: TermOrder) -> Tuple[Tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero element has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def normalized(self, order: TermOrder) -> "OrePoly":
        """Integer-content-free with positive leading coefficient."""
        if not self.terms:
            return self
        num_gcd, den_lcm = 0, 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        scale = Fraction(den_lcm, num_gcd)
        _, lc = self.leading(order)
        if lc < 0:
            scale = -scale
        return self.scale(scale)

    # -- substition of an operator generator by a scalar ----------------------

    def subs_op(self, op: str, value) -> "OrePoly":
        """Replace an operator generator by a rational constant.  Sound only
        when the generator is central in this element, i.e. the element does
        not use the operator's base variable."""
        base, _ = self.ring.op_info(op)
        if self.uses(base):
            raise ValueError(f"{op} is not central: element uses {base}")
        i = self.ring.index(op)
        value = Fraction(value)
        out: Dict[Tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            cc = c * value ** e[i]
            out[ne] = out.get(ne, Fraction(0)) + cc
        return OrePoly(self.ring, out)

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        nb = len(self.ring.bases)
        groups: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[nb:], {})[e[:nb]] = c
        def op_sort(op_e):
            return (sum(op_e),) + op_e
        parts = []
        for op_e in sorted(groups, key=op_sort, reverse=True):
            coeff = MultiPoly(self.ring.bases, groups[op_e])
            op_txt = "*".join(
                (f"{name}^{p}" if p > 1 else name)
                for name, p in zip(self.ring.ops, op_e) if p)
            ct = str(coeff)
            if not op_txt:
                parts.append(ct)
                continue
            if coeff.is_constant():
                cv = coeff.constant_value()
                if cv == 1:
                    parts.append(op_txt)
                elif cv == -1:
                    parts.append(f"-{op_txt}")
                else:
                    parts.append(f"{ct}*{op_txt}")
            elif len(coeff.terms) == 1:
                parts.append(f"{ct}*{op_txt}")
            else:
                parts.append(f"({ct})*{op_txt}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"<OrePoly {self}>"


# -- normal-ordered multiplication ---------------------------------------------


@lru_cache(maxsize=None)
def _pair_indices(ring: OreRing) -> Tuple[Tuple[int, int, str], ...]:
    idx = {g: i for i, g in enumerate(ring.gens)}
    return tuple((idx[op], idx[base], kind) for op, base, kind in ring.pairs)


def nc_mul(a: OrePoly, b: OrePoly) -> OrePoly:
    """Product with the result rewritten into normal order."""
    if a.ring != b.ring:
        raise RingMismatch("operands live in different rings")
    ring = a.ring
    out: Dict[Tuple[int, ...], Fraction] = {}
    pair_list = _pair_indices(ring)
    for e, ce in a.terms.items():
        for f, cf in b.terms.items():
            # start from the commutative merge, then fix up pair by pair
            partial = [(list(x + y for x, y in zip(e, f)), ce * cf)]
            for oi, bi, kind in pair_list:
                bpow = e[oi]       # operators of a passing over bases of b
                cpow = f[bi]
                if bpow == 0 or cpow == 0:
                    continue
                expanded = []
                if kind == DIFF_PAIR:
                    for exps, coeff in partial:
                        for t in range(min(bpow, cpow) + 1):
                            w = (math.comb(bpow, t) * math.comb(cpow, t)
                                 * math.factorial(t))
                            ne = list(exps)
                            ne[bi] -= t
                            ne[oi] -= t
                            expanded.append((ne, coeff * w))
                else:
                    for exps, coeff in partial:
                        for j in range(cpow + 1):
                            w = math.comb(cpow, j) * bpow ** (cpow - j)
                            ne = list(exps)
                            ne[bi] = ne[bi] - cpow + j
                            expanded.append((ne, coeff * w))
                partial = expanded
            for exps, coeff in partial:
                key = tuple(exps)
                cur = out.get(key)
                out[key] = coeff if cur is None else cur + coeff
    return OrePoly._make(ring, {k: v for k, v in out.items() if v})


# -- conversion from equations and expressions -----------------------------------


def lift_to_ore(eq: LinearOperatorEq, ring: OreRing) -> OrePoly:
    """Clear denominators of a scalar equation into the operator ring."""
    kind = DIFF_PAIR if eq.kind == DIFF else SHIFT_PAIR
    op = ring.op_over(eq.variable, kind)
    if op is None:
        raise ValueError(f"ring has no operator over {eq.variable}")
    polys = eq.cleared(remove_common=False)
    oi = ring.index(op)
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for i, p in enumerate(polys):
        for exps, c in p.terms.items():
            ne = [0] * len(ring.gens)
            for name, x in zip(p.vars, exps):
                if x == 0:
                    continue
                if name not in ring.bases:
                    raise ValueError(f"coefficient variable {name} is not a"
                                     " base variable of the ring")
                ne[ring.index(name)] = x
            ne[oi] = i
            key = tuple(ne)
            terms[key] = terms.get(key, Fraction(0)) + c
    out = OrePoly(ring, terms)
    if out.is_zero():
        return out
    # canonical sign: graded-lex leading coefficient positive
    return out.normalized(graded_order(ring))


def graded_order(ring: OreRing) -> TermOrder:
    """Total degree first, ties by lex in ring declaration order."""
    return TermOrder.weighted(ring, (1,) * len(ring.gens), ring.gens)


def coefficient_polys(p: OrePoly) -> Dict[Tuple[int, ...], MultiPoly]:
    """Group terms by operator monomial; values are polynomials in the bases."""
    nb = len(p.ring.bases)
    groups: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]] = {}
    for e, c in p.terms.items():
        groups.setdefault(e[nb:], {})[e[:nb]] = c
    return {op_e: MultiPoly(p.ring.bases, t) for op_e, t in groups.items()}


def commutative_content(p: OrePoly) -> MultiPoly:
    """Gcd of the coefficient polynomials over all operator monomials."""
    g = MultiPoly.zero(p.ring.bases)
    for poly in coefficient_polys(p).values():
        g = poly_gcd(g, poly)
        if g.is_constant() and not g.is_zero():
            break
    return g


def content_free(p: OrePoly) -> "OrePoly":
    """Divide out the commutative content.  The result generates a possibly
    larger left ideal; use only for comparisons up to content."""
    if p.is_zero():
        return p
    g = commutative_content(p)
    if g.is_constant():
        return p
    ring = p.ring
    nb = len(ring.bases)
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for op_e, poly in coefficient_polys(p).items():
        q = poly.div_exact(g)
        for be, c in q.terms.items():
            terms[tuple(be) + tuple(op_e)] = c
    return OrePoly(ring, terms)


def ore_from_expr(e, ring: OreRing) -> OrePoly:
    """Interpret an expression as an operator; products keep their written
    order, so 'N*n' and 'n*N' give different normal forms."""
    if isinstance(e, str):
        e = parse(e)
    return _ore_of(e, ring)


def _ore_of(e: Expr, ring: OreRing) -> OrePoly:
    if e.kind == NUM:
        return OrePoly.const(ring, e.value)
    if e.kind == SYM:
        if e.name not in ring.gens:
            raise ValueError(f"{e.name} is not a generator of {ring}")
        return OrePoly.gen(ring, e.name)
    if e.kind == ADD:
        out = OrePoly.zero(ring)
        for a in e.args:
            out = out + _ore_of(a, ring)
        return out
    if e.kind == MUL:
        out = OrePoly.const(ring, 1)
        for a in e.args:
            out = nc_mul(out, _ore_of(a, ring))
        return out
    if e.kind == POW:
        q = e.exponent
        if e.args[0].kind == NUM and q.denominator == 1:
            return OrePoly.const(ring, e.args[0].value ** int(q))
        if q.denominator != 1 or q < 0:
            raise ValueError("operator powers must be nonnegative integers")
        return _ore_of(e.args[0], ring) ** int(q)
    raise ValueError(f"cannot interpret {e.kind} as an operator")


# -- operator action ----------------------------------------------------------


def apply(p: OrePoly, target, at: Optional[Dict[str, int]] = None):
    """Action of an operator.

    * target a SeriesPrefix: differential pairs differentiate, the paired
      base multiplies by (point + t), parameters multiply symbolically;
      returns the image prefix (shorter by the top derivative order).
    * target a callable {base: int} -> value (Fraction or RatFun): shift
      pairs advance indices, differential pairs differentiate the value in
      the base name; returns the image callable, or its value at `at`.
    """
    if isinstance(target, SeriesPrefix):
        return _apply_series(p, target)
    if isinstance(target, dict):
        shift_bases = [b for o, b, k in p.ring.pairs if k == SHIFT_PAIR]
        table = target

        def target(pos):
            key = tuple(pos[b] for b in shift_bases)
            return table[key if len(key) > 1 else key[0]]

    g = _apply_table(p, target)
    return g if at is None else g(at)


def _apply_series(p: OrePoly, pre: SeriesPrefix) -> SeriesPrefix:
    ring = p.ring
    v = pre.variable
    kind = DIFF_PAIR if pre.kind == DIFF else SHIFT_PAIR
    vop = ring.op_over(v, kind)
    for op in ring.ops:
        if op != vop and p.uses(op):
            raise ValueError(f"{op} cannot act on a {pre.kind} prefix in {v}")
    maxd = max(p.degree(vop), 0) if vop is not None else 0
    depth = len(pre.coeffs) - maxd
    if depth <= 0:
        raise InsufficientDepth(
            f"prefix depth {len(pre.coeffs)} cannot absorb order {maxd}")
    cring = pre.coeffs[0].vars if pre.coeffs else ()
    out = [RatFun.from_const(cring, 0)] * depth
    vi = ring.index(v)
    oi = ring.index(vop) if vop is not None else None
    for e, c in p.terms.items():
        a = e[oi] if oi is not None else 0
        if kind == DIFF_PAIR:
            cur = list(pre.coeffs)
            for _ in range(a):
                cur = s_derivative(cur)
            for _ in range(e[vi]):
                # multiply by (point + t)
                shifted = [cur[i - 1] if i else RatFun.from_const(cring, 0)
                           for i in range(len(cur))]
                if pre.point != 0:
                    cur = [shifted[i] + cur[i] * pre.point
                           for i in range(len(cur))]
                else:
                    cur = shifted
        else:
            # value table: shift the window by a, then multiply by the
            # index (point + i) raised to the base exponent
            cur = [pre.coeffs[i + a] for i in range(depth)]
            if e[vi]:
                cur = [cur[i] * (Fraction(pre.point) + i) ** e[vi]
                       for i in range(depth)]
        for name in ring.bases:
            if name == v:
                continue
            k = e[ring.index(name)]
            if k:
                if name not in cring:
                    raise ValueError(f"parameter {name} missing from"
                                     " coefficient ring")
                factor = RatFun.var(cring, name) ** k
                cur = [x * factor for x in cur]
        for i in range(depth):
            out[i] = out[i] + cur[i] * c
    return SeriesPrefix(v, pre.kind, pre.point, tuple(out))


def _apply_table(p: OrePoly, f: Callable[[Dict[str, int]], object]):
    ring = p.ring
    shift_of = {base: ring.index(op)
                for op, base, kind in ring.pairs if kind == SHIFT_PAIR}
    diff_of = {base: ring.index(op)
               for op, base, kind in ring.pairs if kind == DIFF_PAIR}
    sym_bases = [b for b in ring.bases if b not in shift_of]

    def g(at: Dict[str, int]):
        total = None
        for e, c in p.terms.items():
            pos = {b: at[b] + e[i] for b, i in shift_of.items()}
            val = f(pos)
            for base, oi in diff_of.items():
                for _ in range(e[oi]):
                    val = val.derivative(base)
            factor = Fraction(c)
            for b in shift_of:
                bexp = e[ring.index(b)]
                if bexp:
                    factor *= Fraction(at[b]) ** bexp
            term = val * factor
            for b in sym_bases:
                bexp = e[ring.index(b)]
                if bexp:
                    if isinstance(term, Fraction):
                        raise ValueError("table values must be RatFun when"
                                         f" the operator multiplies by {b}")
                    term = term * RatFun.var(term.vars, b) ** bexp
            if total is None:
                total = term
            elif isinstance(total, Fraction) and not isinstance(term, Fraction):
                total = term + total
            else:
                total = total + term
        if total is None:
            return Fraction(0)
        return total

    return g
