"""Exact multivariate polynomial and rational-function arithmetic over Q.

Sparse distributed representation: a polynomial is a map from exponent
vectors to nonzero Fraction coefficients, over a fixed ordered tuple of
variable names (the "ring").  The internal term order is graded lex
(total degree first, then lex on the exponent vector, first variable most
significant).  All user-facing elimination orders live in ore.py.

Division is permitted only by polynomials that are nonzero as polynomials
(nonzero term map), never by testing parameter values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rat = Fraction

Coeffish = Union[int, Fraction, "MultiPoly"]


class RingMismatch(ValueError):
    pass


def _as_frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not a rational coefficient: {c!r}")


class MultiPoly:
    """Immutable sparse multivariate polynomial over Q."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, Fraction]):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for exps, c in terms.items():
            c = _as_frac(c)
            if not c:
                continue
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError("exponent vector length mismatch")
            if exps in clean:
                c = clean[exps] + c
                if c:
                    clean[exps] = c
                else:
                    del clean[exps]
            else:
                clean[exps] = c
        self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MultiPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Sequence[str], c) -> "MultiPoly":
        c = _as_frac(c)
        if not c:
            return cls(vars, {})
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "MultiPoly":
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    def one_like(self) -> "MultiPoly":
        return MultiPoly.const(self.vars, 1)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    # -- ring helpers ----------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise RingMismatch(f"ring mismatch: {self.vars} vs {other.vars}")

    def coerce(self, c: Coeffish) -> "MultiPoly":
        if isinstance(c, MultiPoly):
            self._check(c)
            return c
        return MultiPoly.const(self.vars, c)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: Coeffish) -> "MultiPoly":
        other = self.coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, Fraction(0)) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MultiPoly(self.vars, t)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Coeffish) -> "MultiPoly":
        return self + (-self.coerce(other))

    def __rsub__(self, other: Coeffish) -> "MultiPoly":
        return self.coerce(other) - self

    def __mul__(self, other: Coeffish) -> "MultiPoly":
        other = self.coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, Fraction(0)) + c1 * c2
                if s:
                    t[e] = s
                else:
                    t.pop(e, None)
        return MultiPoly(self.vars, t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        r = MultiPoly.const(self.vars, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def scale(self, c) -> "MultiPoly":
        c = _as_frac(c)
        if not c:
            return MultiPoly.zero(self.vars)
        return MultiPoly(self.vars, {e: k * c for e, k in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- structure ---------------------------------------------------------

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: str) -> int:
        """Degree in var; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coeff_of(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, as a polynomial in the same ring."""
        i = self.vars.index(var)
        t = {}
        for e, c in self.terms.items():
            if e[i] == power:
                e2 = list(e)
                e2[i] = 0
                t[tuple(e2)] = c
        return MultiPoly(self.vars, t)

    def as_univariate(self, var: str) -> dict:
        """Map power -> coefficient MultiPoly (var-free), skipping zeros."""
        i = self.vars.index(var)
        buckets: dict = {}
        for e, c in self.terms.items():
            e2 = list(e)
            p = e2[i]
            e2[i] = 0
            buckets.setdefault(p, {})[tuple(e2)] = c
        return {p: MultiPoly(self.vars, t) for p, t in buckets.items()}

    def leading_exps(self) -> tuple:
        """Exponent vector of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=lambda e: (sum(e), e))

    def leading_coeff_gradedlex(self) -> Fraction:
        return self.terms[self.leading_exps()]

    def leading_coeff(self, var: str) -> "MultiPoly":
        d = self.degree(var)
        if d < 0:
            return MultiPoly.zero(self.vars)
        return self.coeff_of(var, d)

    def uses_var(self, var: str) -> bool:
        return self.degree(var) > 0

    # -- calculus / substitution -------------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                e2 = tuple(e2)
                t[e2] = t.get(e2, Fraction(0)) + c * e[i]
        return MultiPoly(self.vars, {e: c for e, c in t.items() if c})

    def subs(self, assignment: Mapping[str, Coeffish]) -> "MultiPoly":
        """Substitute values (constants or same-ring polynomials) for variables."""
        vals = {}
        for name, v in assignment.items():
            if name not in self.vars:
                raise ValueError(f"unknown variable {name}")
            vals[self.vars.index(name)] = self.coerce(v)
        out = MultiPoly.zero(self.vars)
        pow_cache: dict = {}
        for e, c in self.terms.items():
            base = list(e)
            piece = None
            for i, v in vals.items():
                k = base[i]
                base[i] = 0
                if k:
                    key = (i, k)
                    if key not in pow_cache:
                        pow_cache[key] = v ** k
                    piece = pow_cache[key] if piece is None else piece * pow_cache[key]
            mono = MultiPoly(self.vars, {tuple(base): c})
            out = out + (mono if piece is None else mono * piece)
        return out

    def shift(self, var: str, a: Coeffish) -> "MultiPoly":
        """Substitute var -> var + a."""
        v = MultiPoly.var(self.vars, var)
        return self.subs({var: v + self.coerce(a)})

    def eval_frac(self, assignment: Mapping[str, Fraction]) -> Fraction:
        """Full evaluation; every variable appearing must be assigned."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v *= _as_frac(assignment[self.vars[i]]) ** k
            total += v
        return total

    # -- normalization ------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients.

        content(0) = 0.
        """
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def signed_content(self) -> Fraction:
        """Content carrying the sign of the graded-lex leading coefficient."""
        c = self.content()
        if c and self.leading_coeff_gradedlex() < 0:
            return -c
        return c

    def primitive(self) -> "MultiPoly":
        """self / signed_content: coprime integer coefficients, positive lead."""
        if not self.terms:
            return self
        return self.scale(1 / self.signed_content())

    # -- exact division -------------------------------------------------------

    def div_exact(self, other: "MultiPoly") -> "MultiPoly":
        """Exact division; raises ValueError if other does not divide self."""
        other = self.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        if other.is_constant():
            return self.scale(1 / other.constant_value())
        rem = self
        q: dict = {}
        lt_e = other.leading_exps()
        lt_c = other.terms[lt_e]
        while not rem.is_zero():
            re = rem.leading_exps()
            qe = tuple(a - b for a, b in zip(re, lt_e))
            if any(x < 0 for x in qe):
                raise ValueError("not an exact division")
            qc = rem.terms[re] / lt_c
            q[qe] = qc
            rem = rem - MultiPoly(self.vars, {qe: qc}) * other
        return MultiPoly(self.vars, q)

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.div_exact(self)
            return True
        except (ValueError, ZeroDivisionError):
            return False

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        parts = []
        for e, c in items:
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


# -- ring moves -----------------------------------------------------------


def change_ring(p: MultiPoly, new_vars: Sequence[str]) -> MultiPoly:
    """Re-express p over new_vars (a rename-free reindexing by name).

    Variables of p missing from new_vars must not occur in p.
    """
    new_vars = tuple(new_vars)
    pos = {name: i for i, name in enumerate(new_vars)}
    t = {}
    for e, c in p.terms.items():
        e2 = [0] * len(new_vars)
        for name, k in zip(p.vars, e):
            if k:
                if name not in pos:
                    raise ValueError(f"variable {name} not present in target ring")
                e2[pos[name]] = k
        e2 = tuple(e2)
        t[e2] = t.get(e2, Fraction(0)) + c
    return MultiPoly(new_vars, t)


# -- gcd ---------------------------------------------------------------------


def _poly_content_wrt(p: MultiPoly, var: str) -> MultiPoly:
    """gcd of the coefficients of p viewed as univariate in var."""
    coeffs = list(p.as_univariate(var).values())
    g = MultiPoly.zero(p.vars)
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            break
    return g


def _pseudo_rem(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Pseudo-remainder of a by b w.r.t. var (b nonzero in var)."""
    db = b.degree(var)
    lb = b.leading_coeff(var)
    r = a
    x = MultiPoly.var(a.vars, var)
    while not r.is_zero() and r.degree(var) >= db:
        dr = r.degree(var)
        lr = r.leading_coeff(var)
        r = r * lb - b * lr * x ** (dr - db)
    return r


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Primitive gcd over Q; gcd(0, b) = primitive part of b.

    Primitive PRS with recursive content extraction (the primitive variant
    of the subresultant scheme; identical output, simpler bookkeeping).
    """
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    a._check(b)
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(a.vars, 1)
    var = None
    for name in a.vars:
        if a.degree(name) > 0 or b.degree(name) > 0:
            var = name
            break
    assert var is not None
    ca = _poly_content_wrt(a, var)
    cb = _poly_content_wrt(b, var)
    cg = poly_gcd(ca, cb)
    pa = a.div_exact(ca)
    pb = b.div_exact(cb)
    if pa.degree(var) < pb.degree(var):
        pa, pb = pb, pa
    while True:
        if pb.is_zero():
            g = pa
            break
        if pb.degree(var) <= 0:
            g = MultiPoly.const(a.vars, 1)
            break
        r = _pseudo_rem(pa, pb, var)
        if r.is_zero():
            g = pb
            break
        cr = _poly_content_wrt(r, var)
        pa, pb = pb, r.div_exact(cr)
    g = g.primitive()
    if not g.is_constant():
        cgw = _poly_content_wrt(g, var)
        if not cgw.is_constant():
            g = g.div_exact(cgw)
    return (g * cg).primitive()


def poly_lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_zero() or b.is_zero():
        return MultiPoly.zero(a.vars)
    return (a * b).div_exact(poly_gcd(a, b)).primitive()


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# -- resultant ----------------------------------------------------------------


def resultant(a: MultiPoly, b: MultiPoly, var: str) -> MultiPoly:
    """Res_var(a, b) via Sylvester matrix + fraction-free Bareiss elimination."""
    a._check(b)
    da, db = a.degree(var), b.degree(var)
    if da < 0 or db < 0:
        return MultiPoly.zero(a.vars)
    if da == 0 and db == 0:
        return MultiPoly.const(a.vars, 1)
    if da == 0:
        return a ** db
    if db == 0:
        return b ** da
    ua = a.as_univariate(var)
    ub = b.as_univariate(var)
    zero = MultiPoly.zero(a.vars)
    n = da + db
    m = [[zero] * n for _ in range(n)]
    for i in range(db):
        for p, c in ua.items():
            m[i][i + da - p] = c
    for i in range(da):
        for p, c in ub.items():
            m[db + i][i + db - p] = c
    # Bareiss fraction-free elimination
    sign = 1
    prev = MultiPoly.const(a.vars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(a.vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).div_exact(prev)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det.scale(sign) if sign < 0 else det


# -- root finding ---------------------------------------------------------------


def _int_divisors(n: int) -> list:
    n = abs(n)
    if n == 0:
        return []
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: MultiPoly, var: str) -> list:
    """All rational roots of p viewed as univariate in var (other vars must be absent)."""
    for name in p.vars:
        if name != var and p.degree(name) > 0:
            raise ValueError(f"polynomial not univariate in {var}")
    if p.is_zero():
        raise ValueError("zero polynomial")
    uni = p.as_univariate(var)
    coeffs = {k: v.constant_value() for k, v in uni.items()}
    den_lcm = 1
    for c in coeffs.values():
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    icoeffs = {k: int(c * den_lcm) for k, c in coeffs.items()}
    val = min(icoeffs)
    roots = []
    if val > 0:
        roots.append(Fraction(0))
    trailing = icoeffs[val]
    leading = icoeffs[max(icoeffs)]
    seen = set()
    for pnum in _int_divisors(trailing):
        for qden in _int_divisors(leading):
            for s in (1, -1):
                cand = Fraction(s * pnum, qden)
                if cand in seen:
                    continue
                seen.add(cand)
                total = Fraction(0)
                for k, c in icoeffs.items():
                    total += c * cand ** (k - val)
                if total == 0:
                    roots.append(cand)
    return sorted(set(roots))


def integer_roots(p: MultiPoly, var: str) -> list:
    return [int(r) for r in rational_roots(p, var) if r.denominator == 1]


def resultant_shift_dispersion(q: MultiPoly, r: MultiPoly, var: str) -> list:
    """All integers j >= 0 with deg_var gcd(q(var), r(var + j)) > 0.

    Candidates come from the integer roots of Res_var(q(var), r(var+j)),
    a polynomial in j and the parameters; each candidate is confirmed by an
    exact symbolic gcd.
    """
    if q.is_zero() or r.is_zero():
        return []
    if q.degree(var) <= 0 or r.degree(var) <= 0:
        return []
    jname = "@j"
    ext = q.vars + (jname,)
    qe = change_ring(q, ext)
    re = change_ring(r, ext)
    jvar = MultiPoly.var(ext, jname)
    r_shift = re.subs({var: MultiPoly.var(ext, var) + jvar})
    res = resultant(qe, r_shift, var)
    # collect coefficients of the parameter monomials as polynomials in j
    ji = ext.index(jname)
    buckets: dict = {}
    for e, c in res.terms.items():
        key = tuple(x for i, x in enumerate(e) if i != ji)
        buckets.setdefault(key, {})[(0,) * ji + (e[ji],) + (0,) * 0] = c
    g = MultiPoly.zero(ext)
    for t in buckets.values():
        g = poly_gcd(g, MultiPoly(ext, t))
    if g.is_zero():
        # resultant identically zero: fall back to scanning a crude bound
        bound = q.degree(var) * r.degree(var) + q.total_degree() + r.total_degree() + 2
        candidates = range(0, bound + 1)
    elif g.is_constant():
        candidates = []
    else:
        candidates = [j for j in integer_roots(g, jname) if j >= 0]
    out = []
    for j in candidates:
        shifted = r.shift(var, Fraction(j))
        if poly_gcd(q, shifted).degree(var) > 0:
            out.append(j)
    return sorted(out)


# -- rational functions -----------------------------------------------------------


class RatFun:
    """Rational function num/den over Q in named variables, kept canonical:
    gcd(num, den) = 1, den primitive with positive leading coefficient."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly = None, _normalized=False):
        if den is None:
            den = MultiPoly.const(num.vars, 1)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            if num.is_zero():
                den = MultiPoly.const(num.vars, 1)
            else:
                g = poly_gcd(num, den)
                if not (g.is_constant() and g.constant_value() == 1):
                    num = num.div_exact(g)
                    den = den.div_exact(g)
                c = den.signed_content()
                if c != 1:
                    den = den.scale(1 / c)
                    num = num.scale(1 / c)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_const(cls, vars: Sequence[str], c) -> "RatFun":
        return cls(MultiPoly.const(vars, c), _normalized=True)

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFun":
        return cls(p, _normalized=True)

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> "RatFun":
        return cls(MultiPoly.var(vars, name), _normalized=True)

    @property
    def vars(self):
        return self.num.vars

    def _coerce(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, MultiPoly):
            return RatFun(other)
        return RatFun.from_const(self.vars, other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_poly():
            raise ValueError(f"not a polynomial: {self}")
        return self.num.scale(1 / self.den.constant_value())

    # -- field operations -------------------------------------------------

    def __add__(self, other) -> "RatFun":
        o = self._coerce(other)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den, _normalized=True)

    def __sub__(self, other) -> "RatFun":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFun":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFun":
        o = self._coerce(other)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFun(self.den, self.num)

    def __truediv__(self, other) -> "RatFun":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFun":
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFun":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num ** n, self.den ** n)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- calculus / substitution ---------------------------------------------

    def derivative(self, var: str) -> "RatFun":
        return RatFun(
            self.num.derivative(var) * self.den - self.num * self.den.derivative(var),
            self.den * self.den,
        )

    def shift(self, var: str, a) -> "RatFun":
        return RatFun(self.num.shift(var, a), self.den.shift(var, a))

    def subs(self, assignment: Mapping[str, Coeffish]) -> "RatFun":
        return RatFun(self.num.subs(assignment), self.den.subs(assignment))

    def subs_ratfun(self, var: str, value: "RatFun") -> "RatFun":
        """Substitute a rational function for var (degree-bounded, exact)."""
        uni_n = self.num.as_univariate(var)
        uni_d = self.den.as_univariate(var)
        dmax = max(list(uni_n) + list(uni_d))
        num_acc = RatFun.from_const(self.vars, 0)
        den_acc = RatFun.from_const(self.vars, 0)
        for p, c in uni_n.items():
            num_acc = num_acc + RatFun.from_poly(c) * value ** p
        for p, c in uni_d.items():
            den_acc = den_acc + RatFun.from_poly(c) * value ** p
        return num_acc / den_acc

    def eval_frac(self, assignment: Mapping[str, Fraction]) -> Fraction:
        d = self.den.eval_frac(assignment)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {assignment}")
        return self.num.eval_frac(assignment) / d

    def __str__(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFun({self})"


def ratfun_change_ring(f: RatFun, new_vars: Sequence[str]) -> RatFun:
    return RatFun(change_ring(f.num, new_vars), change_ring(f.den, new_vars))
