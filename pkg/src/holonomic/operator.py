"""Ordinary holonomic equations: one operator symbol over RatFun coefficients.

A LinearOperatorEq is the equation sum_i c_i * Op^i f = 0 with c_i rational
functions of the equation variable and any parameters.  Op is D (d/dx) for
kind "D" or the forward shift for kind "N".  The same object doubles as a
univariate Ore polynomial: compose() is the noncommutative product
(D*c = c*D + c', N*c(n) = c(n+1)*N) and right_divmod() the right division.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, List, Sequence, Tuple

from .poly import MultiPoly, RatFun, poly_gcd, poly_lcm

DIFF = "D"
SHIFT = "N"


class LinearOperatorEq:
    __slots__ = ("variable", "kind", "coeffs")

    def __init__(self, variable: str, kind: str, coeffs: Sequence[RatFun]):
        if kind not in (DIFF, SHIFT):
            raise ValueError(f"unknown operator kind {kind!r}")
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        if coeffs and variable not in coeffs[0].vars:
            raise ValueError(f"variable {variable} not in coefficient ring")
        self.variable = variable
        self.kind = kind
        self.coeffs = tuple(coeffs)

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_polys(cls, variable: str, kind: str, polys: Sequence[MultiPoly]):
        return cls(variable, kind, [RatFun.from_poly(p) for p in polys])

    @classmethod
    def zero(cls, variable: str, kind: str):
        return cls(variable, kind, [])

    @classmethod
    def identity(cls, variable: str, kind: str, ring_vars):
        return cls(variable, kind, [RatFun.from_const(ring_vars, 1)])

    @classmethod
    def op(cls, variable: str, kind: str, ring_vars):
        one = RatFun.from_const(ring_vars, 1)
        zero = RatFun.from_const(ring_vars, 0)
        return cls(variable, kind, [zero, one])

    # -- basic structure -----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def ring_vars(self):
        if not self.coeffs:
            return (self.variable,)
        return self.coeffs[0].vars

    def coeff(self, i: int) -> RatFun:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RatFun.from_const(self.ring_vars, 0)

    def params(self):
        """Variables other than the equation variable that actually occur."""
        used = set()
        for c in self.coeffs:
            for p in (c.num, c.den):
                for name in p.vars:
                    if name != self.variable and p.degree(name) > 0:
                        used.add(name)
        return sorted(used)

    def _check(self, other: "LinearOperatorEq"):
        if self.variable != other.variable or self.kind != other.kind:
            raise ValueError("operator variable/kind mismatch")

    def _sigma(self, c: RatFun, k: int) -> RatFun:
        """The automorphism Op^k c Op^-k on coefficients."""
        if self.kind == SHIFT and k:
            return c.shift(self.variable, k)
        return c

    # -- linear structure -------------------------------------------------

    def __add__(self, other: "LinearOperatorEq") -> "LinearOperatorEq":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return LinearOperatorEq(
            self.variable, self.kind,
            [self.coeff(i) + other.coeff(i) for i in range(n)],
        )

    def __sub__(self, other: "LinearOperatorEq") -> "LinearOperatorEq":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return LinearOperatorEq(
            self.variable, self.kind,
            [self.coeff(i) - other.coeff(i) for i in range(n)],
        )

    def scale(self, c: RatFun) -> "LinearOperatorEq":
        return LinearOperatorEq(self.variable, self.kind, [a * c for a in self.coeffs])

    # -- noncommutative product --------------------------------------------

    def compose(self, other: "LinearOperatorEq") -> "LinearOperatorEq":
        """self applied after other: (self*other)(f) = self(other(f))."""
        self._check(other)
        if self.is_zero() or other.is_zero():
            return LinearOperatorEq.zero(self.variable, self.kind)
        zero = RatFun.from_const(self.ring_vars, 0)
        out = [zero] * (self.order + other.order + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                if self.kind == SHIFT:
                    out[i + j] = out[i + j] + a * b.shift(self.variable, i)
                else:
                    # D^i b = sum_t C(i,t) b^(t) D^(i-t)
                    bt = b
                    for t in range(i + 1):
                        out[i - t + j] = out[i - t + j] + a * bt * math.comb(i, t)
                        if t < i:
                            bt = bt.derivative(self.variable)
        return LinearOperatorEq(self.variable, self.kind, out)

    def right_divmod(self, q: "LinearOperatorEq") -> Tuple["LinearOperatorEq", "LinearOperatorEq"]:
        """p = quotient * q + remainder with order(remainder) < order(q)."""
        self._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by zero operator")
        var, kind = self.variable, self.kind
        zero = RatFun.from_const(self.ring_vars, 0)
        quot = [zero] * max(0, self.order - q.order + 1)
        rem = self
        qtop = q.coeffs[-1]
        while not rem.is_zero() and rem.order >= q.order:
            k = rem.order - q.order
            t = rem.coeffs[-1] / self._sigma(qtop, k)
            quot[k] = quot[k] + t
            mono = LinearOperatorEq(var, kind, [zero] * k + [t])
            rem = rem - mono.compose(q)
        return (
            LinearOperatorEq(var, kind, quot),
            rem,
        )

    def right_divides(self, p: "LinearOperatorEq") -> bool:
        _, r = p.right_divmod(self)
        return r.is_zero()

    # -- coefficient transforms -----------------------------------------------

    def map_coeffs(self, fn: Callable[[RatFun], RatFun]) -> "LinearOperatorEq":
        return LinearOperatorEq(self.variable, self.kind, [fn(c) for c in self.coeffs])

    def shift_variable(self, a) -> "LinearOperatorEq":
        """Recenter: coefficients c(v) -> c(v + a) (solutions move by -a)."""
        return self.map_coeffs(lambda c: c.shift(self.variable, a))

    # -- canonical form ---------------------------------------------------------

    def cleared(self, remove_common: bool = True) -> List[MultiPoly]:
        """Common-denominator, content-free coefficients; leading coefficient's
        graded-lex lead is positive.  Empty list for the zero operator.

        remove_common=False keeps any common polynomial factor: dividing one
        out is sound over the rational-function coefficient field but changes
        which integer points a shift equation constrains."""
        if not self.coeffs:
            return []
        den = MultiPoly.const(self.ring_vars, 1)
        for c in self.coeffs:
            den = poly_lcm(den, c.den)
        polys = [c.num * den.div_exact(c.den) for c in self.coeffs]
        g = MultiPoly.zero(self.ring_vars)
        for p in polys:
            g = poly_gcd(g, p)
            if g.is_constant() and not g.is_zero():
                break
        if remove_common and not g.is_zero() \
                and not (g.is_constant() and g.constant_value() == 1):
            polys = [p.div_exact(g) for p in polys]
        content = Fraction(0)
        for p in polys:
            for c in p.terms.values():
                num = math.gcd(content.numerator, abs(c.numerator))
                den_ = content.denominator * c.denominator // math.gcd(
                    content.denominator, c.denominator)
                content = Fraction(num, den_)
        if content and content != 1:
            polys = [p.scale(1 / content) for p in polys]
        if polys[-1].leading_coeff_gradedlex() < 0:
            polys = [-p for p in polys]
        return polys

    def shift_normalized(self) -> "LinearOperatorEq":
        """For shift kind: remove a pure power of N (relabel the running index)."""
        if self.kind != SHIFT or not self.coeffs:
            return self
        v = 0
        while v < len(self.coeffs) and self.coeffs[v].is_zero():
            v += 1
        if v == 0:
            return self
        return LinearOperatorEq(
            self.variable, self.kind,
            [c.shift(self.variable, -v) for c in self.coeffs[v:]],
        )

    def canonical_key(self):
        polys = self.shift_normalized().cleared()
        return (self.variable, self.kind, tuple((p.vars, tuple(sorted(p.terms.items()))) for p in polys))

    def same_equation(self, other: "LinearOperatorEq") -> bool:
        """Equality up to canonical normalization (content, sign, common shift)."""
        if self.variable != other.variable or self.kind != other.kind:
            return False
        a = self.shift_normalized().cleared()
        b = other.shift_normalized().cleared()
        if len(a) != len(b):
            return False
        for p, q in zip(a, b):
            pv = {k: v for k, v in p.terms.items()}
            qv = {k: v for k, v in q.terms.items()}
            # rings may differ in unused variables; compare by named exponents
            if _named_terms(p) != _named_terms(q):
                return False
        return True

    # -- application to exact tables ------------------------------------------

    def apply_to_table(self, value_at: Callable[[int], object], n: int, params=None):
        """Residual sum_i c_i(n) * a(n+i) for a shift equation at integer n,
        using the cleared polynomial coefficients.  Returns None when every
        cleared coefficient vanishes at n (the equation is silent there)."""
        if self.kind != SHIFT:
            raise ValueError("apply_to_table needs a shift equation")
        assignment = dict(params or {})
        assignment[self.variable] = Fraction(n)
        values = [c.eval_frac(assignment)
                  for c in self.cleared(remove_common=False)]
        if all(v == 0 for v in values):
            return None
        total = 0
        for i, cv in enumerate(values):
            if cv != 0:
                total = total + value_at(n + i) * cv
        return total

    # -- printing -----------------------------------------------------------------

    def _fname(self) -> str:
        return "F" if self.kind == DIFF else "a"

    def _op_text(self, i: int) -> str:
        v = self.variable
        if self.kind == DIFF:
            if i <= 3:
                return "F" + "'" * i
            return f"F^({i})"
        if i == 0:
            return f"a[{v}]"
        return f"a[{v}+{i}]"

    def render(self) -> str:
        polys = self.cleared(remove_common=False)
        if not polys:
            return "0 = 0"
        parts = []
        for i, p in enumerate(polys):
            if p.is_zero():
                continue
            optxt = self._op_text(i)
            if p.is_constant():
                c = p.constant_value()
                body = optxt if abs(c) == 1 else f"{abs(c)}*{optxt}"
                neg = c < 0
            else:
                s = str(p)
                neg = False
                if len(p.terms) == 1:
                    if p.leading_coeff_gradedlex() < 0:
                        neg = True
                        s = str(-p)
                    body = f"{s}*{optxt}"
                else:
                    body = f"({s})*{optxt}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts) + " = 0"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"<{self.kind}-eq in {self.variable}: {self.render()}>"


def _named_terms(p: MultiPoly):
    out = set()
    for e, c in p.terms.items():
        key = tuple(sorted((name, k) for name, k in zip(p.vars, e) if k))
        out.add((key, c))
    return out


def operator_gcd_content(polys: Sequence[MultiPoly]) -> MultiPoly:
    g = None
    for p in polys:
        g = p if g is None else poly_gcd(g, p)
    return g
