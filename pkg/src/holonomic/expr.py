"""Closed-form expression trees and the input grammar.

Grammar (EBNF, also shipped in README):

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := ("+" | "-") unary | power
    power    := postfix ("^" unary)?          right associative
    postfix  := atom "!"*
    atom     := INTEGER | NAME | NAME "(" expr ("," expr)* ")" | "(" expr ")"

Explicit "*" is required (no implicit multiplication).  Function names are
case-insensitive.  "!" binds tighter than "^".  Rewrites applied during
parsing: a/b -> a*b^-1; tan(u) -> sin(u)*cos(u)^-1; binomial(a,b) ->
a!*(b!)^-1*((a-b)!)^-1; gamma(a) -> (a-1)!; sqrt(u) -> u^(1/2); a^e with a
non-rational exponent e -> the discrete power primitive geompow(a, e).
Sum(body, k, a, b) and Integrate(body, x, a, b) accept -inf/inf bounds.

Expressions are immutable; mul/add preserve written argument order (the same
grammar parses noncommutative operator polynomials, where order matters).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import ParseError

# node kinds: num, sym, add, mul, pow, call, sum, intg
NUM, SYM, ADD, MUL, POW, CALL, SUM, INTG = (
    "num", "sym", "add", "mul", "pow", "call", "sum", "intg",
)

KNOWN_FUNCTIONS = {
    "exp", "sin", "cos", "tan", "arcsin", "arctan", "airyai", "factorial",
    "legendrep", "hermiteh", "gegenbauerc", "geompow", "binomial", "gamma",
    "sqrt", "hypergeometric2f1", "hypergeometric1f1", "besselj",
}

ALIASES = {"asin": "arcsin", "atan": "arctan", "ln": "log", "airy": "airyai"}


@dataclass(frozen=True)
class Expr:
    kind: str
    value: Optional[Fraction] = None
    name: Optional[str] = None
    args: Tuple["Expr", ...] = ()
    exponent: Optional[Fraction] = None
    bound_var: Optional[str] = None
    lo: Optional["Expr"] = None  # None = -infinity for sum/intg
    hi: Optional["Expr"] = None  # None = +infinity

    # -- convenience constructors used across the engine ---------------------

    def __add__(self, other):
        return ex_add(self, as_expr(other))

    def __radd__(self, other):
        return ex_add(as_expr(other), self)

    def __mul__(self, other):
        return ex_mul(self, as_expr(other))

    def __rmul__(self, other):
        return ex_mul(as_expr(other), self)

    def __sub__(self, other):
        return ex_add(self, ex_mul(ex_num(-1), as_expr(other)))

    def __rsub__(self, other):
        return ex_add(as_expr(other), ex_mul(ex_num(-1), self))

    def __pow__(self, q):
        return ex_pow(self, Fraction(q))

    def free_symbols(self) -> set:
        out = set()
        if self.kind == SYM:
            out.add(self.name)
        for a in self.args:
            out |= a.free_symbols()
        for b in (self.lo, self.hi):
            if b is not None:
                out |= b.free_symbols()
        if self.kind in (SUM, INTG):
            out.discard(self.bound_var)
        return out

    def is_number(self) -> bool:
        return self.kind == NUM

    def __str__(self) -> str:
        return to_text(self)


def as_expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return ex_num(v)
    if isinstance(v, str):
        return ex_sym(v)
    raise TypeError(f"cannot convert {v!r} to Expr")


def ex_num(q) -> Expr:
    return Expr(NUM, value=Fraction(q))


def ex_sym(name: str) -> Expr:
    return Expr(SYM, name=name)


def ex_add(*terms) -> Expr:
    flat = []
    const = Fraction(0)
    for t in terms:
        t = as_expr(t)
        if t.kind == ADD:
            inner = t.args
        else:
            inner = (t,)
        for u in inner:
            if u.kind == NUM:
                const += u.value
            else:
                flat.append(u)
    if const or not flat:
        flat.append(ex_num(const))
    if len(flat) == 1:
        return flat[0]
    return Expr(ADD, args=tuple(flat))


def ex_mul(*factors) -> Expr:
    flat = []
    const = Fraction(1)
    for f in factors:
        f = as_expr(f)
        if f.kind == MUL:
            inner = f.args
        else:
            inner = (f,)
        for u in inner:
            if u.kind == NUM:
                const *= u.value
            else:
                flat.append(u)
    if const == 0:
        return ex_num(0)
    if const != 1 or not flat:
        flat.insert(0, ex_num(const))
    if len(flat) == 1:
        return flat[0]
    return Expr(MUL, args=tuple(flat))


def ex_pow(base, q) -> Expr:
    base = as_expr(base)
    q = Fraction(q)
    if q == 1:
        return base
    if base.kind == NUM and q.denominator == 1:
        if q >= 0:
            return ex_num(base.value ** q.numerator)
        if base.value != 0:
            return ex_num(base.value ** q.numerator)
    if base.kind == POW and q.denominator == 1:
        return ex_pow(base.args[0], base.exponent * q)
    return Expr(POW, args=(base,), exponent=q)


def ex_call(name: str, *args) -> Expr:
    return Expr(CALL, name=name, args=tuple(as_expr(a) for a in args))


def ex_sum(body, var: str, lo, hi) -> Expr:
    return Expr(SUM, args=(as_expr(body),), bound_var=var,
                lo=None if lo is None else as_expr(lo),
                hi=None if hi is None else as_expr(hi))


def ex_intg(body, var: str, lo, hi) -> Expr:
    return Expr(INTG, args=(as_expr(body),), bound_var=var,
                lo=None if lo is None else as_expr(lo),
                hi=None if hi is None else as_expr(hi))


def ex_factorial(arg) -> Expr:
    arg = as_expr(arg)
    if arg.kind == NUM and arg.value.denominator == 1 and 0 <= arg.value <= 100:
        v = 1
        for i in range(2, int(arg.value) + 1):
            v *= i
        return ex_num(v)
    return ex_call("factorial", arg)


def ex_binomial(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    return ex_mul(
        ex_factorial(a),
        ex_pow(ex_factorial(b), -1),
        ex_pow(ex_factorial(a - b), -1),
    )


def subs_symbol(e: Expr, name: str, repl: Expr) -> Expr:
    """Substitute repl for the free symbol `name` in e."""
    if e.kind == SYM:
        return repl if e.name == name else e
    if e.kind == NUM:
        return e
    if e.kind in (SUM, INTG) and e.bound_var == name:
        return e
    args = tuple(subs_symbol(a, name, repl) for a in e.args)
    lo = subs_symbol(e.lo, name, repl) if e.lo is not None else None
    hi = subs_symbol(e.hi, name, repl) if e.hi is not None else None
    return Expr(e.kind, value=e.value, name=e.name, args=args,
                exponent=e.exponent, bound_var=e.bound_var, lo=lo, hi=hi)


# -- tokenizer -----------------------------------------------------------------


def _tokenize(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and (text[j] == "." or text[j].lower() == "e" and j + 1 < n and text[j + 1].isdigit()):
                raise ParseError("floating-point literals are not supported", i)
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
            continue
        if c in "+-*/^!(),":
            toks.append((c, c, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, known_symbols=None):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1]!r}", t[2])
        return t

    def parse(self) -> Expr:
        e = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected trailing input {t[1]!r}", t[2])
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            if op == "+":
                e = ex_add(e, rhs)
            else:
                e = ex_add(e, ex_mul(ex_num(-1), rhs))
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            rhs = self.unary()
            if op == "*":
                e = ex_mul(e, rhs)
            else:
                if rhs.kind == NUM:
                    if rhs.value == 0:
                        raise ParseError("division by zero")
                    e = ex_mul(e, ex_num(Fraction(1) / rhs.value))
                else:
                    e = ex_mul(e, ex_pow(rhs, -1))
        return e

    def unary(self) -> Expr:
        t = self.peek()
        if t[0] == "+":
            self.next()
            return self.unary()
        if t[0] == "-":
            self.next()
            return ex_mul(ex_num(-1), self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.postfix()
        if self.peek()[0] == "^":
            self.next()
            exp = self.unary()  # right associative, unary minus allowed
            return self._make_pow(base, exp)
        return base

    def _make_pow(self, base: Expr, exp: Expr) -> Expr:
        if exp.kind == NUM:
            return ex_pow(base, exp.value)
        return ex_call("geompow", base, exp)

    def postfix(self) -> Expr:
        e = self.atom()
        while self.peek()[0] == "!":
            self.next()
            e = ex_factorial(e)
        return e

    def atom(self) -> Expr:
        t = self.next()
        if t[0] == "num":
            return ex_num(int(t[1]))
        if t[0] == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t[0] == "name":
            name = t[1]
            if self.peek()[0] == "(":
                return self.call(name, t[2])
            lowered = name.lower()
            if lowered in ("inf", "infinity", "oo"):
                return Expr(SYM, name="inf")
            return ex_sym(name)
        raise ParseError(f"unexpected token {t[1]!r}", t[2])

    def call(self, name: str, at: int) -> Expr:
        self.expect("(")
        args = [self.expr()]
        while self.peek()[0] == ",":
            self.next()
            args.append(self.expr())
        self.expect(")")
        key = name.lower()
        key = ALIASES.get(key, key)
        if key in ("sum", "integrate"):
            if len(args) != 4:
                raise ParseError(f"{name} needs (body, var, lo, hi)", at)
            body, var, lo, hi = args
            if var.kind != SYM:
                raise ParseError(f"{name} bound variable must be a symbol", at)
            lo_b = _bound(lo)
            hi_b = _bound(hi)
            maker = ex_sum if key == "sum" else ex_intg
            return maker(body, var.name, lo_b, hi_b)
        if key == "binomial":
            if len(args) != 2:
                raise ParseError("binomial needs 2 arguments", at)
            return ex_binomial(*args)
        if key == "gamma":
            if len(args) != 1:
                raise ParseError("gamma needs 1 argument", at)
            return ex_factorial(args[0] - 1)
        if key == "sqrt":
            if len(args) != 1:
                raise ParseError("sqrt needs 1 argument", at)
            return ex_pow(args[0], Fraction(1, 2))
        if key == "tan":
            if len(args) != 1:
                raise ParseError("tan needs 1 argument", at)
            return ex_mul(ex_call("sin", args[0]), ex_pow(ex_call("cos", args[0]), -1))
        if key not in KNOWN_FUNCTIONS:
            raise ParseError(f"unknown function {name!r}", at)
        return ex_call(key, *args)


def _bound(e: Expr):
    if e.kind == SYM and e.name == "inf":
        return None
    if e.kind == MUL and len(e.args) == 2 and e.args[0] == ex_num(-1) \
            and e.args[1].kind == SYM and e.args[1].name == "inf":
        return None
    return e


def parse(text: str) -> Expr:
    """Parse an expression string into a canonical Expr."""
    return _Parser(text).parse()


# -- printer ------------------------------------------------------------------


def _frac_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_text(e: Expr, prec: int = 0) -> str:
    """Emit parseable text.  prec: 0 add, 1 mul, 2 unary, 3 power-base."""
    if e.kind == NUM:
        s = _frac_text(e.value)
        need = (e.value < 0 and prec >= 1) or (e.value.denominator != 1 and prec >= 1)
        return f"({s})" if need else s
    if e.kind == SYM:
        return e.name
    if e.kind == ADD:
        parts = []
        for i, a in enumerate(e.args):
            t = to_text(a, 0 if i == 0 else 1)
            if i and t.startswith("-"):
                parts.append(" - " + t[1:])
            elif i:
                parts.append(" + " + t)
            else:
                parts.append(t)
        s = "".join(parts)
        return f"({s})" if prec >= 1 else s
    if e.kind == MUL:
        parts = [to_text(a, 2) for a in e.args]
        s = "*".join(parts)
        return f"({s})" if prec >= 2 else s
    if e.kind == POW:
        base = to_text(e.args[0], 3)
        q = e.exponent
        if q.denominator == 1 and q >= 0:
            return f"{base}^{q.numerator}"
        return f"{base}^({_frac_text(q)})"
    if e.kind == CALL:
        if e.name == "factorial" and len(e.args) == 1:
            return f"{to_text(e.args[0], 3)}!"
        if e.name == "geompow" and len(e.args) == 2:
            return f"{to_text(e.args[0], 3)}^({to_text(e.args[1])})"
        return f"{e.name}(" + ", ".join(to_text(a) for a in e.args) + ")"
    if e.kind in (SUM, INTG):
        fn = "Sum" if e.kind == SUM else "Integrate"
        lo = "-inf" if e.lo is None else to_text(e.lo)
        hi = "inf" if e.hi is None else to_text(e.hi)
        return f"{fn}({to_text(e.args[0])}, {e.bound_var}, {lo}, {hi})"
    raise ValueError(f"unknown node kind {e.kind}")
