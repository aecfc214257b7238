"""Parser and expression-tree behavior."""

from fractions import Fraction

import pytest

from holonomic.errors import ParseError
from holonomic.expr import (
    ADD, CALL, MUL, NUM, POW, SUM, INTG, SYM,
    ex_num, ex_sym, parse, to_text,
)


def test_arcsin_square():
    e = parse("ArcSin(x)^2")
    assert e.kind == POW and e.exponent == Fraction(2)
    assert e.args[0].kind == CALL and e.args[0].name == "arcsin"
    assert e.args[0].args[0] == ex_sym("x")


def test_aliases_case_insensitive():
    assert parse("asin(x)") == parse("ArcSin(x)")
    assert parse("AIRYAI(x)") == parse("AiryAi(x)")


def test_binomial_rewrites_to_factorials():
    e = parse("Binomial(n, k)")
    assert e.free_symbols() == {"n", "k"}
    txt = to_text(e)
    assert "!" in txt
    assert parse(txt) == e


def test_tan_rewrites():
    e = parse("tan(x+y)")
    assert e.kind == MUL
    kinds = sorted(a.kind for a in e.args)
    assert kinds == sorted([CALL, POW])


def test_sum_node():
    e = parse("Sum(Binomial(n,k)^2, k, 0, n)")
    assert e.kind == SUM
    assert e.bound_var == "k"
    assert e.lo == ex_num(0)
    assert e.hi == ex_sym("n")


def test_integral_node_with_infinity():
    e = parse("Integrate(x^n * exp(-x^2), x, 0, inf)")
    assert e.kind == INTG
    assert e.bound_var == "x"
    assert e.lo == ex_num(0)
    assert e.hi is None  # infinite upper bound


def test_floats_rejected():
    with pytest.raises(ParseError):
        parse("1.5*x")


def test_unknown_function_rejected():
    with pytest.raises(ParseError):
        parse("foo(x)")


def test_symbolic_exponent_becomes_geompow():
    e = parse("4^k")
    assert e.kind == CALL and e.name == "geompow"
    e2 = parse("(-1)^k")
    assert e2.kind == CALL and e2.name == "geompow"
    assert e2.args[0] == ex_num(-1)
    e3 = parse("x^n")
    assert e3.kind == CALL and e3.name == "geompow"


def test_numeric_powers_fold():
    assert parse("2^10") == ex_num(1024)
    assert parse("10^1000") == ex_num(10 ** 1000)
    assert parse("3!") == ex_num(6)


def test_gamma_to_factorial():
    e = parse("gamma(n+1)")
    assert e.kind == CALL and e.name == "factorial"
    assert e.args[0] == ex_sym("n")


def test_sqrt_is_half_power():
    e = parse("sqrt(1+x)")
    assert e.kind == POW and e.exponent == Fraction(1, 2)


def test_nested_power_not_collapsed_for_fractional_outer():
    e = parse("(x^2)^(1/2)")
    assert e.kind == POW and e.exponent == Fraction(1, 2)
    inner = e.args[0]
    assert inner.kind == POW and inner.exponent == Fraction(2)


def test_division_by_symbol():
    e = parse("(n! + (k!)^2)/k")
    assert e.kind == MUL
    last = e.args[-1]
    assert last.kind == POW and last.exponent == Fraction(-1)


def test_mul_order_preserved():
    assert parse("N*n") != parse("n*N")
    e = parse("2*N*n")
    assert e.kind == MUL and e.args[0] == ex_num(2)


ROUND_TRIP = [
    "ArcSin(x)^2",
    "AiryAi(x)^2",
    "sin(x+y)*(sin(x)*sin(y) - cos(x)*cos(y))",
    "Binomial(n,k)^3",
    "Sum(Binomial(n,k)^2 * Binomial(2*k, n), k, 0, n)",
    "Integrate(x^n * exp(-x^2 - y/x), x, 0, inf)",
    "(x^2 - 1)*D^2 + 2*x*D - n*(1+n)",
    "(n+2)*N^2 - (3 + 2*n)*x*N + (n+1)",
    "x^n * exp(-x^2) * HermiteH(n, x)",
    "LegendreP(n, x) + LegendreP(n+1, x)",
    "sqrt(1+x) + 1/sqrt(1+x)",
    "k * k!",
    "1/k",
]


@pytest.mark.parametrize("text", ROUND_TRIP)
def test_round_trip(text):
    e = parse(text)
    assert parse(to_text(e)) == e
