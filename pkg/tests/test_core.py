"""Derivation of differential equations and recurrences: golden cases.

Expected equations below were frozen from independent hand derivations and
cross-checks (series/table residuals are asserted via the oracle in
test_oracle.py and again in the acceptance suite)."""

from fractions import Fraction

import pytest

from holonomic.core import (closure_product, closure_sum, de_to_re,
                            expr_to_ratfun, holonomic_de, holonomic_re,
                            re_to_de, substitute_rational)
from holonomic.errors import (ConstantSubstitution, ExtendedAlgorithmRequired,
                              NonHolonomicInput)
from holonomic.expr import parse
from holonomic.operator import DIFF, SHIFT, LinearOperatorEq
from holonomic.poly import RatFun


def eq_of(var, kind, ring, *texts):
    coeffs = []
    for t in texts:
        rf = expr_to_ratfun(parse(t), ring)
        assert rf is not None, t
        coeffs.append(rf)
    return LinearOperatorEq(var, kind, coeffs)


# -- closures ------------------------------------------------------------------


def test_closure_sum_same_equation_collapses():
    ring = ("x",)
    trig = eq_of("x", DIFF, ring, "1", "0", "1")
    assert closure_sum(trig, trig).same_equation(trig)


def test_closure_sum_exp_plus_geometric():
    ring = ("x",)
    expq = eq_of("x", DIFF, ring, "-1", "1")
    geo = eq_of("x", DIFF, ring, "1", "1 - x")  # annihilates 1/(1-x)
    s = closure_sum(expq, geo)
    assert s.order == 2


def test_closure_product_formal_module_order():
    # sin*cos as a formal product module: first dependence at order 3,
    # even though the function satisfies an order-2 equation
    ring = ("y",)
    trig = eq_of("y", DIFF, ring, "1", "0", "1")
    p = closure_product(trig, trig)
    assert p.same_equation(eq_of("y", DIFF, ring, "0", "4", "0", "1"))


def test_substitute_rational_double_angle():
    ring = ("y",)
    trig = eq_of("y", DIFF, ring, "1", "0", "1")
    two_y = expr_to_ratfun(parse("2*y"), ring)
    sub = substitute_rational(trig, two_y)
    assert sub.same_equation(eq_of("y", DIFF, ring, "4", "0", "1"))


def test_substitute_constant_rejected():
    ring = ("x", "y")
    trig = eq_of("x", DIFF, ring, "1", "0", "1")
    with pytest.raises(ConstantSubstitution):
        substitute_rational(trig, expr_to_ratfun(parse("y"), ring))


def test_closure_shift_sum_factorial_plus_constant():
    ring = ("k", "n")
    fact = eq_of("n", SHIFT, ring, "-(n+1)", "1")
    const = eq_of("n", SHIFT, ring, "-1", "1")
    s = closure_sum(fact, const)
    assert s.same_equation(eq_of("n", SHIFT, ring,
                                 "(1+n)^2", "-1 - 3*n - n^2", "n"))


# -- golden differential derivations ------------------------------------------------


def test_arcsin_square():
    got = holonomic_de("ArcSin(x)^2", "x")
    assert got.same_equation(eq_of("x", DIFF, ("x",), "0", "1", "3*x", "x^2 - 1"))


def test_airy():
    got = holonomic_de("AiryAi(x)", "x")
    assert got.same_equation(eq_of("x", DIFF, ("x",), "-x", "0", "1"))


def test_airy_square():
    got = holonomic_de("AiryAi(x)^2", "x")
    assert got.same_equation(eq_of("x", DIFF, ("x",), "2", "4*x", "0", "-1"))


def test_trig_product_lhs():
    got = holonomic_de("sin(x+y)*(sin(x)*sin(y) - cos(x)*cos(y))", "x")
    assert got.same_equation(eq_of("x", DIFF, ("x", "y"), "0", "4", "0", "1"))


def test_trig_product_rhs():
    got = holonomic_de("cos(x+y)*(sin(x)*cos(y) + cos(x)*sin(y))", "x")
    assert got.same_equation(eq_of("x", DIFF, ("x", "y"), "0", "4", "0", "1"))


def test_cos_sin_product_form():
    got = holonomic_de("cos(y)*sin(y)", "y")
    assert got.same_equation(eq_of("y", DIFF, ("y",), "0", "4", "0", "1"))


def test_sin_double_angle_form():
    got = holonomic_de("sin(2*y)/2", "y")
    assert got.same_equation(eq_of("y", DIFF, ("y",), "4", "0", "1"))


def test_legendre_de_template():
    got = holonomic_de("LegendreP(n, x)", "x")
    assert got.same_equation(
        eq_of("x", DIFF, ("n", "x"), "-n*(1+n)", "2*x", "x^2 - 1"))


def test_hermite_de_template():
    got = holonomic_de("HermiteH(n, x)", "x")
    assert got.same_equation(eq_of("x", DIFF, ("n", "x"), "2*n", "-2*x", "1"))


def test_integer_index_family_is_rational():
    got = holonomic_de("LegendreP(2, x)", "x")
    # P_2 = (3x^2-1)/2 satisfies the first-order equation p F' - p' F = 0
    assert got.order == 1


def test_sqrt_combination():
    got = holonomic_de("sqrt(1+x) + 1/sqrt(1+x)", "x")
    assert got.same_equation(
        eq_of("x", DIFF, ("x",), "-1", "4*(1+x)", "4*(1+x)^2"))


def test_power_of_x_symbolic_exponent():
    got = holonomic_de("x^n", "x")
    assert got.same_equation(eq_of("x", DIFF, ("n", "x"), "-n", "x"))


# -- golden shift derivations ---------------------------------------------------


def test_binomial_square_in_n():
    got = holonomic_re("Binomial(n,k)^2", "n")
    assert got.same_equation(
        eq_of("n", SHIFT, ("k", "n"), "(1+n)^2", "-(1-k+n)^2"))


def test_binomial_square_in_k():
    got = holonomic_re("Binomial(n,k)^2", "k")
    assert got.same_equation(
        eq_of("k", SHIFT, ("k", "n"), "(-k+n)^2", "-(1+k)^2"))


def test_mixed_term_in_n():
    got = holonomic_re("(n! + (k!)^2)/k", "n")
    assert got.same_equation(
        eq_of("n", SHIFT, ("k", "n"), "(1+n)^2", "-1 - 3*n - n^2", "n"))


def test_mixed_term_in_k():
    got = holonomic_re("(n! + (k!)^2)/k", "k")
    assert got.same_equation(eq_of(
        "k", SHIFT, ("k", "n"),
        "k*(1+k)^3*(3+k)",
        "-(1+k)*(1+3*k+k^2)*(3+3*k+k^2)",
        "k*(2+k)^2"))


def test_legendre_re_template():
    got = holonomic_re("LegendreP(n, x)", "n")
    assert got.same_equation(
        eq_of("n", SHIFT, ("n", "x"), "n+1", "-(3+2*n)*x", "n+2"))


def test_legendre_re_shifted_index():
    got = holonomic_re("LegendreP(n+1, x)", "n")
    assert got.same_equation(
        eq_of("n", SHIFT, ("n", "x"), "n+2", "-(5+2*n)*x", "n+3"))


def test_hermite_re_template():
    got = holonomic_re("HermiteH(n, x)", "n")
    assert got.same_equation(
        eq_of("n", SHIFT, ("n", "x"), "2*(n+1)", "-2*x", "1"))


def test_geometric_sequence():
    got = holonomic_re("x^n", "n")
    assert got.same_equation(eq_of("n", SHIFT, ("n", "x"), "-x", "1"))


# -- conversions ----------------------------------------------------------


def test_de_to_re_arcsin_square():
    de = eq_of("x", DIFF, ("x",), "0", "1", "3*x", "x^2 - 1")
    re = de_to_re(de, "n")
    assert re.same_equation(
        eq_of("n", SHIFT, ("n",), "n^3", "0", "-n*(1+n)*(2+n)"))


def test_re_to_de_central_binomial():
    re = eq_of("n", SHIFT, ("n",), "-2*(2*n+1)", "n+1")
    de = re_to_de(re, "x")
    assert de.same_equation(eq_of("x", DIFF, ("x",), "-2", "1 - 4*x"))


def test_re_to_de_factorial_needs_homogenization():
    re = eq_of("n", SHIFT, ("n",), "-(n+1)", "1")
    de = re_to_de(re, "x")
    assert de.same_equation(eq_of("x", DIFF, ("x",), "1", "3*x - 1", "x^2"))


def test_de_to_re_rejects_parameter_collision():
    de = eq_of("x", DIFF, ("n", "x"), "-n", "x")
    with pytest.raises(ValueError):
        de_to_re(de, "n")


# -- failure modes ---------------------------------------------------------------


def test_tan_is_rejected():
    with pytest.raises(NonHolonomicInput):
        holonomic_de("tan(x+y)", "x")


def test_hypergeometric_needs_extension():
    with pytest.raises(ExtendedAlgorithmRequired):
        holonomic_de("Hypergeometric2F1(a, b, c, x)", "x")


def test_half_integer_factorial_needs_extension():
    with pytest.raises(ExtendedAlgorithmRequired):
        holonomic_re("gamma(n/2 + 1)", "n")


def test_constant_call_in_var_free_subtree_still_flags_unsupported():
    with pytest.raises(ExtendedAlgorithmRequired):
        holonomic_de("x + Hypergeometric1F1(a, b, y)", "x")
