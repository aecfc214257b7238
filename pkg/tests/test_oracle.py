"""Evaluation oracles: term values, brute-force sums, series prefixes."""

from fractions import Fraction

import pytest

from holonomic.core import holonomic_de, holonomic_re
from holonomic.errors import EvaluationPole, PoleAtExpansionPoint
from holonomic.expr import parse
from holonomic.oracle import (brute_sum, gaussian_moment,
                              hermite_weighted_moment, legendre_series_at_one,
                              sequence_term, series_of_expr)
from holonomic.poly import RatFun
from holonomic.series import check_annihilates


def val(text, **assign):
    e = parse(text)
    ring = tuple(sorted(set(assign) | e.free_symbols()))
    a = {k: Fraction(v) for k, v in assign.items()}
    return sequence_term(e, a, ring, None).extract()


def as_frac(rf):
    assert rf.is_constant(), str(rf)
    return rf.constant_value()


# -- pointwise evaluation ----------------------------------------------------


def test_binomial_values():
    assert as_frac(val("Binomial(n,k)", n=5, k=2)) == 10
    assert as_frac(val("Binomial(n,k)", n=5, k=7)) == 0
    assert as_frac(val("Binomial(n,k)", n=5, k=-1)) == 0
    # negative upper index: C(-1,2) = (-1)(-2)/2
    assert as_frac(val("Binomial(n,k)", n=-1, k=2)) == 1
    assert as_frac(val("Binomial(n,k)", n=-2, k=3)) == -4


def test_vanishing_binomial_kills_finite_cofactor():
    assert as_frac(val("Binomial(n,k) * (k!)", n=3, k=5)) == 0


def test_exact_zero_kills_undefined_cofactor():
    assert as_frac(val("(n-k)/(n-3)", n=3, k=3)) == 0


def test_pole_detection():
    with pytest.raises(EvaluationPole):
        val("(n! + (k!)^2)/k", n=2, k=0)


def test_legendre_value_table():
    # P_2(x) = (3 x^2 - 1)/2 kept symbolic in x
    got = val("LegendreP(n, x)", n=2)
    x = RatFun.var(got.vars, "x")
    assert got == (x * x * 3 - 1) / 2


def test_hermite_value_table():
    assert as_frac(val("HermiteH(n, x)", n=3, x=1)) == -4  # 8 - 12
    assert as_frac(val("HermiteH(n, x)", n=0, x=7)) == 1


def test_gegenbauer_value_table():
    # lambda = -1/2: C_0 = 1, C_1 = -x, C_2 = (1-x^2)/2 = (P_0 - P_2)/3
    assert as_frac(val("GegenbauerC(n, -1/2, x)", n=2, x=3)) == -4


def test_brute_sum_binomials():
    s = parse("Sum(Binomial(n,k), k, 0, n)")
    for n in range(7):
        got = brute_sum(s, {"n": Fraction(n)}, ("n",), None)
        assert as_frac(got) == 2 ** n


def test_brute_sum_boundary_margin_catches_bad_support():
    # summand does not vanish outside the stated range
    s = parse("Sum(k + 1, k, 0, n)")
    with pytest.raises(ValueError):
        brute_sum(s, {"n": Fraction(4)}, ("n",), None)


# -- series ----------------------------------------------------


def series_fracs(e_text, var, depth, point=0):
    pre = series_of_expr(parse(e_text), var, Fraction(point), depth, None)
    return [as_frac(c) for c in pre.coeffs]


def test_series_exp():
    got = series_fracs("exp(x)", "x", 6)
    assert got == [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 6),
                   Fraction(1, 24), Fraction(1, 120)]


def test_series_arcsin_square():
    got = series_fracs("ArcSin(x)^2", "x", 9)
    assert got[2] == 1
    assert got[4] == Fraction(1, 3)
    assert got[6] == Fraction(8, 45)
    assert got[8] == Fraction(4, 35)
    assert got[1] == got[3] == got[5] == 0


def test_series_sqrt_binomial():
    got = series_fracs("sqrt(1+x)", "x", 5)
    assert got == [1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16),
                   Fraction(-5, 128)]


def test_series_rational_at_shifted_point():
    got = series_fracs("1/x", "x", 4, point=2)
    assert got == [Fraction(1, 2), Fraction(-1, 4), Fraction(1, 8),
                   Fraction(-1, 16)]


def test_series_pole_at_point():
    with pytest.raises(PoleAtExpansionPoint):
        series_of_expr(parse("1/x"), "x", Fraction(0), 4, None)


def test_series_with_opaque_constants():
    # sin(x+y) about x=0: coefficients lie in Q(sin@y, cos@y)
    pre = series_of_expr(parse("sin(x+y)"), "x", Fraction(0), 8, None)
    names = set()
    for c in pre.coeffs:
        names.update(v for v in c.vars if c.num.uses_var(v) or c.den.uses_var(v))
    assert "sin@y" in names and "cos@y" in names
    de = holonomic_de("sin(x+y)", "x")
    ok, residuals = check_annihilates(de, pre)
    assert ok, residuals


def test_series_symbolic_exponent():
    # (1+x)^a: coefficient of x^2 is a(a-1)/2
    pre = series_of_expr(parse("(1+x)^a"), "x", Fraction(0), 4, None)
    c2 = pre.coeffs[2]
    a = RatFun.var(c2.vars, "a")
    assert c2 == (a * a - a) / 2


def test_series_validates_golden_derivations():
    cases = [
        ("ArcSin(x)^2", "x", 24),
        ("AiryAi(x)^2", "x", 20),
        ("sin(x+y)*(sin(x)*sin(y) - cos(x)*cos(y))", "x", 16),
        ("cos(x+y)*(sin(x)*cos(y) + cos(x)*sin(y))", "x", 16),
        ("cos(y)*sin(y)", "y", 16),
        ("sin(2*y)/2", "y", 16),
        ("sqrt(1+x) + 1/sqrt(1+x)", "x", 16),
        ("arctan(x)", "x", 16),
        ("exp(x)*sin(x)", "x", 16),
    ]
    for text, var, depth in cases:
        de = holonomic_de(text, var)
        pre = series_of_expr(parse(text), var, Fraction(0), depth, None)
        ok, residuals = check_annihilates(de, pre)
        assert ok, (text, residuals)


def test_trig_addition_sides_are_opposite():
    lhs = series_of_expr(
        parse("sin(x+y)*(sin(x)*sin(y) - cos(x)*cos(y))"),
        "x", Fraction(0), 12, None)
    rhs = series_of_expr(
        parse("cos(x+y)*(sin(x)*cos(y) + cos(x)*sin(y))"),
        "x", Fraction(0), 12, None)
    # lhs = -sin(x+y)cos(x+y), rhs = +sin(x+y)cos(x+y); the sum must vanish
    # modulo sin@y^2 + cos@y^2 = 1, which an exact 3-4-5 point witnesses
    for a, b in zip(lhs.coeffs, rhs.coeffs):
        d = a + b
        point = {v: Fraction(1) for v in d.vars}
        point["sin@y"] = Fraction(3, 5)
        point["cos@y"] = Fraction(4, 5)
        assert d.eval_frac(point) == 0, str(d)


# -- recurrences against value tables ------------------------------------------


def test_re_checks_against_value_tables():
    cases = [
        ("Binomial(n,k)^2", "n", {"k": 3}),
        ("Binomial(n,k)^2", "k", {"n": 7}),
        ("(n! + (k!)^2)/k", "n", {"k": 2}),
        ("(n! + (k!)^2)/k", "k", {"n": 3}),
        ("LegendreP(n, x)", "n", {"x": 2}),
        ("HermiteH(n, x)", "n", {"x": 3}),
        ("GegenbauerC(n, -1/2, x)", "n", {"x": 5}),
    ]
    for text, var, fixed in cases:
        e = parse(text)
        eq = holonomic_re(text, var)
        names = tuple(sorted(set(fixed) | {var}))
        fixed_fr = {k: Fraction(v) for k, v in fixed.items()}

        def value_at(j, _e=e, _names=names, _fixed=fixed_fr, _var=var):
            a = dict(_fixed)
            a[_var] = Fraction(j)
            return as_frac(sequence_term(_e, a, _names, None).extract())

        checked = 0
        for n0 in range(1, 9):
            res = eq.apply_to_table(value_at, n0, fixed_fr)
            if res is None:
                continue
            assert res == 0, (text, var, n0, res)
            checked += 1
        assert checked >= 5, (text, var)


# -- closed-form weighted moments ------------------------------------------------


def test_gaussian_moments():
    ring = ("sqrt_pi",)
    sp = RatFun.var(ring, "sqrt_pi")
    assert gaussian_moment(0, ring) == sp
    assert gaussian_moment(1, ring).is_zero()
    assert gaussian_moment(2, ring) == sp * Fraction(1, 2)
    assert gaussian_moment(6, ring) == sp * Fraction(15, 8)


def test_hermite_weighted_moments_are_factorials():
    ring = ("sqrt_pi", "x")
    sp = RatFun.var(ring, "sqrt_pi")
    f = 1
    for n in range(7):
        if n > 0:
            f *= n
        assert hermite_weighted_moment(n) == sp * Fraction(f), n


def test_legendre_series_at_one_matches_low_degrees():
    ring = ("t",)
    table = [
        (1, [1, 1]),
        (2, [1, 3, Fraction(3, 2)]),
        (3, [1, 6, Fraction(15, 2), Fraction(5, 2)]),
    ]
    for nu, poly_vals in table:
        got = legendre_series_at_one(RatFun.from_const(ring, nu), 6, ring)
        for m in range(6):
            expect = poly_vals[m] if m < len(poly_vals) else 0
            assert as_frac(got[m]) == expect, (nu, m)
