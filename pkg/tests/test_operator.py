"""LinearOperatorEq algebra, canonical forms, and series/table checks."""

from fractions import Fraction

import pytest

from holonomic.operator import DIFF, SHIFT, LinearOperatorEq
from holonomic.poly import MultiPoly, RatFun
from holonomic.series import SeriesPrefix, check_annihilates, series_of_ratfun


def P(vars, text_terms):
    """tiny helper: build MultiPoly from {exps: coeff} over vars"""
    return MultiPoly(vars, {tuple(e): Fraction(c) for e, c in text_terms.items()})


def op_from_ints(var, kind, vars, colists):
    polys = []
    for spec in colists:
        if isinstance(spec, MultiPoly):
            polys.append(spec)
        else:
            polys.append(MultiPoly.const(vars, spec))
    return LinearOperatorEq.from_polys(var, kind, polys)


def test_compose_diff_product_rule():
    vars = ("x",)
    x = MultiPoly.var(vars, "x")
    airy = LinearOperatorEq.from_polys("x", DIFF, [-x, MultiPoly.zero(vars), MultiPoly.const(vars, 1)])
    D = LinearOperatorEq.op("x", DIFF, vars)
    comp = D.compose(airy)
    # D(f'' - x f) = f''' - x f' - f
    assert comp.order == 3
    assert comp.coeff(0) == RatFun.from_const(vars, -1)
    assert comp.coeff(1) == -RatFun.var(vars, "x")
    assert comp.coeff(2).is_zero()
    assert comp.coeff(3) == RatFun.from_const(vars, 1)


def test_compose_shift_moves_coefficient():
    vars = ("n",)
    n = MultiPoly.var(vars, "n")
    mult_by_n = LinearOperatorEq.from_polys("n", SHIFT, [n])
    N = LinearOperatorEq.op("n", SHIFT, vars)
    comp = N.compose(mult_by_n)
    assert comp.order == 1
    assert comp.coeff(0).is_zero()
    assert comp.coeff(1) == RatFun.from_poly(n) + 1


def test_right_divmod_exact_both_kinds():
    for kind, var in ((DIFF, "x"), (SHIFT, "n")):
        vars = (var,)
        v = MultiPoly.var(vars, var)
        A = LinearOperatorEq.from_polys(var, kind, [v + 2, MultiPoly.const(vars, 3), v])
        B = LinearOperatorEq.from_polys(var, kind, [v * v - 1, MultiPoly.const(vars, 5)])
        p = A.compose(B)
        q, r = p.right_divmod(B)
        assert r.is_zero()
        assert (q - A).is_zero()


def test_right_divmod_remainder():
    vars = ("n",)
    n = MultiPoly.var(vars, "n")
    p = LinearOperatorEq.from_polys("n", SHIFT, [n, MultiPoly.const(vars, 0), MultiPoly.const(vars, 1)])
    b = LinearOperatorEq.from_polys("n", SHIFT, [MultiPoly.const(vars, -3), MultiPoly.const(vars, 1)])
    q, r = p.right_divmod(b)
    assert r.order <= 0
    recon = q.compose(b) + r
    assert (recon - p).is_zero()


def test_same_equation_scaling_and_shift():
    vars = ("n",)
    n = MultiPoly.var(vars, "n")
    eq = LinearOperatorEq.from_polys("n", SHIFT, [n, MultiPoly.const(vars, 1)])
    scaled = eq.scale(RatFun(MultiPoly.const(vars, 1), n + 1))
    assert eq.same_equation(scaled)
    # a(n+2) + n a(n+1) = 0 relabels to a(m+1) + (m-1) a(m) = 0
    up = LinearOperatorEq.from_polys(
        "n", SHIFT, [MultiPoly.zero(vars), n, MultiPoly.const(vars, 1)])
    down = LinearOperatorEq.from_polys("n", SHIFT, [n - 1, MultiPoly.const(vars, 1)])
    assert up.same_equation(down)
    assert not eq.same_equation(up)


def test_same_equation_ignores_unused_ring_vars():
    a = LinearOperatorEq.from_polys("x", DIFF, [MultiPoly.var(("x",), "x"), MultiPoly.const(("x",), 1)])
    b = LinearOperatorEq.from_polys(
        "x", DIFF, [MultiPoly.var(("x", "y"), "x"), MultiPoly.const(("x", "y"), 1)])
    assert a.same_equation(b)


def test_render_matches_equation_style():
    vars = ("x",)
    x = MultiPoly.var(vars, "x")
    eq = LinearOperatorEq.from_polys(
        "x", DIFF,
        [MultiPoly.zero(vars), MultiPoly.const(vars, 1), x * 3, x * x - 1])
    assert eq.render() == "F' + 3*x*F'' + (x^2 - 1)*F''' = 0"


def test_render_shift():
    vars = ("n",)
    n = MultiPoly.var(vars, "n")
    eq = LinearOperatorEq.from_polys("n", SHIFT, [(n + 1) * (n + 1), -(n + 2)])
    txt = eq.render()
    assert "a[n]" in txt and "a[n+1]" in txt and txt.endswith("= 0")


def test_apply_to_table_arcsin_square_coefficients():
    # a(n) = nth Taylor coefficient of arcsin(x)^2; satisfies
    # n^3 a(n) - n(n+1)(n+2) a(n+2) = 0
    table = {0: Fraction(0), 1: Fraction(0), 2: Fraction(1), 3: Fraction(0),
             4: Fraction(1, 3), 5: Fraction(0), 6: Fraction(8, 45),
             7: Fraction(0), 8: Fraction(4, 35)}
    vars = ("n",)
    n = MultiPoly.var(vars, "n")
    eq = LinearOperatorEq.from_polys(
        "n", SHIFT, [n ** 3, MultiPoly.zero(vars), -(n * (n + 1) * (n + 2))])
    checked = 0
    for m in range(0, 7):
        res = eq.apply_to_table(lambda i: table[i], m)
        if res is None:
            # every coefficient vanishes at m: the equation is silent there
            assert m == 0
            continue
        assert res == 0
        checked += 1
    assert checked == 6


def test_check_annihilates_exp_and_sin():
    vars = ("x",)
    one = MultiPoly.const(vars, 1)
    exp_eq = LinearOperatorEq.from_polys("x", DIFF, [-one, one])
    coeffs = [RatFun.from_const((), Fraction(1, _fact(i))) for i in range(12)]
    pre = SeriesPrefix("x", DIFF, Fraction(0), tuple(coeffs))
    ok, _ = check_annihilates(exp_eq, pre)
    assert ok

    sin_eq = LinearOperatorEq.from_polys("x", DIFF, [one, MultiPoly.zero(vars), one])
    sin_coeffs = []
    for i in range(12):
        if i % 2 == 0:
            sin_coeffs.append(RatFun.from_const((), 0))
        else:
            sign = 1 if (i // 2) % 2 == 0 else -1
            sin_coeffs.append(RatFun.from_const((), Fraction(sign, _fact(i))))
    pre = SeriesPrefix("x", DIFF, Fraction(0), tuple(sin_coeffs))
    ok, _ = check_annihilates(sin_eq, pre)
    assert ok
    ok_wrong, res = check_annihilates(exp_eq, pre)
    assert not ok_wrong


def test_check_annihilates_shifted_point():
    # f = 1/(1+x): (1+x) f' + f = 0; expand about x = 1: f = 1/(2+t)
    vars = ("x",)
    x = MultiPoly.var(vars, "x")
    eq = LinearOperatorEq.from_polys("x", DIFF, [MultiPoly.const(vars, 1), x + 1])
    coeffs = [RatFun.from_const((), Fraction((-1) ** i, 2 ** (i + 1))) for i in range(10)]
    pre = SeriesPrefix("x", DIFF, Fraction(1), tuple(coeffs))
    ok, _ = check_annihilates(eq, pre)
    assert ok


def test_check_annihilates_table_kind():
    # (1+n)^2 a(n) - (1-k+n)^2 a(n+1) = 0 for a(n) = C(n,k)^2 at k = 3
    vars = ("k", "n")
    n = MultiPoly.var(vars, "n")
    k = MultiPoly.var(vars, "k")
    one = MultiPoly.const(vars, 1)
    eq = LinearOperatorEq.from_polys(
        "n", SHIFT, [(one + n) ** 2, -((one - k + n) ** 2)])
    eq3 = eq.map_coeffs(lambda c: c.subs({"k": Fraction(3)}))
    vals = []
    for i in range(10):
        m = 3 + i
        c = _binom(m, 3)
        vals.append(RatFun.from_const((), Fraction(c * c)))
    pre = SeriesPrefix("n", SHIFT, Fraction(3), tuple(vals))
    ok, _ = check_annihilates(eq3, pre)
    assert ok


def test_series_of_ratfun_geometric():
    vars = ("x",)
    rf = RatFun(MultiPoly.const(vars, 1), MultiPoly.var(vars, "x") + 1)
    s = series_of_ratfun(rf, "x", Fraction(0), 6, ())
    assert [c.constant_value() for c in s] == [Fraction((-1) ** i) for i in range(6)]
    s1 = series_of_ratfun(rf, "x", Fraction(1), 5, ())
    assert [c.constant_value() for c in s1] == [
        Fraction((-1) ** i, 2 ** (i + 1)) for i in range(5)]


def _fact(i):
    out = 1
    for j in range(2, i + 1):
        out *= j
    return out


def _binom(a, b):
    if b < 0 or b > a:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out
