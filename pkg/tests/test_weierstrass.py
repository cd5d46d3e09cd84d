"""Function field of y^2 = x^3 + b x - c: expansions and the x_k basis."""

import sympy

from swcurves import (
    EllipticCurveModel, GENERIC_CURVE, expand_y, expand_y_inverse,
    reduce_element, x_expansion, xk_basis,
)

B, C = sympy.symbols("b c")


def test_x_expansion_is_exact_double_pole():
    s = x_expansion(6)
    assert s.valuation() == -2
    assert s.coeff(-2) == 1
    assert list(s.exponents()) == [-2]


def test_y_squared_matches_curve():
    # the defining relation holds order by order in xi
    order = 9
    ys = expand_y(GENERIC_CURVE, order=order)
    xs = x_expansion(order + 6)
    rhs = xs.pow_int(3) + xs * B - C
    assert (ys * ys - rhs).truncate(order).is_zero()


def test_y_inverse_product_is_one():
    order = 9
    ys = expand_y(GENERIC_CURVE, order=order)
    inv = expand_y_inverse(GENERIC_CURVE, order=order + 6)
    prod = (ys * inv).truncate(order)
    assert prod.coeff(0) == 1
    assert all(e == 0 for e in prod.exponents())


def test_y_expansion_against_sympy_series():
    # independent oracle: y = xi^-3 sqrt(1 + b xi^4 - c xi^6) via sympy
    xi = sympy.symbols("xi")
    ref = sympy.sqrt(1 + B * xi**4 - C * xi**6).series(xi, 0, 13).removeO()
    ys = expand_y(GENERIC_CURVE, order=9)
    for k in range(13):
        assert sympy.expand(ys.coeff(k - 3) - ref.coeff(xi, k)) == 0


def test_xk_pole_orders():
    for k in range(2, 13):
        e = xk_basis(GENERIC_CURVE, k)
        assert e.pole_order_at_infinity() == k
        s = e.expansion(order=0)
        assert s.valuation() == -k
        assert s.coeff(-k) == 1


def test_xk_expansion_parity():
    # x contributes even exponents, y odd: the expansion of x_k only has
    # exponents congruent to k mod 2
    for k in range(2, 13):
        s = xk_basis(GENERIC_CURVE, k).expansion(order=0)
        for e in s.exponents():
            assert (e - k) % 2 == 0


def test_reduce_element_kills_y_squared():
    x, y = sympy.symbols("x y")
    e = reduce_element(y**2 + x * y, GENERIC_CURVE)
    assert sympy.expand(e.A - (x**3 + B * x - C)) == 0
    assert sympy.expand(e.B - x) == 0


def test_numeric_curve_roots_satisfy_rhs():
    curve = EllipticCurveModel(1.1 + 0.3j, 0.4 - 0.2j)
    for r in curve.roots():
        assert abs(r**3 + curve.b * r - curve.c) < 1e-9
