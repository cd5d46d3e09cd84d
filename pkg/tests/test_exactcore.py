"""Exact core: resultants, Puiseux arithmetic, Newton-polygon branches."""

from fractions import Fraction

import sympy

from swcurves import (
    DegenerateInputError, PuiseuxSeries, discriminant, puiseux_branches,
    resultant, series_sqrt, sylvester_matrix,
)

x, y, a, b, c = sympy.symbols("x y a b c")


def test_resultant_against_sympy():
    # independent oracle: sympy's subresultant PRS vs our Sylvester determinant
    f = x**3 + a * x + b
    g = 2 * x**2 - c * x + 1
    assert sympy.expand(resultant(f, g, x) - sympy.resultant(f, g, x)) == 0


def test_resultant_vanishes_on_common_root():
    f = (x - 2) * (x + 5)
    g = (x - 2) * (x**2 + 1)
    assert resultant(f, g, x) == 0


def test_sylvester_matrix_shape():
    M = sylvester_matrix(x**3 + 1, x**2 - 4, x)
    assert M.shape == (5, 5)


def test_discriminant_of_depressed_cubic():
    # disc(x^3 + b x - c) = -4 b^3 - 27 c^2
    d = discriminant(x**3 + b * x - c, x)
    assert sympy.expand(d - (-4 * b**3 - 27 * c**2)) == 0


def test_puiseux_inverse_is_one():
    s = PuiseuxSeries.from_poly(1 + x + 3 * x**2, "x", 8)
    prod = s * s.inverse()
    one = PuiseuxSeries.constant("x", 1, 8)
    assert (prod - one).is_zero()


def test_series_sqrt_squares_back():
    s = PuiseuxSeries.from_poly(1 + 2 * x + x**3, "x", 7)
    r = series_sqrt(s)
    assert (r * r - s).is_zero()


def test_series_sqrt_half_integer_valuation():
    s = PuiseuxSeries.monomial("x", 1, 5) * PuiseuxSeries.from_poly(1 + x, "x", 5)
    r = series_sqrt(s)
    assert r.valuation() == Fraction(1, 2)
    assert (r * r - s).is_zero()


def test_branches_of_square_root_singularity():
    # t^2 = x has two branches +-x^{1/2}
    xs = PuiseuxSeries.from_poly(x, "x", 4)
    branches = puiseux_branches([-xs, 0, 1], 3, var="x")
    assert len(branches) == 2
    vals = sorted(br.leading_coeff() for br in branches)
    assert vals == [-1, 1]
    assert all(br.valuation() == Fraction(1, 2) for br in branches)
    assert all(br.ram == 2 for br in branches)


def test_branches_ramified_numeric():
    # F(t, x) = t^3 - 3 x t + x: three branches ramified of order 3
    coeffs = [PuiseuxSeries.from_poly(1.0 * x, "x", 6),
              PuiseuxSeries.from_poly(-3.0 * x, "x", 6),
              PuiseuxSeries.zero("x", 6),
              PuiseuxSeries.constant("x", 1.0, 6)]
    branches = puiseux_branches(coeffs, 4, var="x")
    assert len(branches) == 3
    assert all(br.ram == 3 for br in branches)
    x0 = 1e-4
    for br in branches:
        t0 = complex(br.eval_at(x0))
        res = t0**3 - 3 * x0 * t0 + x0
        assert abs(res) < 1e-12


def test_branches_exact_with_repeated_edge_root():
    # F(t, x) = (t - x)^2 (t + 2x) = t^3 - 3 x^2 t + 2 x^3; the Newton
    # polygon edge has a double root, forcing a refinement step
    coeffs = [PuiseuxSeries.from_poly(2 * x**3, "x", 8),
              PuiseuxSeries.from_poly(-3 * x**2, "x", 8),
              PuiseuxSeries.zero("x", 8),
              PuiseuxSeries.constant("x", 1, 8)]
    branches = puiseux_branches(coeffs, 5, var="x")
    assert len(branches) == 3
    lead = sorted(br.leading_coeff() for br in branches)
    assert lead == [-2, 1, 1]
    assert all(br.valuation() == 1 for br in branches)


def test_degenerate_leading_coefficient_raises():
    z = PuiseuxSeries.zero("x", 4)
    try:
        puiseux_branches([PuiseuxSeries.constant("x", 1, 4), z], 3, var="x")
    except DegenerateInputError:
        return
    raise AssertionError("expected DegenerateInputError")
