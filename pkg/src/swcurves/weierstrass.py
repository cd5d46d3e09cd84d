"""The base elliptic curve y^2 = x^3 + b x - c and its function field at infinity.

The local coordinate at infinity is xi = x^(-1/2), with the branch fixed by
x = xi^(-2) exactly (leading coefficient +1).  Then y = xi^(-3) (1 + b xi^4
- c xi^6)^(1/2), and the function field carries the pole-order basis
x_k = xi^(-k) + O(xi^(-1)), k >= 2, of functions regular away from infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .exactcore import BranchError, PuiseuxSeries, series_sqrt

__all__ = [
    "XI", "X", "Y", "B", "C",
    "EllipticCurveModel",
    "FunctionFieldElement",
    "expand_y", "expand_y_inverse", "x_expansion",
    "reduce_element", "xk_basis",
]

XI = sympy.Symbol("xi")
X, Y = sympy.symbols("x y")
B, C = sympy.symbols("b c")


@dataclass(frozen=True)
class EllipticCurveModel:
    """Weierstrass data for E: y^2 = x^3 + b x - c.

    b, c may be exact sympy scalars/symbols or complex numbers.  Smooth mode
    requires disc != 0; nodal curves must be requested explicitly and are
    only accepted by the degeneration operations.
    """

    b: object = B
    c: object = C
    allow_nodal: bool = False

    def __post_init__(self):
        d = self.disc
        if not self.allow_nodal:
            if d == 0:
                raise ValueError("nodal curve (disc = 0); pass allow_nodal=True")

    @property
    def disc(self):
        b, c = sympy.sympify(self.b), sympy.sympify(self.c)
        d = sympy.expand(-4 * b**3 - 27 * c**2)
        return d

    @property
    def is_symbolic(self) -> bool:
        return bool(sympy.sympify(self.b).free_symbols | sympy.sympify(self.c).free_symbols)

    def rhs(self, x=X):
        return x**3 + self.b * x - self.c

    def roots(self):
        """The three roots e_i of x^3 + b x - c (numeric curves only)."""
        import numpy as np
        return np.roots([1.0, 0.0, complex(self.b), -complex(self.c)])


GENERIC_CURVE = EllipticCurveModel()


def x_expansion(order) -> PuiseuxSeries:
    """x = xi^(-2), exactly (this fixes the branch of xi = x^(-1/2))."""
    return PuiseuxSeries(XI, {-2: 1}, Fraction(order) + 1)


def expand_y(curve: EllipticCurveModel = GENERIC_CURVE, order: int = 9) -> PuiseuxSeries:
    """xi-expansion of y = xi^(-3) (1 + b xi^4 - c xi^6)^(1/2) through `order`."""
    order = Fraction(order)
    if order < -3:
        raise ValueError("order must be >= -3")
    inner = PuiseuxSeries(XI, {0: 1, 4: curve.b, 6: -curve.c}, order + 4)
    return series_sqrt(inner).shift(-3).truncate(order + 1)


def expand_y_inverse(curve: EllipticCurveModel = GENERIC_CURVE, order: int = 15) -> PuiseuxSeries:
    """xi-expansion of 1/y through `order`."""
    order = Fraction(order)
    inner = PuiseuxSeries(XI, {0: 1, 4: curve.b, 6: -curve.c}, order + 4)
    return series_sqrt(inner).inverse().shift(3).truncate(order + 1)


class FunctionFieldElement:
    """A(x) + B(x) y reduced modulo y^2 = x^3 + b x - c (y-degree <= 1)."""

    __slots__ = ("curve", "A", "B")

    def __init__(self, A, B=0, curve: EllipticCurveModel = GENERIC_CURVE, reduce=False):
        self.curve = curve
        if reduce:
            A, B = _reduce_xy(sympy.sympify(A) + sympy.sympify(B) * Y, curve)
        self.A = sympy.expand(sympy.sympify(A))
        self.B = sympy.expand(sympy.sympify(B))

    @property
    def expr(self):
        return self.A + self.B * Y

    def pole_order_at_infinity(self) -> int:
        """Pole order at infinity via x ~ xi^-2, y ~ xi^-3."""
        order = 0
        if self.A != 0:
            order = max(order, 2 * sympy.degree(self.A, X))
        if self.B != 0:
            order = max(order, 2 * sympy.degree(self.B, X) + 3)
        return int(order)

    def expansion(self, order) -> PuiseuxSeries:
        """xi-expansion through exponent `order`."""
        order = Fraction(order)
        trunc = order + 1
        degA = sympy.degree(self.A, X) if self.A != 0 else 0
        degB = sympy.degree(self.B, X) if self.B != 0 else 0
        pad = 2 * max(degA, degB + 2) + 6  # x = xi^-2 is exact; give it slack
        xs = PuiseuxSeries(XI, {-2: 1}, trunc + pad)
        out = _poly_at_series(self.A, xs, trunc + pad)
        if self.B != 0:
            ys = expand_y(self.curve, order + pad)
            out = out + _poly_at_series(self.B, xs, trunc + pad) * ys
        return out.truncate(trunc)

    # ring operations (always reduced)
    def __add__(self, other):
        other = self._coerce(other)
        return FunctionFieldElement(self.A + other.A, self.B + other.B, self.curve)

    def __sub__(self, other):
        other = self._coerce(other)
        return FunctionFieldElement(self.A - other.A, self.B - other.B, self.curve)

    def __mul__(self, other):
        other = self._coerce(other)
        rhs = self.curve.rhs()
        A = self.A * other.A + self.B * other.B * rhs
        Bc = self.A * other.B + self.B * other.A
        return FunctionFieldElement(A, Bc, self.curve)

    __rmul__ = __mul__

    def __neg__(self):
        return FunctionFieldElement(-self.A, -self.B, self.curve)

    def _coerce(self, other):
        if isinstance(other, FunctionFieldElement):
            return other
        return FunctionFieldElement(other, 0, self.curve)

    def __eq__(self, other):
        other = self._coerce(other)
        return sympy.expand(self.A - other.A) == 0 and sympy.expand(self.B - other.B) == 0

    def __hash__(self):
        return hash((sympy.expand(self.A), sympy.expand(self.B)))

    def __repr__(self):
        return f"FunctionFieldElement({self.expr})"


def _poly_at_series(poly, xs: PuiseuxSeries, trunc) -> PuiseuxSeries:
    """Evaluate a polynomial in x at the series xs (Horner)."""
    coeffs = sympy.Poly(poly, X).all_coeffs() if poly != 0 else [sympy.S.Zero]
    acc = PuiseuxSeries.constant(XI, coeffs[0], trunc)
    for c in coeffs[1:]:
        acc = acc * xs + PuiseuxSeries.constant(XI, c, trunc)
    return acc.truncate(trunc)


def _reduce_xy(expr, curve):
    """Split an arbitrary polynomial in x, y into (A, B) with y-degree <= 1."""
    expr = sympy.expand(expr)
    rhs = curve.rhs()
    A = sympy.S.Zero
    Bc = sympy.S.Zero
    for (dy,), coeff in sympy.Poly(expr, Y).all_terms():
        q, r = divmod(dy, 2)
        contrib = coeff * rhs**q
        if r:
            Bc += contrib
        else:
            A += contrib
    return sympy.expand(A), sympy.expand(Bc)


def reduce_element(expr, curve: EllipticCurveModel = GENERIC_CURVE) -> FunctionFieldElement:
    """Canonical A + B y form of any polynomial expression in x, y."""
    A, Bc = _reduce_xy(sympy.sympify(expr), curve)
    return FunctionFieldElement(A, Bc, curve)


def xk_basis(curve: EllipticCurveModel = GENERIC_CURVE, k: int = 2) -> FunctionFieldElement:
    """The unique x_k = xi^(-k) + O(xi^(-1)), regular away from infinity.

    Even k gives x^(k/2) exactly; odd k is built from x^((k-3)/2) y by
    subtracting already-built x_j to kill the exponents -(k-1) .. -2.  No
    constants are subtracted, matching the convention that x_k has no
    constant term.
    """
    k = int(k)
    if k <= 1:
        raise ValueError("k must be >= 2")
    if k % 2 == 0:
        return FunctionFieldElement(X ** (k // 2), 0, curve)
    elem = FunctionFieldElement(0, X ** ((k - 3) // 2), curve)
    # Triangular elimination on pole orders k-1 .. 2.  Each x_j correction is
    # xi^(-j) + O(xi^(-1)), so the deeper coefficients can be read off once.
    tail = elem.expansion(-2)
    for j in range(k - 1, 1, -1):
        coeff = tail.coeff(-j)
        if coeff == 0:
            continue
        elem = elem - coeff * xk_basis(curve, j)
    return elem
