"""Exact symbolic substrate: rationals, sparse polynomials, truncated Puiseux series.

Scalars are arbitrary-precision rationals (`sympy.Rational`); multivariate
polynomials are sympy expressions handled through `sympy.Poly` with an explicit
variable order.  On top of those this module provides a truncated Puiseux
series type (fractional exponents, exact or complex-float coefficients) and a
Newton-polygon branch solver for plane curve germs.

Sign conventions, fixed here once and used everywhere:

* ``resultant(f, g, var)`` is the determinant of the Sylvester matrix with the
  rows of ``f`` first (deg_g rows), then the rows of ``g``.
* ``discriminant(f, var) = (-1)^(d(d-1)/2) * resultant(f, f', var) / lc(f)``
  where ``d = deg(f)`` -- the classical normalization, so the discriminant of
  ``x^3 + b x - c`` is ``-4 b^3 - 27 c^2``.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import comb, gcd

import sympy

__all__ = [
    "DegenerateInputError",
    "BranchError",
    "NeedsHigherOrderError",
    "ExactScalar",
    "resultant",
    "sylvester_matrix",
    "discriminant",
    "PuiseuxSeries",
    "series_sqrt",
    "puiseux_branches",
]


class DegenerateInputError(ValueError):
    """An input fails a structural precondition (missing variable, constant, ...)."""


class BranchError(ValueError):
    """A series operation needs a branch choice the leading term does not allow."""


class NeedsHigherOrderError(RuntimeError):
    """Truncation order is too short to decide the question; retry with more terms."""


#: Canonical exact scalar type (reduced fraction, positive denominator).
ExactScalar = sympy.Rational

# Relative chop threshold for floating coefficients.
_EPS = 1e-12


# ---------------------------------------------------------------------------
# Resultants and discriminants
# ---------------------------------------------------------------------------

def sylvester_matrix(f, g, var) -> sympy.Matrix:
    """Sylvester matrix of f and g w.r.t. var (f-rows first)."""
    var = sympy.Symbol(var) if isinstance(var, str) else var
    pf = sympy.Poly(f, var)
    pg = sympy.Poly(g, var)
    m, n = pf.degree(), pg.degree()
    if m <= 0 and n <= 0:
        raise DegenerateInputError(f"neither input involves {var}")
    size = m + n
    rows = []
    cf = pf.all_coeffs()
    cg = pg.all_coeffs()
    for i in range(n):
        rows.append([sympy.S.Zero] * i + cf + [sympy.S.Zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([sympy.S.Zero] * i + cg + [sympy.S.Zero] * (size - n - 1 - i))
    return sympy.Matrix(rows)


def resultant(f, g, var):
    """Sylvester resultant of f and g, eliminating var."""
    var = sympy.Symbol(var) if isinstance(var, str) else var
    fe, ge = sympy.sympify(f), sympy.sympify(g)
    if var not in fe.free_symbols and var not in ge.free_symbols:
        raise DegenerateInputError(f"{var} appears in neither input")
    return sympy.expand(sympy.resultant(fe, ge, var))


def discriminant(f, var):
    """Discriminant of f in var, normalized as in the module docstring."""
    var = sympy.Symbol(var) if isinstance(var, str) else var
    fe = sympy.sympify(f)
    pf = sympy.Poly(fe, var)
    if pf.degree() < 2:
        raise DegenerateInputError(f"degree in {var} must be >= 2")
    d = pf.degree()
    res = sympy.resultant(fe, sympy.diff(fe, var), var)
    sign = (-1) ** (d * (d - 1) // 2)
    return sympy.expand(sympy.cancel(sign * res / pf.LC()))


# ---------------------------------------------------------------------------
# Coefficient helpers: exact (sympy.Expr) or numeric (complex)
# ---------------------------------------------------------------------------

def _lift(c):
    """Normalize a raw coefficient to sympy.Expr (exact) or complex (numeric)."""
    if isinstance(c, sympy.Expr):
        # inexact sympy numbers drop to complex; everything else stays exact
        if not c.free_symbols and c.has(sympy.Float):
            return complex(c)
        return c
    if isinstance(c, (int, Fraction)):
        return sympy.Rational(c)
    if isinstance(c, (float, complex)):
        return complex(c)
    raise TypeError(f"unsupported coefficient type {type(c)!r}")


def _is_numeric(c) -> bool:
    return isinstance(c, complex)


def _zero_like(c) -> bool:
    if isinstance(c, complex):
        return c == 0
    return sympy.expand(c) == 0


def _coerce_pair(a, b):
    """Bring two coefficients to a common arithmetic (numeric wins)."""
    if _is_numeric(a) and not _is_numeric(b):
        return a, complex(b)
    if _is_numeric(b) and not _is_numeric(a):
        return complex(a), b
    return a, b


def _sqrt_coeff(c):
    if _is_numeric(c):
        return cmath.sqrt(c)
    s = sympy.sqrt(c)
    return s


# ---------------------------------------------------------------------------
# Puiseux series
# ---------------------------------------------------------------------------

class PuiseuxSeries:
    """Truncated series  sum_n  c_n * var^(n/ram)  with all exponents < trunc.

    Coefficients are sympy expressions (exact mode) or complex numbers
    (numeric mode); the two modes mix by coercing to complex.  Instances are
    immutable; every operation returns a fresh series.
    """

    __slots__ = ("var", "ram", "terms", "trunc")

    def __init__(self, var, terms, trunc, ram=1, _normalize=True):
        self.var = sympy.Symbol(var) if isinstance(var, str) else var
        self.ram = int(ram)
        self.trunc = Fraction(trunc)
        if self.ram < 1:
            raise ValueError("ramification must be a positive integer")
        tt = {}
        if _normalize:
            scale = 0.0
            numeric = any(_is_numeric(_lift(c)) for c in terms.values())
            lifted = {int(n): (complex(_lift(c)) if numeric and not _is_numeric(_lift(c))
                               else _lift(c))
                      for n, c in terms.items()}
            if numeric:
                scale = max((abs(c) for c in lifted.values()), default=0.0)
            for n, c in lifted.items():
                if Fraction(n, self.ram) >= self.trunc:
                    continue
                if _is_numeric(c):
                    if scale and abs(c) <= _EPS * max(1.0, scale):
                        continue
                    if c == 0:
                        continue
                else:
                    c = sympy.expand(c)
                    if c == 0:
                        continue
                tt[n] = c
            self.terms = tt
            self._reduce_ram()
        else:
            self.terms = dict(terms)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, var, trunc, ram=1):
        return cls(var, {}, trunc, ram)

    @classmethod
    def constant(cls, var, c, trunc):
        return cls(var, {0: c}, trunc, 1)

    @classmethod
    def monomial(cls, var, exponent, trunc, coeff=1):
        e = Fraction(exponent)
        return cls(var, {e.numerator: coeff}, trunc, e.denominator)

    @classmethod
    def from_poly(cls, expr, var, trunc):
        """Laurent polynomial in var -> series (exact coefficients)."""
        var = sympy.Symbol(var) if isinstance(var, str) else var
        expr = sympy.expand(sympy.sympify(expr))
        terms = {}
        for mono, coeff in expr.as_poly(var).as_dict().items() if expr.has(var) else [((0,), expr)]:
            terms[mono[0]] = terms.get(mono[0], 0) + coeff
        return cls(var, terms, trunc, 1)

    def _reduce_ram(self):
        if self.ram == 1:
            return
        g = self.ram
        for n in self.terms:
            g = gcd(g, n)
            if g == 1:
                return
        if g > 1:
            self.terms = {n // g: c for n, c in self.terms.items()}
            self.ram //= g

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_numeric(self) -> bool:
        return any(_is_numeric(c) for c in self.terms.values())

    def valuation(self):
        """Lowest exponent as a Fraction, or None for the zero series."""
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.ram)

    def leading_coeff(self):
        if not self.terms:
            raise ValueError("zero series has no leading coefficient")
        return self.terms[min(self.terms)]

    def coeff(self, exponent):
        e = Fraction(exponent)
        if e >= self.trunc:
            raise NeedsHigherOrderError(
                f"coefficient of exponent {e} requested beyond truncation {self.trunc}")
        n = e * self.ram
        if n.denominator != 1:
            return 0
        return self.terms.get(int(n), 0)

    def exponents(self):
        return sorted(Fraction(n, self.ram) for n in self.terms)

    # -- representation changes ----------------------------------------------

    def with_ram(self, ram):
        ram = int(ram)
        if ram % self.ram:
            raise ValueError("new ramification must be a multiple of the old one")
        k = ram // self.ram
        return PuiseuxSeries(self.var, {n * k: c for n, c in self.terms.items()},
                             self.trunc, ram, _normalize=False)

    def truncate(self, trunc):
        trunc = min(Fraction(trunc), self.trunc)
        return PuiseuxSeries(self.var, {n: c for n, c in self.terms.items()
                                        if Fraction(n, self.ram) < trunc},
                             trunc, self.ram)

    def map_coeffs(self, fn):
        return PuiseuxSeries(self.var, {n: fn(c) for n, c in self.terms.items()},
                             self.trunc, self.ram)

    def to_numeric(self, subs=None):
        def conv(c):
            if _is_numeric(c):
                return c
            return complex(c.subs(subs) if subs else c)
        return self.map_coeffs(conv)

    # -- arithmetic ----------------------------------------------------------

    def _common(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries.constant(self.var, other, self.trunc)
        r = self.ram * other.ram // gcd(self.ram, other.ram)
        return self.with_ram(r), other.with_ram(r)

    def __add__(self, other):
        a, b = self._common(other)
        trunc = min(a.trunc, b.trunc)
        terms = dict(a.terms)
        for n, c in b.terms.items():
            if n in terms:
                x, y = _coerce_pair(terms[n], c)
                terms[n] = x + y
            else:
                terms[n] = c
        return PuiseuxSeries(a.var, terms, trunc, a.ram)

    __radd__ = __add__

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PuiseuxSeries)
                       else PuiseuxSeries.constant(self.var, other, self.trunc).map_coeffs(lambda c: -c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = _lift(other)
            return self.map_coeffs(lambda c: _mul2(c, other))
        a, b = self._common(other)
        va, vb = a.valuation(), b.valuation()
        if va is None or vb is None:
            # zero result; the zero factor's truncation stands in for its valuation
            bound = min(a.trunc + (vb if vb is not None else b.trunc),
                        b.trunc + (va if va is not None else a.trunc))
            return PuiseuxSeries.zero(a.var, bound, a.ram)
        trunc = min(a.trunc + vb, b.trunc + va)
        lim = trunc * a.ram
        terms = {}
        for n1, c1 in a.terms.items():
            for n2, c2 in b.terms.items():
                n = n1 + n2
                if n >= lim:
                    continue
                x, y = _coerce_pair(c1, c2)
                prod = x * y
                if n in terms:
                    p, q = _coerce_pair(terms[n], prod)
                    terms[n] = p + q
                else:
                    terms[n] = prod
        return PuiseuxSeries(a.var, terms, trunc, a.ram)

    __rmul__ = __mul__

    def shift(self, exponent):
        """Multiply by var**exponent."""
        e = Fraction(exponent)
        r = self.ram * e.denominator // gcd(self.ram, e.denominator)
        s = self.with_ram(r)
        d = int(e * r)
        return PuiseuxSeries(s.var, {n + d: c for n, c in s.terms.items()},
                             s.trunc + e, r, _normalize=False)

    def pow_int(self, k: int):
        if k < 0:
            return self.inverse().pow_int(-k)
        out = PuiseuxSeries.constant(self.var, 1, self.trunc + max(
            (self.valuation() or 0) * k, 0))
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    __pow__ = pow_int

    def inverse(self):
        """Multiplicative inverse; requires a nonzero leading term."""
        v = self.valuation()
        if v is None:
            raise BranchError("cannot invert the zero series")
        c0 = self.leading_coeff()
        span = self.trunc - v          # relative precision available
        # s = c0 x^v (1 + r): invert the unit part by geometric series
        unit = self.shift(-v) * _inv_coeff(c0)
        one = PuiseuxSeries.constant(self.var, 1, span)
        r = unit - one
        acc = one
        term = one
        if not r.is_zero():
            step = r.valuation()
            k = 1
            while step * k < span:
                term = term * (-1) * r
                acc = acc + term
                k += 1
        return acc.map_coeffs(lambda c: _mul2(c, _inv_coeff(c0))).shift(-v)

    def eval_at(self, value):
        """Evaluate the series (finitely many terms) at a numeric point."""
        out = 0
        for n, c in self.terms.items():
            cv = c if _is_numeric(c) else complex(c)
            out += cv * value ** (Fraction(n, self.ram))
        return out

    # -- printing ------------------------------------------------------------

    def as_expr(self):
        x = self.var
        out = sympy.S.Zero
        for n, c in sorted(self.terms.items()):
            cc = c if isinstance(c, sympy.Expr) else sympy.nsimplify(c, rational=False)
            out += cc * x ** sympy.Rational(n, self.ram)
        return out

    def __repr__(self):
        return f"PuiseuxSeries({self.as_expr()} + O({self.var}**{self.trunc}))"

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        a, b = self._common(other)
        return (a - b).is_zero()

    def __hash__(self):
        return hash((self.ram, tuple(sorted(self.terms))))


def _mul2(a, b):
    x, y = _coerce_pair(_lift(a), _lift(b))
    return x * y


def _inv_coeff(c):
    if _is_numeric(c):
        return 1.0 / c
    return sympy.S.One / c


def series_sqrt(s: PuiseuxSeries) -> PuiseuxSeries:
    """Principal square root: leading coefficient mapped through the principal
    branch (sympy.sqrt / cmath.sqrt), leading exponent halved."""
    v = s.valuation()
    if v is None:
        raise BranchError("square root of the zero series")
    c0 = s.leading_coeff()
    root0 = _sqrt_coeff(c0)
    span = s.trunc - v
    unit = s.shift(-v) * _inv_coeff(c0)
    one = PuiseuxSeries.constant(s.var, 1, span)
    r = unit - one
    acc = one
    if not r.is_zero():
        term = one
        step = r.valuation()
        k = 1
        binom = Fraction(1)
        while step * k < span:
            binom *= Fraction(1, 2) - (k - 1)
            binom /= k
            term = term * r
            acc = acc + term * sympy.Rational(binom)
            k += 1
    return acc.map_coeffs(lambda c: _mul2(c, root0)).shift(v / 2)


# ---------------------------------------------------------------------------
# Newton-polygon branch solving
# ---------------------------------------------------------------------------

def _coeff_series(c, var, trunc):
    if isinstance(c, PuiseuxSeries):
        return c
    return PuiseuxSeries.constant(var, c, trunc)


def _lower_hull(points):
    """Lower convex hull of (j, v) points, left to right in j."""
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (p[1] - y1) <= (p[0] - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _edge_roots(poly_coeffs):
    """Roots-with-multiplicity of a univariate polynomial given low->high."""
    numeric = any(_is_numeric(_lift(c)) for c in poly_coeffs)
    if numeric:
        import numpy as np
        arr = [complex(_lift(c)) for c in poly_coeffs]
        while arr and abs(arr[-1]) == 0:
            arr.pop()
        roots = np.roots(arr[::-1])
        # A root of multiplicity m is computed with error ~ eps^(1/m), so the
        # cluster radius must be generous; genuinely distinct roots closer
        # than this produce a needs-higher-order failure upstream, never a
        # silent misassignment.
        scale = max(1.0, max(abs(r) for r in roots)) if len(roots) else 1.0
        tol = 1e-3 * scale
        out = []
        used = [False] * len(roots)
        for i, r in enumerate(roots):
            if used[i]:
                continue
            group = [r]
            used[i] = True
            for j in range(i + 1, len(roots)):
                if not used[j] and abs(roots[j] - r) < tol:
                    group.append(roots[j])
                    used[j] = True
            center = complex(sum(group) / len(group))
            m = len(group)
            if m > 1:
                # the cluster mean is a simple root of the (m-1)-th derivative;
                # polish it there to restore full accuracy
                d = np.array(arr[::-1])
                for _ in range(m - 1):
                    d = np.polyder(d)
                for _ in range(40):
                    val = np.polyval(d, center)
                    dv = np.polyval(np.polyder(d), center)
                    if dv == 0:
                        break
                    step = val / dv
                    center -= step
                    if abs(step) < 1e-14 * scale:
                        break
            out.append((center, m))
        return out
    z = sympy.Symbol("_edge_root")
    poly = sum(sympy.sympify(c) * z ** i for i, c in enumerate(poly_coeffs))
    rd = sympy.roots(sympy.Poly(poly, z))
    total = sum(rd.values())
    if total != sympy.Poly(poly, z).degree():
        raise BranchError("edge polynomial has roots not expressible in radicals")
    return [(r, m) for r, m in rd.items()]


def _substitute(coeffs, gamma, c):
    """F(t) -> G(u) where t = x^gamma * (c + u); returns new coefficient list."""
    n = len(coeffs) - 1
    var = coeffs[0].var if isinstance(coeffs[0], PuiseuxSeries) else None
    new = [None] * (n + 1)
    for i in range(n + 1):
        acc = None
        for j in range(i, n + 1):
            term = coeffs[j].shift(gamma * j) * (comb(j, i) * _pow_coeff(c, j - i))
            acc = term if acc is None else acc + term
        new[i] = acc
    return new


def _pow_coeff(c, k):
    c = _lift(c)
    out = c ** k if k else (1 if _is_numeric(c) else sympy.S.One)
    return out


def _eval_poly(coeffs, s: PuiseuxSeries):
    """Evaluate sum coeffs[j] * s^j by Horner in series arithmetic."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * s + c
    return acc


def puiseux_branches(coeffs, order, var="xi", _depth=0):
    """Branches t(x) with F(t, x) = sum_j coeffs[j] t^j = 0 up to exponent `order`.

    `coeffs` is a list low->high in t of PuiseuxSeries (or scalars) in `var`.
    Returns a list of PuiseuxSeries, one per branch counted with multiplicity;
    each carries its ramification in `.ram`.
    """
    order = Fraction(order)
    coeffs = [_coeff_series(c, var, order + 4) for c in coeffs]
    var = coeffs[0].var
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1].is_zero():
        raise DegenerateInputError("leading t-coefficient vanishes identically")
    if _depth > 40:
        raise NeedsHigherOrderError("branch recursion exceeded depth budget")

    branches = []
    pts = [(j, c.valuation()) for j, c in enumerate(coeffs) if not c.is_zero()]
    jmin = min(j for j, _ in pts)
    # t = 0 is a root of multiplicity jmin
    for _ in range(jmin):
        branches.append(PuiseuxSeries.zero(var, order, 1))
    hull = _lower_hull(pts)
    for (j1, v1), (j2, v2) in zip(hull, hull[1:]):
        gamma = -Fraction(v2 - v1, j2 - j1)
        if gamma >= order:
            # branch valuation beyond requested order: indistinguishable from 0
            for _ in range(j2 - j1):
                branches.append(PuiseuxSeries.zero(var, order, 1))
            continue
        # edge polynomial in the leading coefficient c
        edge = []
        for j in range(j1, j2 + 1):
            # exponent of the edge line at slot j
            e = v1 + (j - j1) * (-gamma)
            cj = coeffs[j]
            if cj.is_zero() or cj.valuation() > e:
                edge.append(0)
            elif cj.valuation() == e:
                edge.append(cj.leading_coeff())
            else:
                edge.append(0)
        for c, mult in _edge_roots(edge):
            if _zero_like(_lift(c)):
                continue
            head = PuiseuxSeries.monomial(var, gamma, order, coeff=c)
            sub = _substitute(coeffs, gamma, c)
            if mult == 1:
                tail = _newton_refine(sub, order - gamma, var)
                branches.append(head + tail.shift(gamma))
            else:
                # recurse: branches of G(u) with val(u) > 0
                for b in puiseux_branches(sub, order - gamma, var, _depth + 1):
                    v = b.valuation()
                    if v is not None and v <= 0:
                        continue  # belongs to another edge of the original polygon
                    branches.append(head + b.shift(gamma))
    if len(branches) != n:
        raise NeedsHigherOrderError(
            f"found {len(branches)} branches for degree {n}; raise the order")
    return branches


def _newton_refine(coeffs, span, var):
    """Newton iteration for the unique branch of G(u)=0 with val(u) > 0,
    valid when u=0 is a simple approximate root."""
    zero = PuiseuxSeries.zero(var, span, 1)
    deriv = [coeffs[j] * j for j in range(1, len(coeffs))]
    u = zero
    # precision doubles each step; G(0) valuation gives the starting precision
    g0 = _eval_poly(coeffs, u)
    if g0.is_zero():
        return u.truncate(span)
    prec = g0.valuation() - _eval_poly(deriv, u).valuation()
    guard = 0
    while prec < span and guard < 64:
        g = _eval_poly(coeffs, u)
        if g.is_zero():
            break
        gp = _eval_poly(deriv, u)
        u = (u - g * gp.inverse()).truncate(span)
        new_g = _eval_poly(coeffs, u)
        if new_g.is_zero():
            break
        prec = new_g.valuation() - gp.valuation()
        guard += 1
    return u.truncate(span)
