"""Adler-Kostant-Symes commutation and Duistermaat-Heckman linearity at
matrix desk scale.

Two independent computations live here.  The first is the AKS bracket on the
shifted tridiagonal orbit: for the splitting of sl(n) into upper-triangular
traceless (b) and strictly lower-triangular (a) matrices, with the trace form
as pairing and the superdiagonal shift eps, the bracket

    {f, g}(mu) = <mu, [pi_b grad f, pi_b grad g]>

vanishes identically on pairs of trace-power invariants.  Everything is done
in exact rational arithmetic, so the vanishing is a zero test, not a
tolerance test.

The second is the Kirillov-Kostant(-Souriau) symplectic form on coadjoint
orbits of su(n): its integral over the embedded 2-sphere attached to a root
(j, k) is computed by quadrature and is a linear function of the level a,
which `dh_linearity_fit` measures.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy


__all__ = [
    "SplitAlgebra",
    "OrbitPoint2Sphere",
    "split_algebra",
    "tridiagonal_point",
    "random_tridiagonal_point",
    "aks_bracket",
    "kks_sphere_integral",
    "dh_linearity_fit",
    "DegenerateFitError",
]


class DegenerateFitError(ValueError):
    """Sample levels do not determine a linear fit."""


# ---------------------------------------------------------------------------
# the AKS side: exact rational arithmetic on sl(n)


@dataclass(frozen=True)
class SplitAlgebra:
    """sl(n) = a + b with b = upper-triangular traceless, a = strictly
    lower-triangular, paired by the trace form and shifted by eps (the
    superdiagonal of ones, which annihilates [a, a] and [b, b])."""

    n: int
    eps: sympy.Matrix

    def pi_b(self, m: sympy.Matrix) -> sympy.Matrix:
        """Projection onto b along a: the upper part including the diagonal."""
        out = sympy.zeros(self.n, self.n)
        for i in range(self.n):
            for j in range(i, self.n):
                out[i, j] = m[i, j]
        return out

    def pi_a(self, m: sympy.Matrix) -> sympy.Matrix:
        return m - self.pi_b(m)

    def shift_annihilates(self) -> bool:
        """<eps, [a, a]> = <eps, [b, b]> = 0, checked on all basis pairs."""
        n = self.n
        a_basis = [_unit(n, i, j) for i in range(n) for j in range(i)]
        b_basis = [_unit(n, i, j) for i in range(n) for j in range(i + 1, n)]
        b_basis += [_unit(n, i, i) - _unit(n, i + 1, i + 1)
                    for i in range(n - 1)]
        for basis in (a_basis, b_basis):
            for x in basis:
                for y in basis:
                    comm = x * y - y * x
                    if sympy.trace(self.eps * comm) != 0:
                        return False
        return True


def _unit(n, i, j):
    m = sympy.zeros(n, n)
    m[i, j] = 1
    return m


def split_algebra(n: int) -> SplitAlgebra:
    if n < 2:
        raise ValueError("n must be >= 2")
    eps = sympy.zeros(n, n)
    for i in range(n - 1):
        eps[i, i + 1] = 1
    return SplitAlgebra(n, sympy.ImmutableMatrix(eps))


def tridiagonal_point(b_diag, a_sub) -> sympy.Matrix:
    """The shifted orbit element eps + diag(b) + subdiag(a), with Sum b = 0
    and every a_j nonzero, as an exact rational matrix."""
    n = len(b_diag)
    if len(a_sub) != n - 1:
        raise ValueError("need n-1 subdiagonal entries")
    b_diag = [sympy.Rational(v) for v in b_diag]
    a_sub = [sympy.Rational(v) for v in a_sub]
    if sum(b_diag) != 0:
        raise ValueError("diagonal must be traceless")
    if any(v == 0 for v in a_sub):
        raise ValueError("subdiagonal entries must be nonzero")
    m = sympy.Matrix(split_algebra(n).eps)
    for i, v in enumerate(b_diag):
        m[i, i] = v
    for i, v in enumerate(a_sub):
        m[i + 1, i] = v
    return m


def random_tridiagonal_point(n: int, rng) -> sympy.Matrix:
    """Random rational orbit element, entries p/q with small p, q."""

    def rat(nonzero=False):
        while True:
            v = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            if v or not nonzero:
                return v

    b = [rat() for _ in range(n - 1)]
    b.append(-sum(b))
    a = [rat(nonzero=True) for _ in range(n - 1)]
    return tridiagonal_point(b, a)


def _gradient(spec, point: sympy.Matrix) -> sympy.Matrix:
    """Traceless trace-form gradient of an invariant spec at the point.

    An integer k means the trace power tr(A^k); a tuple ("entry", i, j)
    means the matrix entry A[i, j] (a non-invariant negative control).
    """
    n = point.shape[0]
    if isinstance(spec, int):
        g = spec * point ** (spec - 1)
    elif isinstance(spec, tuple) and spec[0] == "entry":
        _, i, j = spec
        g = _unit(n, j, i)
    else:
        raise ValueError(f"unknown invariant spec {spec!r}")
    return g - (sympy.trace(g) / n) * sympy.eye(n)


def aks_bracket(n: int, invariants, point: sympy.Matrix, eps=None):
    """<point, [pi_b grad f1, pi_b grad f2]> in exact arithmetic.

    Exactly zero when both invariants are trace powers: the gradients
    commute with the point, and the point (shifted tridiagonal) pairs to
    zero with [a, a].
    """
    alg = split_algebra(n)
    if eps is not None and sympy.Matrix(eps) != sympy.Matrix(alg.eps):
        raise ValueError("only the superdiagonal shift is supported")
    if point.shape != (n, n):
        raise ValueError("point has the wrong size")
    f1, f2 = invariants
    v1 = alg.pi_b(_gradient(f1, point))
    v2 = alg.pi_b(_gradient(f2, point))
    return sympy.nsimplify(sympy.trace(point * (v1 * v2 - v2 * v1)))


# ---------------------------------------------------------------------------
# the DH side: KKS sphere integrals on su(n) coadjoint orbits


@dataclass
class OrbitPoint2Sphere:
    """Embedded 2-sphere in the coadjoint orbit of mu = i diag(a) in su(n),
    swept by the su(2) subgroup of the root (j, k).

    The sweep is u(theta, phi) mu u(theta, phi)^{-1} with
    u = exp(theta (cos phi X + sin phi Y)), X = E_jk - E_kj,
    Y = i(E_jk + E_kj); on the (j, k) block u = cos theta + A sin theta.
    """

    a: tuple
    root: tuple
    n: int = 0

    def __post_init__(self):
        if not self.n:
            self.n = len(self.a)
        j, k = self.root
        if not (0 <= j < k < self.n):
            raise ValueError("root must be a pair j < k")
        if abs(sum(self.a)) > 1e-12 * (1 + max(abs(v) for v in self.a)):
            raise ValueError("level must be traceless")

    @property
    def degenerate(self) -> bool:
        j, k = self.root
        return abs(self.a[j] - self.a[k]) < 1e-12 * (1 + max(map(abs, self.a)))

    def mu(self) -> np.ndarray:
        return 1j * np.diag(np.array(self.a, dtype=float))

    def _xi(self, phi):
        j, k = self.root
        x = np.zeros((self.n, self.n), dtype=complex)
        x[j, k] = math.cos(phi) + 1j * math.sin(phi)
        x[k, j] = -math.cos(phi) + 1j * math.sin(phi)
        return x

    def frame(self, theta, phi):
        """Point S on the sphere and generators xi_theta, xi_phi with
        tangents dS/dtheta = [xi_theta, S], dS/dphi = [xi_phi, S]."""
        j, k = self.root
        n = self.n
        A = self._xi(phi)
        u = np.eye(n, dtype=complex)
        u[j, j] = u[k, k] = math.cos(theta)
        u += math.sin(theta) * A
        uinv = np.eye(n, dtype=complex)
        uinv[j, j] = uinv[k, k] = math.cos(theta)
        uinv -= math.sin(theta) * A
        S = u @ self.mu() @ uinv
        dA = self._xi(phi + math.pi / 2)
        xi_phi = math.sin(theta) * dA @ uinv
        return S, A, xi_phi

    def spectrum_constant(self, n_check: int = 7, tol: float = 1e-10) -> bool:
        """The sweep stays in the orbit: constant spectrum along the surface."""
        ref = np.sort(np.linalg.eigvals(self.mu()).imag)
        for i in range(n_check):
            th = 0.5 * math.pi * (i + 0.5) / n_check
            ph = 2 * math.pi * ((i * 0.37) % 1.0)
            S, _, _ = self.frame(th, ph)
            ev = np.linalg.eigvals(S)
            # anti-Hermitian: spectrum is purely imaginary
            if np.max(np.abs(ev.real)) > tol * (1 + np.max(np.abs(ref))):
                return False
            if np.max(np.abs(np.sort(ev.imag) - ref)) > tol * (1 + np.max(np.abs(ref))):
                return False
        return True


def kks_sphere_integral(sphere: OrbitPoint2Sphere, n_theta: int = 48,
                        n_phi: int = 64, reparam=None) -> float:
    """Integral of the KKS form sigma(ad_xi mu, ad_eta mu) = <mu, [xi, eta]>
    over the embedded 2-sphere, by Gauss-Legendre x trapezoid quadrature.

    `reparam` optionally maps quadrature coordinates (s, t) in the same
    rectangle to (theta, phi); the Jacobian factor is applied, so any smooth
    orientation-preserving reparametrization returns the same value.
    """
    if sphere.degenerate:
        warnings.warn("degenerate level: the root 2-sphere collapses",
                      RuntimeWarning, stacklevel=2)
        return 0.0
    # polar angle on the sphere is 2 theta, so theta runs over [0, pi/2]
    nodes, weights = np.polynomial.legendre.leggauss(n_theta)
    thetas = math.pi * (nodes + 1.0) / 4.0
    wth = weights * math.pi / 4.0
    total = 0.0
    for th, w in zip(thetas, wth):
        for ip in range(n_phi):
            ph = 2 * math.pi * ip / n_phi
            if reparam is None:
                theta, phi, jac = th, ph, 1.0
            else:
                theta, phi, jac = reparam(th, ph)
            S, xi_t, xi_p = sphere.frame(theta, phi)
            comm = xi_t @ xi_p - xi_p @ xi_t
            val = np.trace(S @ comm)
            total += w * (2 * math.pi / n_phi) * jac * val.real
    return float(total)


def _root_cycles(n):
    return [(j, k) for j in range(n) for k in range(j + 1, n)]


def dh_linearity_fit(algebra: str, levels, roots=None, n_theta: int = 48,
                     n_phi: int = 64) -> dict:
    """Fit each root-cycle KKS integral as a linear function of the level.

    `levels` is a list of traceless diagonal levels (tuples); for su(2) a
    scalar t is shorthand for (t, -t).  Returns per-cycle fits, the maximum
    relative residual, and pass/fail at 1e-8.
    """
    n = {"su2": 2, "su3": 3}.get(algebra)
    if n is None:
        raise ValueError("algebra must be su2 or su3")
    lv = []
    for a in levels:
        if np.isscalar(a):
            if n != 2:
                raise ValueError("scalar levels only for su2")
            lv.append((float(a), -float(a)))
        else:
            lv.append(tuple(float(v) for v in a))
    if roots is None:
        roots = _root_cycles(n)
    # a_n is fixed by tracelessness, so fit on the first n-1 coordinates
    A = np.array([list(a[:-1]) + [1.0] for a in lv])
    if np.linalg.matrix_rank(A, tol=1e-10) < min(A.shape):
        raise DegenerateFitError("levels do not span a linear fit; "
                                 "vary the level direction")
    cycles = []
    max_resid = 0.0
    for root in roots:
        wall = [a for a in lv
                if abs(a[root[0]] - a[root[1]]) < 1e-12 * (1 + max(map(abs, a)))]
        vals = np.array([kks_sphere_integral(
            OrbitPoint2Sphere(a, root, n), n_theta, n_phi) for a in lv])
        coef, *_ = np.linalg.lstsq(A, vals, rcond=None)
        resid = float(np.max(np.abs(A @ coef - vals))
                      / (1.0 + np.max(np.abs(vals))))
        max_resid = max(max_resid, resid)
        cycles.append({"root": root, "coefficients": coef.tolist(),
                       "residual": resid, "integrals": vals.tolist(),
                       "degenerate_levels": wall})
    return {"algebra": algebra, "levels": lv, "cycles": cycles,
            "max_residual": max_resid, "ok": max_resid < 1e-8}
