"""Massive vacua of the adjoint SU(n) family: singular curves with the
maximal number n-1 of nodes, and their classification by unramified n-covers
of the base elliptic curve, equivalently by index-n subgroups of Z_n x Z_n.

The cover construction is fully explicit: for an index-n sublattice Lambda'
the distinguished meromorphic function t on E' = C/Lambda' is a sum of
Weierstrass zeta functions with residues (1, ..., 1, 1-n) at the preimages
of infinity, and the vacuum point u is recovered by a linear fit in the
p-basis of the spectral family.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import sympy

from .su_adjoint import spectral_family
from .weierstrass import EllipticCurveModel
from .numerics import AnalyticEllipticData, lattice_data, weierstrass_functions

__all__ = [
    "SubgroupClass", "VacuumPoint",
    "count_index_subgroups", "su2_vacua", "cover_to_curve", "node_count",
    "all_vacua",
]

_T, _X, _Y = sympy.symbols("t x y")


@dataclass(frozen=True)
class SubgroupClass:
    """Index-n sublattice of Z^2 containing nZ^2, in Hermite normal form
    [[d1, k], [0, d2]] with d1 d2 = n and 0 <= k < d1."""

    d1: int
    k: int
    d2: int

    @property
    def index(self) -> int:
        return self.d1 * self.d2

    def generators(self, w1, w2):
        """Lattice generators of Lambda' inside Z w1 + Z w2 (HNF columns)."""
        return self.d1 * w1, self.k * w1 + self.d2 * w2

    def cosets(self, w1, w2):
        """Representatives of Lambda / Lambda', the n preimages of 0."""
        return [a * w1 + b * w2
                for a in range(self.d1) for b in range(self.d2)]


@dataclass
class VacuumPoint:
    u: tuple
    nodes: int
    subgroup: SubgroupClass | None = None
    fit_residual: float = 0.0
    measured_residues: tuple = ()

    @property
    def normalized_genus(self):
        """Geometric genus of the nodal curve: arithmetic genus n minus the
        node count.  Equals 1 exactly when all n-1 nodes are present, and the
        normalization is then an unramified n-cover of the base."""
        n = len(self.u) + 1
        return n - self.nodes


def count_index_subgroups(n: int):
    """Brute-force HNF enumeration; the count is the divisor sum sigma(n)."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    classes = []
    for d1 in range(1, n + 1):
        if n % d1:
            continue
        d2 = n // d1
        for k in range(d1):
            classes.append(SubgroupClass(d1, k, d2))
    return len(classes), classes


def su2_vacua(curve: EllipticCurveModel, tol: float = 1e-9):
    """The three u where the double cover t^2 = x - u degenerates: the roots
    of x^3 + bx - c, each verified singular via the quartic discriminant of
    (x - u)(x^3 + bx - c)."""
    if curve.disc == 0:
        raise ValueError("smooth curve required")
    roots = [complex(r) for r in curve.roots()]
    b, c = complex(curve.b), complex(curve.c)
    xs = sympy.Symbol("x")
    out = []
    for u in roots:
        quartic = sympy.Poly((xs - u) * (xs**3 + b * xs - c), xs)
        d = complex(sympy.discriminant(quartic.as_expr(), xs))
        scale = max(abs(complex(co)) for co in quartic.all_coeffs())
        if abs(d) > tol * scale**6:
            raise RuntimeError(f"u = {u} failed the singularity check")
        out.append(u)
    return out


# ---------------------------------------------------------------------------
# the cover construction


def _zeta_sum(data_sub: AnalyticEllipticData, residues, poles, z):
    acc = 0j
    for r, q in zip(residues, poles):
        _, _, zt = weierstrass_functions(data_sub, z - q)
        acc += r * zt
    return acc


def cover_to_curve(data: AnalyticEllipticData, H: SubgroupClass, n: int,
                   distinguished: int = 0, tol: float = 1e-8) -> VacuumPoint:
    """Vacuum point attached to the index-n subgroup H at the base lattice
    of `data`.

    Builds E' = C/Lambda', the elliptic t-function with residues
    (1, ..., 1, 1-n) at the preimages of 0 (the value 1-n sits at the coset
    chosen by `distinguished`), normalizes it to trace zero over the fibers
    of E' -> E, and fits the image curve in the spectral family's p-basis.
    """
    if H.index != n:
        raise ValueError(f"subgroup has index {H.index}, expected {n}")
    w1, w2 = data.w1, data.w2
    g1, g2 = H.generators(w1, w2)
    sub = lattice_data(g1, g2)
    cosets = H.cosets(w1, w2)
    residues = [1.0] * n
    residues[distinguished] = 1.0 - n

    curve = EllipticCurveModel(data.b, data.c)
    fam = spectral_family(n, curve)
    eq = fam.equation(_T)

    def t_of(z):
        return _zeta_sum(sub, residues, cosets, z)

    # trace over a fiber of E' -> E is constant in z (elliptic, single simple
    # pole with zero residue); fix the additive constant so it vanishes
    z_probe = 0.2337 * w1 + 0.1711 * w2
    trace = sum(t_of(z_probe + q) for q in cosets)
    const = -trace / n

    rng = np.random.default_rng(7)
    n_samp = 4 * n + 6
    samples = []
    for _ in range(n_samp):
        z = (0.07 + 0.86 * rng.random()) * w1 + (0.06 + 0.87 * rng.random()) * w2
        wp, wpp, _ = weierstrass_functions(data, z)
        # y = -wp'/2 so that the family's dz = -dx/(2y) is the uniformizer dz
        samples.append((t_of(z) + const, wp, -wpp / 2.0))

    rows = []
    rhs = []
    for tv, xv, yv in samples:
        vals = {_T: tv, _X: xv, _Y: yv}
        row = [complex(eq.coeff(p, 1).subs(vals)) for p in fam.parameters]
        base = complex(eq.subs({p: 0 for p in fam.parameters}).subs(vals))
        rows.append(row)
        rhs.append(-base)
    A = np.array(rows, dtype=complex)
    bvec = np.array(rhs, dtype=complex)
    u, *_ = np.linalg.lstsq(A, bvec, rcond=None)
    resid = float(np.max(np.abs(A @ u - bvec)) / (1.0 + np.max(np.abs(bvec))))
    if resid > tol:
        raise RuntimeError(f"cover fit residual {resid:.3e} exceeds {tol}")

    measured = _measure_residues(t_of, const, cosets, w1, w2)
    nodes = node_count(n, [complex(v) for v in u], curve)
    return VacuumPoint(tuple(complex(v) for v in u), nodes["nodes"], H,
                       resid, tuple(measured))


def _measure_residues(t_of, const, cosets, w1, w2, eps_frac=0.02, steps=64):
    """Contour re-measurement of the residues of t dz at each preimage."""
    eps = eps_frac * min(abs(w1), abs(w2))
    out = []
    for q in cosets:
        acc = 0j
        for k in range(steps):
            th = 2 * math.pi * (k + 0.5) / steps
            dz = eps * cmath.exp(1j * th)
            acc += (t_of(q + dz) + const) * dz
        out.append(acc / steps)
    return out


def all_vacua(data: AnalyticEllipticData, n: int, tol: float = 1e-8):
    """One VacuumPoint per subgroup class; checks pairwise distinctness."""
    _, classes = count_index_subgroups(n)
    points = [cover_to_curve(data, H, n, tol=tol) for H in classes]
    us = [p.u for p in points]
    dmin = math.inf
    for i in range(len(us)):
        for j in range(i + 1, len(us)):
            dmin = min(dmin, max(abs(a - b) for a, b in zip(us[i], us[j])))
    return {"points": points, "min_separation": dmin,
            "distinct": dmin > 1e-6}


# ---------------------------------------------------------------------------
# node counting


def _poly_in_t(n, u, curve):
    fam = spectral_family(n, curve, u=u)
    return [c for c in fam.coeffs]  # FunctionFieldElement, t^n .. t^0


def _norm_poly(coeffs, b, c):
    """Coefficients of disc(x, y) disc(x, -y) as a polynomial in x, computed
    from the Sylvester resultant of F and F_t reduced modulo y^2 = rhs."""
    ysq = _X**3 + b * _X - c
    F = sympy.expand(sum((fc.A + fc.B * _Y) * _T**k
                         for k, fc in enumerate(reversed(coeffs))))
    Ft = sympy.expand(sympy.diff(F, _T))
    from .exactcore import sylvester_matrix
    res = sylvester_matrix(F, Ft, _T).det(method="berkowitz")
    py = sympy.Poly(sympy.expand(res), _Y)
    even = sympy.S.Zero
    odd = sympy.S.Zero
    for (m,), co in py.terms():
        q, r = divmod(m, 2)
        term = co * ysq**q
        if r:
            odd += term
        else:
            even += term
    norm = sympy.expand(even**2 - odd**2 * ysq)
    return [complex(v) for v in sympy.Poly(norm, _X).all_coeffs()]


def node_count(n: int, u, curve: EllipticCurveModel, tol: float = 1e-8) -> dict:
    """Singular points of C_u over E, each classified nodal or not.

    Zeros of disc_t are located through the norm polynomial
    disc(x, y) disc(x, -y) in x (degree 2(n-1)); each zero is either an
    ordinary branch point of C_u -> E (gradient nonzero) or a singular point,
    and singular points are tested for nondegenerate Hessians.
    """
    coeffs = _poly_in_t(n, u, curve)
    b, c = complex(curve.b), complex(curve.c)

    def rhs(x):
        return x**3 + b * x - c

    def coeff_vals(x, y):
        return np.array([complex(fc.A.subs(_X, x)) + complex(fc.B.subs(_X, x)) * y
                         for fc in coeffs], dtype=complex)

    def disc_t(x, y):
        cv = coeff_vals(x, y)
        r = np.roots(cv)
        v = cv[0] ** (2 * len(r) - 2)
        for i in range(len(r)):
            for j in range(i + 1, len(r)):
                v *= (r[i] - r[j]) ** 2
        return v

    # norm of disc over the x-line, via the exact resultant; the candidate
    # degree 2(n-1) emerges after cancellation of the y-odd part
    cs = _norm_poly(coeffs, b, c)
    mag = max(abs(v) for v in cs) or 1.0
    while len(cs) > 1 and abs(cs[0]) < 1e-9 * mag:
        cs = cs[1:]
    xroots = list(np.roots(np.array(cs, dtype=complex))) if len(cs) > 1 else []
    cands = []
    for xr in xroots:
        for w in cands:
            if abs(xr - w) < 1e-5 * (1 + abs(xr)):
                break
        else:
            cands.append(complex(xr))

    points = []
    for x0 in cands:
        yp = cmath.sqrt(rhs(x0))
        dp, dm = abs(disc_t(x0, yp)), abs(disc_t(x0, -yp))
        dref = max(dp, dm, 1e-30)
        signs = [s for s, d in ((1, dp), (-1, dm)) if d < 1e-4 * dref or d == min(dp, dm)]
        sols = []
        for s in signs:
            sols.extend(_classify_singular(coeffs, x0, s * yp, b, c, tol))
        for s in sols:
            sc = 1e-8 * (1 + abs(s["x"]))
            for p in points:
                if abs(p["x"] - s["x"]) < sc and abs(p["y"] - s["y"]) < sc:
                    break
            else:
                points.append(s)
    # coarse grouping: a pair of branch points closer than the resolution of
    # the input u is indistinguishable from a node perturbed below tolerance,
    # so such a group is reported as one node
    groups = []
    for p in points:
        sc = 1e-4 * (1 + abs(p["x"]))
        for g in groups:
            if abs(g[0]["x"] - p["x"]) < sc and abs(g[0]["y"] - p["y"]) < sc:
                g.append(p)
                break
        else:
            groups.append([p])
    merged = []
    for g in groups:
        kinds = [p["type"] for p in g]
        if "node" in kinds or kinds.count("branch") >= 2:
            kind = "node"
        else:
            kind = kinds[0]
        rep = dict(g[0])
        rep["type"] = kind
        rep["multiplicity"] = len(g)
        merged.append(rep)
    nodes = sum(1 for p in merged if p["type"] == "node")
    other = [p for p in merged if p["type"] not in ("node", "branch")]
    return {"nodes": nodes, "points": merged,
            "non_nodal": [p for p in other]}


def _classify_singular(coeffs, x0, y0, b, c, tol):
    """Polish F = F_t = 0 near (x0, y0) along the curve and classify."""

    def rhs(x):
        return x**3 + b * x - c

    def drhs(x):
        return 3 * x**2 + b

    use_y = abs(y0) ** 2 < 1e-4 * (1 + abs(x0)) ** 3

    def point(w):
        # local parametrization of E by w
        if use_y:
            # x(y) by Newton from x0
            x = x0
            for _ in range(60):
                x -= (rhs(x) - w**2) / drhs(x)
            return x, w
        y = cmath.sqrt(rhs(w))
        if abs(y - y0) > abs(y + y0):
            y = -y
        return w, y

    def cvals(w):
        x, y = point(w)
        return np.array([complex(fc.A.subs(_X, x)) + complex(fc.B.subs(_X, x)) * y
                         for fc in coeffs], dtype=complex)

    w0 = y0 if use_y else x0
    cv = cvals(w0)
    r = np.roots(cv)
    # repeated t-root candidates: pair up closest roots
    best = None
    for i in range(len(r)):
        for j in range(i + 1, len(r)):
            if best is None or abs(r[i] - r[j]) < best[0]:
                best = (abs(r[i] - r[j]), (r[i] + r[j]) / 2)
    if best is None:
        return []
    t0 = best[1]

    def F(t, w):
        return complex(np.polyval(cvals(w), t))

    h = 1e-5 * (1 + abs(w0))

    def Ft(t, w):
        ht = 1e-5 * (1 + abs(t))
        return (F(t + ht, w) - F(t - ht, w)) / (2 * ht)

    # Newton on (F, F_t) in (t, w)
    t, w = complex(t0), complex(w0)
    for _ in range(80):
        f1, f2 = F(t, w), Ft(t, w)
        ht = 1e-6 * (1 + abs(t))
        hw = 1e-6 * (1 + abs(w))
        j11 = (F(t + ht, w) - F(t - ht, w)) / (2 * ht)
        j12 = (F(t, w + hw) - F(t, w - hw)) / (2 * hw)
        j21 = (Ft(t + ht, w) - Ft(t - ht, w)) / (2 * ht)
        j22 = (Ft(t, w + hw) - Ft(t, w - hw)) / (2 * hw)
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-18:
            break
        dt = (f1 * j22 - f2 * j12) / det
        dw = (j11 * f2 - j21 * f1) / det
        t, w = t - dt, w - dw
        if abs(dt) + abs(dw) < 1e-13 * (1 + abs(t) + abs(w)):
            break
    xs, ys = point(w)
    scale = max(np.abs(cvals(w)).max(), 1e-30)
    if abs(F(t, w)) > 1e-6 * scale or abs(Ft(t, w)) > 1e-5 * scale:
        return []  # no coalescing point here after polish
    # scale-free classification: follow the two coalescing t-roots around a
    # small circle in the base.  An exchange with |dt| ~ r^(1/2) is an
    # ordinary branch point, ~ r^(3/2) a cusp; no exchange means two analytic
    # sheets crossing, i.e. a node.  The circle radius exceeds the resolution
    # of the input, so a node split by roundoff in u is still seen as a node.
    r1 = 1e-3 * (1 + abs(w))
    ex1, d1 = _sheet_monodromy(cvals, w, t, r1)
    ex2, d2 = _sheet_monodromy(cvals, w, t, r1 / 4)
    slope = math.log(max(d1, 1e-300) / max(d2, 1e-300)) / math.log(4.0)
    if ex1:
        kind = "branch" if slope < 1.0 else "cusp"
    else:
        kind = "node"
    return [{"x": xs, "y": ys, "t": t, "type": kind,
             "slope": slope, "exchanged": ex1}]


def _sheet_monodromy(cvals, w0, t0, r):
    """Track the two t-roots nearest t0 around |w - w0| = r; report whether
    they are exchanged after a full loop and their separation at angle 0."""
    steps = 64
    start = np.roots(cvals(w0 + r))
    order = np.argsort(np.abs(start - t0))
    track = [complex(start[order[0]]), complex(start[order[1]])]
    a0, b0 = track
    for k in range(1, steps + 1):
        th = 2 * math.pi * k / steps
        nxt = np.roots(cvals(w0 + r * cmath.exp(1j * th)))
        used = set()
        newtrack = []
        for tv in track:
            j = min((j for j in range(len(nxt)) if j not in used),
                    key=lambda j: abs(nxt[j] - tv))
            used.add(j)
            newtrack.append(complex(nxt[j]))
        track = newtrack
    exchanged = (abs(track[0] - b0) + abs(track[1] - a0)
                 < abs(track[0] - a0) + abs(track[1] - b0))
    return exchanged, abs(a0 - b0)
