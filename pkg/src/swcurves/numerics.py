"""Complex-analytic engine: elliptic periods, Weierstrass functions, period
integrals of the Seiberg-Witten differential, monodromy, and the Kahler
potential.

Conventions fixed here:

* lattice generators (w1, w2) always satisfy Im(w2/w1) > 0; tau = w2/w1,
  nome q = exp(2 pi i tau);
* the algebraic model is y^2 = x^3 + b x - c with x = wp(z), y = wp'(z)/2,
  so g2 = -4b, g3 = 4c;
* quasi-periods eta_i = zeta(z + w_i) - zeta(z), computed independently for
  both generators through E_2; the Legendre relation eta1 w2 - eta2 w1 =
  2 pi i is a genuine cross-check, not an input;
* the rank-1 curve is E_u: y^2 = (x+1)(x-1)(x-u) with lambda = (x-u)dx/y;
  the cycle gamma encircles the cut (-1, 1) and gamma-dual the cut (1, u).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

__all__ = [
    "AnalyticEllipticData", "PeriodFrame", "MonodromyMatrix",
    "elliptic_periods", "lattice_data", "curve_from_nome",
    "weierstrass_functions", "model_consistency",
    "sw1_periods", "monodromy", "monodromy_report",
    "gamma2_membership", "kahler_potential",
    "ProximityError", "ContinuationError",
]

_TWO_PI_I = 2j * math.pi


class ProximityError(ValueError):
    """The requested point is too close to a singular point of the family."""


class ContinuationError(RuntimeError):
    """Analytic continuation could not match branches unambiguously."""


# ---------------------------------------------------------------------------
# Eisenstein series and lattice invariants
# ---------------------------------------------------------------------------

def _lambert(tau, power):
    """sum_{m>=1} m^power q^m / (1 - q^m) with q = exp(2 pi i tau)."""
    q = cmath.exp(_TWO_PI_I * tau)
    if abs(q) > 0.9:
        raise ValueError("Im(tau) too small for the q-series")
    total = 0.0 + 0.0j
    qm = 1.0 + 0.0j
    m = 1
    while True:
        qm *= q
        term = (m ** power) * qm / (1 - qm)
        total += term
        if abs(qm) < 1e-18 and m > 4:
            break
        m += 1
        if m > 4000:
            break
    return total


def eisenstein_E2(tau):
    return 1 - 24 * _lambert(tau, 1)


def eisenstein_E4(tau):
    return 1 + 240 * _lambert(tau, 3)


def eisenstein_E6(tau):
    return 1 - 504 * _lambert(tau, 5)


def _invariants_from_lattice(w1, w2):
    tau = w2 / w1
    g2 = (4 * math.pi ** 4 / 3) * eisenstein_E4(tau) / w1 ** 4
    g3 = (8 * math.pi ** 6 / 27) * eisenstein_E6(tau) / w1 ** 6
    return g2, g3


def _eta_pair(w1, w2):
    """Quasi-periods (eta1, eta2): eta(w) = pi^2 E2(w'/w) / (3w) for an
    oriented generator pair (w, w')."""
    eta1 = math.pi ** 2 * eisenstein_E2(w2 / w1) / (3 * w1)
    # (w2, -w1) is again an oriented basis
    eta2 = math.pi ** 2 * eisenstein_E2(-w1 / w2) / (3 * w2)
    return eta1, eta2


@dataclass(frozen=True)
class AnalyticEllipticData:
    w1: complex
    w2: complex
    eta1: complex
    eta2: complex
    b: complex
    c: complex

    @property
    def tau(self):
        return self.w2 / self.w1

    @property
    def nome(self):
        return cmath.exp(_TWO_PI_I * self.tau)

    @property
    def g2(self):
        return -4 * self.b

    @property
    def g3(self):
        return 4 * self.c

    @property
    def legendre_residual(self):
        return abs(self.eta1 * self.w2 - self.eta2 * self.w1 - _TWO_PI_I)


def lattice_data(w1, w2) -> AnalyticEllipticData:
    """Analytic data of the lattice Z w1 + Z w2 (orientation corrected)."""
    w1, w2 = complex(w1), complex(w2)
    if (w2 / w1).imag == 0:
        raise ValueError("degenerate lattice")
    if (w2 / w1).imag < 0:
        w1, w2 = w2, w1
    g2, g3 = _invariants_from_lattice(w1, w2)
    eta1, eta2 = _eta_pair(w1, w2)
    return AnalyticEllipticData(w1, w2, eta1, eta2, -g2 / 4, g3 / 4)


def elliptic_periods(curve) -> AnalyticEllipticData:
    """Periods of y^2 = x^3 + bx - c via the Carlson symmetric integral.

    Each root e_i gives a period 2 R_F(0, e_i - e_j, e_i - e_k); a generator
    pair is selected by requiring the Eisenstein reconstruction of g2, g3 to
    match the input curve (this also rules out accidental sublattices).
    """
    b, c = complex(curve.b), complex(curve.c)
    disc = -4 * b ** 3 - 27 * c ** 2
    if abs(disc) < 1e-14:
        raise ValueError("nodal curve: periods degenerate")
    e = np.roots([1.0, 0.0, b, -c])
    p = []
    for i in range(3):
        j, k = [m for m in range(3) if m != i]
        p.append(complex(2 * mpmath.elliprf(0, e[i] - e[j], e[i] - e[k])))
    g2_target, g3_target = -4 * b, 4 * c
    scale = max(abs(g2_target), abs(g3_target), 1.0)
    best = None
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            for s in (1, -1):
                w1, w2 = p[i], s * p[j]
                r = (w2 / w1).imag
                if r <= 1e-12:
                    continue
                try:
                    g2, g3 = _invariants_from_lattice(w1, w2)
                except ValueError:
                    continue
                err = (abs(g2 - g2_target) + abs(g3 - g3_target)) / scale
                if best is None or err < best[0]:
                    best = (err, w1, w2)
    if best is None or best[0] > 1e-8:
        raise RuntimeError(f"period basis search failed (best residual {best and best[0]})")
    _, w1, w2 = best
    eta1, eta2 = _eta_pair(w1, w2)
    return AnalyticEllipticData(w1, w2, eta1, eta2, b, c)


def curve_from_nome(q) -> dict:
    """Curve data for the lattice (1, tau) with nome q = exp(2 pi i tau)."""
    q = complex(q)
    if not 0 < abs(q) < 1:
        raise ValueError("nome must satisfy 0 < |q| < 1")
    tau = cmath.log(q) / _TWO_PI_I
    data = lattice_data(1.0, tau)
    roots = np.roots([1.0, 0.0, data.b, -data.c])
    return {"data": data, "tau": tau, "b": data.b, "c": data.c,
            "roots": [complex(r) for r in roots]}


# ---------------------------------------------------------------------------
# Weierstrass functions (theta quotients)
# ---------------------------------------------------------------------------

def weierstrass_functions(data: AnalyticEllipticData, z):
    """(wp, wp', zeta) at z for the lattice of `data`.

    Theta-based: for the normalized lattice (1, tau),
      zeta(v) = eta1 v + pi th1'(pi v)/th1(pi v),
      wp(v)   = -eta1 - pi^2 [th1''/th1 - (th1'/th1)^2](pi v),
      wp'(v)  = -pi^3 [th1'''/th1 - 3 th1''th1'/th1^2 + 2 (th1'/th1)^3](pi v),
    then scaled by 1/w1^2, 1/w1^3, 1/w1.
    """
    z = complex(z)
    w1, w2 = data.w1, data.w2
    tau = data.tau
    # reduce z/w1 modulo the (1, tau) lattice to keep the thetas well-scaled
    v, n1, n2 = _reduce_mod_lattice(z / w1, tau)
    if abs(v) < 1e-12:
        raise ProximityError("z lies on (or numerically on) the lattice")
    qtheta = cmath.exp(1j * math.pi * tau)
    x = math.pi * v
    th = [complex(mpmath.jtheta(1, x, qtheta, derivative=k)) for k in range(4)]
    if abs(th[0]) < 1e-280:
        raise ProximityError("z lies on (or numerically on) the lattice")
    r1 = th[1] / th[0]
    r2 = th[2] / th[0]
    r3 = th[3] / th[0]
    eta1n = data.eta1 * w1  # quasi-period of the normalized lattice
    zeta_n = eta1n * v + math.pi * r1
    wp_n = -eta1n - math.pi ** 2 * (r2 - r1 * r1)
    wpp_n = -math.pi ** 3 * (r3 - 3 * r2 * r1 + 2 * r1 ** 3)
    # undo the lattice reduction for zeta (wp, wp' are periodic)
    zeta_n += n1 * eta1n + n2 * (data.eta2 * w1)
    return wp_n / w1 ** 2, wpp_n / w1 ** 3, zeta_n / w1


def _reduce_mod_lattice(v, tau):
    n2 = round(v.imag / tau.imag)
    v = v - n2 * tau
    n1 = round(v.real)
    return v - n1, n1, n2


def model_consistency(data: AnalyticEllipticData, samples=6, seed=0):
    """Max residual of wp'^2 - 4wp^3 + g2 wp + g3 and of y^2 = x^3 + bx - c
    with x = wp, y = wp'/2, at sample points."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        s, t = rng.uniform(0.15, 0.85, 2)
        z = s * data.w1 + t * data.w2
        wp, wpp, _ = weierstrass_functions(data, z)
        r1 = abs(wpp ** 2 - (4 * wp ** 3 - data.g2 * wp - data.g3))
        x, y = wp, wpp / 2
        r2 = abs(y ** 2 - (x ** 3 + data.b * x - data.c))
        norm = max(1.0, abs(wp) ** 3)
        worst = max(worst, r1 / norm, r2 / norm)
    return worst


# ---------------------------------------------------------------------------
# SW periods for E_u: y^2 = (x+1)(x-1)(x-u)
# ---------------------------------------------------------------------------

_GAUSS_N = 160
_GNODES, _GWEIGHTS = np.polynomial.legendre.leggauss(_GAUSS_N)
_THETAS = 0.5 * math.pi * (_GNODES + 1.0)
_TWEIGHTS = 0.5 * math.pi * _GWEIGHTS


def _seg_distance(point, a, b):
    """Distance from a complex point to the segment [a, b]."""
    d = b - a
    if d == 0:
        return abs(point - a)
    t = ((point - a) / d).real
    t = min(1.0, max(0.0, t))
    return abs(point - (a + t * d))


def _cut_integrals(p, q, r, u):
    """(integral of lambda, integral of dx/y) over the cycle around cut (p, q),
    third branch point r.  Overall sign is a branch choice, consistent
    between the two integrands."""
    m = (p + q) / 2
    h = (q - p) / 2
    x = m + h * np.cos(_THETAS)
    w = x - r
    ang = np.unwrap(np.angle(w))
    s = np.sqrt(np.abs(w)) * np.exp(0.5j * ang)
    base = _TWEIGHTS / s
    ia = complex(np.sum((x - u) * base)) * (2 / 1j)
    ip = complex(np.sum(base)) * (2 / 1j)
    return ia, ip


def _pairings(u):
    """The three cut pairings for branch points {-1, 1, u}; each is a pair of
    (cut endpoints, third branch point), rows ordered dual-cycle first."""
    return [
        (((1, u), -1), ((-1, 1), u)),
        (((-1, u), 1), ((1, u), -1)),
        (((-1, u), 1), ((-1, 1), u)),
    ]


def _pairing_score(u, idx):
    return min(_seg_distance(complex(r), complex(a), complex(b))
               for (a, b), r in _pairings(u)[idx])


def _best_pairing(u):
    scores = [_pairing_score(u, i) for i in range(3)]
    i = int(np.argmax(scores))
    return i, scores[i]


def _raw_frame(u, idx=None):
    """2x2 frame [[aD, wD], [a, w]] for the cut pairing `idx`.

    Rows are (integral of lambda, integral of dx/y) over two independent
    cycles around branch cuts; for the default pairing the rows are the
    dual cycle around (1, u) and gamma around (-1, 1)."""
    u = complex(u)
    if min(abs(u - 1), abs(u + 1)) < 1e-6:
        raise ProximityError(f"u = {u} too close to a singular point")
    if idx is None:
        idx, score = _best_pairing(u)
    else:
        score = _pairing_score(u, idx)
    if score < 1e-3:
        raise ProximityError(f"u = {u}: cut pairing degenerates")
    rows = [_cut_integrals(complex(a), complex(b), complex(r), u)
            for (a, b), r in _pairings(u)[idx]]
    return np.array(rows, dtype=complex)


@dataclass
class PeriodFrame:
    u: complex
    a: complex
    a_dual: complex
    tau: complex
    cycles: str
    path: str = "direct"


@dataclass
class MonodromyMatrix:
    loop: str
    matrix: np.ndarray
    residual: float

    @property
    def det(self):
        m = self.matrix
        return int(round(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]))


def sw1_periods(u) -> PeriodFrame:
    """a = loop integral of lambda around the cut (-1,1), a_dual around (1,u);
    tau(u) = ratio of the dx/y periods, orientation fixed so Im tau > 0."""
    F = _raw_frame(u, 0)
    aD, wD = F[0]
    a, w = F[1]
    tau = wD / w
    if tau.imag < 0:
        aD, wD = -aD, -wD
        tau = -tau
    return PeriodFrame(complex(u), a, aD, tau,
                       cycles="gamma: cut(-1,1); dual: cut(1,u)")


def kahler_potential(frame: PeriodFrame) -> float:
    """K = Im(a_dual * conjugate(a))."""
    return float((frame.a_dual * frame.a.conjugate()).imag)


def gamma2_membership(M) -> bool:
    """True iff the integer matrix M is congruent to the identity mod 2."""
    M = np.asarray(M, dtype=int)
    return bool(np.array_equal(np.mod(M - np.eye(2, dtype=int), 2),
                               np.zeros((2, 2), dtype=int)))


# -- analytic continuation ---------------------------------------------------

# per-step drift within one cut pairing: the quadrature's square-root branch
# can only flip the sign of a whole row
_SIGN_FLIPS = [np.diag(d).astype(int) for d in
               ((1, 1), (-1, -1), (1, -1), (-1, 1))]

_SWITCH_THRESHOLD = 0.25


def _continue_frame(path_points):
    """Continue the period frame along a discrete path; returns (C0, C_end).

    Tracks the cut pairing with hysteresis.  Within a pairing, consecutive raw
    frames can differ only by row sign flips; pairing switches happen at a
    single point, where the two frames are related by an exactly integer
    unimodular matrix (both are period bases of the same curve).  This keeps
    every matching decision discrete and unambiguous.
    """
    u0 = path_points[0]
    idx, _ = _best_pairing(u0)
    raw = _raw_frame(u0, idx)
    C0 = raw.copy()
    C = raw.copy()
    S = np.eye(2, dtype=int)          # raw = S @ C
    prev_u = u0
    for u in path_points[1:]:
        if _pairing_score(u, idx) < _SWITCH_THRESHOLD:
            new_idx, new_score = _best_pairing(u)
            if new_idx != idx and new_score > _pairing_score(u, idx):
                # basis change computed at the previous point, where the old
                # pairing is still accurate; the relation is exactly integer
                old_here = _raw_frame(prev_u, idx)
                new_here = _raw_frame(prev_u, new_idx)
                T = new_here @ np.linalg.inv(old_here)
                Tr = np.round(T.real)
                if np.max(np.abs(T - Tr)) > 1e-6 or \
                        abs(abs(np.linalg.det(Tr)) - 1) > 1e-9:
                    raise ContinuationError(
                        f"cut-pairing change at u = {u} is not unimodular")
                S = Tr.astype(int) @ S
                idx = new_idx
        raw = _raw_frame(u, idx)
        norm = np.linalg.norm(C)
        best, second, best_C = None, None, None
        for F in _SIGN_FLIPS:
            cand = np.linalg.inv(F @ S) @ raw
            d = np.linalg.norm(cand - C) / norm
            if best is None or d < best:
                second = best
                best, best_C, best_F = d, cand, F
            elif second is None or d < second:
                second = d
        if best > 0.5:
            raise ContinuationError(
                f"continuation jump at u = {u} (relative {best:.3g}); decrease step")
        if second is not None and second < 1.5 * best and best > 0.05:
            raise ContinuationError(f"ambiguous branch match at u = {u}")
        C = best_C
        S = best_F @ S
        prev_u = u
    return C0, C


def _loop_points(loop, steps, radius=None):
    """Closed path (first point repeated last) for the three standard loops,
    all based at u0 = 3."""
    base = 3.0 + 0.0j
    def circle(center, r, start_angle, steps, turns=1.0):
        return [center + r * cmath.exp(1j * (start_angle + 2 * math.pi * turns * k / steps))
                for k in range(steps + 1)]
    def segment(a, b, steps):
        return [a + (b - a) * k / steps for k in range(steps + 1)]
    if loop in ("inf", "oo"):
        r = radius or 3.0
        return circle(0.0, r, 0.0, steps)
    r = radius or 0.3
    n_leg = max(steps // 4, 20)
    if loop in ("+1", "1"):
        leg = segment(base, 1 + r, n_leg)
        ring = circle(1.0, r, 0.0, steps)
        return leg + ring[1:] + leg[-2::-1]
    if loop == "-1":
        arc = circle(0.0, 3.0, 0.0, n_leg, turns=0.25)       # 3 -> 3i
        leg = segment(3j, -1 + r, n_leg)
        ring = circle(-1.0, r, 0.0, steps)
        back = leg[-2::-1] + arc[-2::-1]
        return arc + leg[1:] + ring[1:] + back
    raise ValueError(f"unknown loop {loop!r}")


def monodromy(loop, steps: int = 400, radius=None) -> MonodromyMatrix:
    """Monodromy of (a_dual, a) around the loop, in the frame at u0 = 3.

    The frame [[aD, wD], [a, w]] is continued stepwise with integer
    minimal-jump branch matching; M = C_end . C_0^(-1), rounded.
    """
    pts = _loop_points(loop, steps, radius)
    C0, C1 = _continue_frame(pts)
    M = C1 @ np.linalg.inv(C0)
    R = np.round(M.real)
    residual = float(np.max(np.abs(M - R)))
    if residual >= 1e-3:
        raise ContinuationError(f"monodromy failed to round (residual {residual:.3g})")
    return MonodromyMatrix(str(loop), R.astype(int), residual)


def monodromy_report(steps: int = 400) -> dict:
    """All three loop matrices, the product relation, and Gamma(2) checks."""
    ms = {name: monodromy(name, steps) for name in ("inf", "+1", "-1")}
    Minf, M1, Mm1 = ms["inf"].matrix, ms["+1"].matrix, ms["-1"].matrix
    order = None
    if np.array_equal(M1 @ Mm1, Minf):
        order = "M(+1).M(-1) = M(inf)"
    elif np.array_equal(Mm1 @ M1, Minf):
        order = "M(-1).M(+1) = M(inf)"
    targets = {"inf": np.array([[-1, 2], [0, -1]]), "+1": np.array([[1, 0], [-2, 1]])}
    conjugator = _simultaneous_conjugator(
        [ms["inf"].matrix, ms["+1"].matrix], [targets["inf"], targets["+1"]])
    return {
        "matrices": ms,
        "product_relation": order,
        "gamma2": {k: gamma2_membership(v.matrix) for k, v in ms.items()},
        "dets": {k: v.det for k, v in ms.items()},
        "conjugator": conjugator,
        "conjugate_to_reference": conjugator is not None,
    }


def _simultaneous_conjugator(mats, targets, bound=4):
    """Integer P, |det P| = 1, with P M P^(-1) = T for all pairs; or None.

    Allows det -1 (orientation flip of the cycle basis) and a global sign.
    """
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            for c in range(-bound, bound + 1):
                for d in range(-bound, bound + 1):
                    det = a * d - b * c
                    if abs(det) != 1:
                        continue
                    P = np.array([[a, b], [c, d]])
                    Pinv = np.array([[d, -b], [-c, a]]) * det
                    if all(np.array_equal(P @ M @ Pinv, T)
                           for M, T in zip(mats, targets)):
                        return P
    return None
