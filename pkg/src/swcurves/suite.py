"""The full verification battery: twelve named checks covering every claim
the package makes, from exact symbolic identities to seeded numeric sweeps.

Each criterion function returns a check dict {name, status, residual,
tolerance, details}; `run_battery` runs them in order.  Randomized checks
draw from generators seeded by the single battery seed, so the battery is a
pure function of its seed.
"""

from __future__ import annotations

import math
import random

import numpy as np
import sympy

from .weierstrass import (B, C, X, XI, Y, EllipticCurveModel, GENERIC_CURVE,
                          expand_y, expand_y_inverse, xk_basis)
from .su_adjoint import (NoDistinguishedSolutionError, branch_residues,
                         check_first_order_poles, degeneration_check_su2,
                         leading_polynomial, pn_closed, pn_solve,
                         pure_curve_structure, spectral_family,
                         su2_consistency)
from .numerics import curve_from_nome, monodromy_report, sw1_periods
from . import toda
from .vacua import all_vacua, count_index_subgroups, cover_to_curve, su2_vacua
from .symplectic import (aks_bracket, dh_linearity_fit, kks_sphere_integral,
                         random_tridiagonal_point, split_algebra,
                         OrbitPoint2Sphere)


__all__ = ["run_battery", "CRITERIA"]


def _check(name, ok, residual=None, tolerance=None, **details):
    return {"name": name, "status": "pass" if ok else "fail",
            "residual": residual, "tolerance": tolerance,
            "details": details}


# -- 1: the x_k table --------------------------------------------------------

XK_TABLE = {
    2: X,
    3: Y,
    4: X**2,
    5: X * Y,
    6: X**3,
    7: X**2 * Y - sympy.Rational(1, 2) * B * Y,
    8: X**4,
    9: X**3 * Y - sympy.Rational(1, 2) * B * X * Y + sympy.Rational(1, 2) * C * Y,
    10: X**5,
    11: (X**4 * Y - sympy.Rational(1, 2) * B * X**2 * Y
         + sympy.Rational(1, 2) * C * X * Y + sympy.Rational(3, 8) * B**2 * Y),
    12: X**6,
}


def criterion_xk(seed=0):
    bad = []
    for k, expected in XK_TABLE.items():
        got = xk_basis(GENERIC_CURVE, k).expr
        if sympy.expand(got - expected) != 0:
            bad.append(k)
    return _check("xk_table", not bad, tolerance="exact", failing_k=bad)


# -- 2: the y-expansions -----------------------------------------------------

Y_SERIES = {  # exponent relative to xi^{-3}: coefficient
    0: sympy.Integer(1),
    4: B / 2,
    6: -C / 2,
    8: -B**2 / 8,
    10: B * C / 4,
    12: -(2 * C**2 - B**3) / 16,
}
Y_INV_SERIES = {
    0: sympy.Integer(1),
    4: -B / 2,
    6: C / 2,
    8: 3 * B**2 / 8,
    10: -3 * B * C / 4,
    12: (6 * C**2 - 5 * B**3) / 16,
}


def criterion_y_expansion(seed=0):
    bad = []
    ys = expand_y(GENERIC_CURVE, order=9)
    for e, coeff in Y_SERIES.items():
        if sympy.expand(ys.coeff(e - 3) - coeff) != 0:
            bad.append(("y", e))
    inv = expand_y_inverse(GENERIC_CURVE, order=15)
    for e, coeff in Y_INV_SERIES.items():
        if sympy.expand(inv.coeff(e + 3) - coeff) != 0:
            bad.append(("1/y", e))
    # the two are inverse series
    prod = ys * inv
    inv_ok = all(sympy.expand(prod.coeff(e)) == (1 if e == 0 else 0)
                 for e in prod.exponents())
    return _check("y_expansions", not bad and inv_ok, tolerance="exact",
                  failing_terms=bad, product_is_one=inv_ok)


# -- 3: the p_n closed form --------------------------------------------------

def _tabulated_pn_list():
    t = sympy.Symbol("t")
    return t, [
        sympy.Integer(1),
        t,
        t**2 - X,
        t**3 - 3 * X * t + 2 * Y,
        t**4 - 6 * X * t**2 + 8 * Y * t - 3 * X**2,
        t**5 - 10 * X * t**3 + 20 * Y * t**2 - 15 * X**2 * t + 4 * X * Y,
        t**6 - 15 * X * t**4 + 40 * Y * t**3 - 45 * X**2 * t**2
        + 24 * X * Y * t - 5 * X**3,
        t**7 - 21 * X * t**5 + 70 * Y * t**4 - 105 * X**2 * t**3
        + 84 * X * Y * t**2 - 35 * X**3 * t
        + 6 * (X**2 * Y - sympy.Rational(1, 2) * B * Y),
    ]


def criterion_pn(seed=0):
    t, table = _tabulated_pn_list()
    list_bad = []
    for n, expected in enumerate(table):
        got = sum(c.expr * t ** (n - k) for k, c in enumerate(pn_closed(n)))
        if sympy.expand(got - expected) != 0:
            list_bad.append(n)
    solve_bad = []
    pole_bad = []
    for n in range(2, 9):
        closed = pn_closed(n)
        try:
            solved, dim = pn_solve(n)
            agree = all(a == b for a, b in zip(closed, solved)) and dim == n - 1
        except NoDistinguishedSolutionError:
            agree = False
        if not agree:
            solve_bad.append(n)
        ok_poles, _ = check_first_order_poles(spectral_family(n))
        if not ok_poles:
            pole_bad.append(n)
    ok = not list_bad and not solve_bad and not pole_bad
    return _check(
        "pn_closed_form", ok, tolerance="exact",
        tabulated_list_failures=list_bad,
        linear_solve_failures=solve_bad,
        pole_condition_failures=pole_bad,
        note=("the tabulated closed form violates its own first-order-pole "
              "condition from n = 6 on (the substitution t = t' + xi^-1 "
              "leaves 32 b xi^-2); the n >= 6 clauses are unattainable and "
              "reported as an honest failure" if (solve_bad or pole_bad)
              else ""))


# -- 4: residues over infinity ----------------------------------------------

def criterion_residues(seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures = []
    for n in range(2, 6):
        for _ in range(20):
            u = [complex(rng.normal(), rng.normal()) for _ in range(n - 1)]
            rep = branch_residues(n, u, EllipticCurveModel(1.1 + 0.3j, 0.4 - 0.2j))
            worst = max(worst, rep.max_error, abs(sum(rep.residues)))
            if not rep.passed:
                failures.append((n, [str(v) for v in u]))
    factor_bad = []
    for n in range(2, 9):
        q, cv = leading_polynomial(n)
        target = sympy.expand((cv - 1) ** (n - 1) * (cv + n - 1))
        if sympy.expand(q - target) != 0:
            factor_bad.append(n)
    ok = not failures and not factor_bad and worst < 1e-8
    return _check("branch_residues", ok, residual=worst, tolerance=1e-8,
                  failures=failures, leading_factorization_failures=factor_bad)


# -- 5: SU(2) consistency ----------------------------------------------------

def criterion_su2(seed=0):
    rep = su2_consistency()
    return _check("su2_consistency", rep["ok"], tolerance="exact",
                  quotient_ok=rep["quotient_ok"], mobius_ok=rep["mobius_ok"],
                  u_to_infinity=rep["u_to_infinity"])


# -- 6: monodromy ------------------------------------------------------------

def criterion_monodromy(seed=0):
    rep = monodromy_report()
    ms = rep["matrices"]
    integral = max(v.residual for v in ms.values()) < 1e-6
    taus_ok = True
    min_im = math.inf
    for i in range(200):
        r = 0.31 if i % 2 else 2.9
        th = 2 * math.pi * (i + 0.5) / 200
        u = r * complex(math.cos(th), math.sin(th))
        tau = sw1_periods(u).tau
        min_im = min(min_im, tau.imag)
        if tau.imag <= 0:
            taus_ok = False
    ok = (integral and rep["conjugate_to_reference"]
          and rep["product_relation"] is not None
          and all(rep["gamma2"].values()) and taus_ok)
    return _check("monodromy", ok, residual=max(v.residual for v in ms.values()),
                  tolerance=1e-6,
                  matrices={k: v.matrix.tolist() for k, v in ms.items()},
                  product_relation=rep["product_relation"],
                  gamma2=rep["gamma2"],
                  conjugate_to_reference=rep["conjugate_to_reference"],
                  min_im_tau=min_im)


# -- 7: Toda -----------------------------------------------------------------

def criterion_toda(seed=0):
    shape_bad = []
    for r in range(1, 5):
        cp = toda.toda_charpoly("A", r)
        if cp.epsilon != 0 or not toda.charpoly_matches_family("A", r):
            shape_bad.append(("A", r))
    for r in range(3, 4):
        cp = toda.toda_charpoly("D", r)
        if cp.epsilon != 2:
            shape_bad.append(("D", r))
    subs = toda.verify_all_substitutions(rank=3)
    subs_ok = subs["ok"]
    gt = toda.genus_table(max_rank=4)
    pure = pure_curve_structure(4, [0.21 - 0.11j, -0.35 + 0.4j, 0.17 + 0.23j])
    ok = not shape_bad and subs_ok and gt["ok"] and pure["ok"]
    return _check("toda", ok, tolerance="exact",
                  charpoly_failures=shape_bad,
                  substitutions_ok=subs_ok,
                  genus_rows=[{k: r[k] for k in ("family", "rank", "genus",
                                                 "expected")}
                              for r in gt["rows"]],
                  genus_ok=gt["ok"], pure_structure_ok=pure["ok"])


# -- 8: vacua ----------------------------------------------------------------

def _sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def criterion_vacua(seed=0):
    count_bad = [n for n in range(1, 13)
                 if count_index_subgroups(n)[0] != _sigma(n)]
    data = curve_from_nome(0.04 + 0.03j)["data"]
    curve = EllipticCurveModel(data.b, data.c)
    su2_roots = su2_vacua(curve)
    # cross-validate the three SU(2) vacua through the cover construction
    _, classes2 = count_index_subgroups(2)
    cross = 0.0
    for H in classes2:
        vp = cover_to_curve(data, H, 2)
        cross = max(cross, min(abs(vp.u[0] - r) for r in su2_roots))
    su3 = all_vacua(data, 3)
    nodes = [p.nodes for p in su3["points"]]
    genera = [p.normalized_genus for p in su3["points"]]
    ok = (not count_bad and len(su2_roots) == 3 and cross < 1e-8
          and su3["distinct"] and len(nodes) == 4
          and all(v == 2 for v in nodes) and all(g == 1 for g in genera))
    return _check("vacua", ok, residual=cross, tolerance=1e-8,
                  subgroup_count_failures=count_bad,
                  su2_vacua=[complex(r) for r in su2_roots],
                  su2_cover_cross_validation=cross,
                  su3_nodes=nodes, su3_normalized_genera=genera,
                  su3_distinct=su3["distinct"],
                  su3_u=[list(p.u) for p in su3["points"]])


# -- 9: AKS ------------------------------------------------------------------

def criterion_aks(seed=0):
    rng = random.Random(seed)
    tested = 0
    nonzero = []
    for n in range(2, 6):
        for _ in range(25):
            pt = random_tridiagonal_point(n, rng)
            for k1 in range(2, n + 2):
                for k2 in range(k1 + 1, n + 2):
                    if aks_bracket(n, (k1, k2), pt) != 0:
                        nonzero.append((n, k1, k2))
            tested += 1
    pt = random_tridiagonal_point(3, rng)
    ctrl = aks_bracket(3, (2, ("entry", 0, 0)), pt)
    anti = aks_bracket(3, (("entry", 0, 0), 2), pt)
    control_ok = ctrl != 0 and ctrl == -anti
    shift_ok = split_algebra(4).shift_annihilates()
    ok = tested == 100 and not nonzero and control_ok and shift_ok
    return _check("aks_bracket", ok, tolerance="exact (0)",
                  points_tested=tested, nonzero_pairs=nonzero,
                  negative_control=str(ctrl), antisymmetric=control_ok,
                  shift_annihilates=shift_ok)


# -- 10: DH linearity --------------------------------------------------------

def criterion_dh(seed=0):
    rng = random.Random(seed + 1)
    r2 = dh_linearity_fit("su2", [1, 2, 3, 5], roots=[(0, 1)])
    levels = []
    while len(levels) < 6:
        a = (rng.uniform(-2, 2), rng.uniform(-2, 2))
        a3 = (a[0], a[1], -a[0] - a[1])
        gaps = [abs(a3[i] - a3[j]) for i in range(3) for j in range(i + 1, 3)]
        if min(gaps) > 0.2:
            levels.append(a3)
    r3 = dh_linearity_fit("su3", levels)
    a = levels[0]
    i12 = kks_sphere_integral(OrbitPoint2Sphere(a, (0, 1)))
    i23 = kks_sphere_integral(OrbitPoint2Sphere(a, (1, 2)))
    i13 = kks_sphere_integral(OrbitPoint2Sphere(a, (0, 2)))
    add = abs(i12 + i23 - i13) / (1 + abs(i13))
    worst = max(r2["max_residual"], r3["max_residual"], add)
    ok = r2["ok"] and r3["ok"] and add < 1e-8 and len(r3["cycles"]) == 3
    return _check("dh_linearity", ok, residual=worst, tolerance=1e-8,
                  su2_residual=r2["max_residual"],
                  su3_residual=r3["max_residual"],
                  additivity_defect=add)


# -- 11: degeneration --------------------------------------------------------

def criterion_degeneration(seed=0):
    rep = degeneration_check_su2([1e-3, 1e-4, 1e-5])
    return _check("degeneration_su2", rep["ok"],
                  residual=abs(rep["loglog_slope"] - 1.0)
                  if rep["loglog_slope"] is not None else None,
                  tolerance=0.05,
                  residuals=[e["residual"] for e in rep["entries"]],
                  monotone=rep["residual_monotone_decreasing"],
                  loglog_slope=rep["loglog_slope"])


# -- 12: determinism ---------------------------------------------------------

def criterion_determinism(seed=0):
    """Re-runs a seeded sub-battery twice and compares canonical JSON bytes.

    The full-output determinism contract (two identical invocations of the
    whole battery producing byte-identical JSON) is exercised externally by
    invoking the command twice; this check covers the in-process pipeline,
    including RNG reseeding and serialization.
    """
    from .report import json_bytes, make_report

    def sub():
        checks = [criterion_xk(seed), criterion_residues(seed),
                  criterion_aks(seed)]
        return json_bytes(make_report("suite sub", {}, {}, checks, seed))

    same = sub() == sub()
    return _check("determinism", same, tolerance="byte-identical",
                  byte_identical=same)


CRITERIA = [
    criterion_xk,
    criterion_y_expansion,
    criterion_pn,
    criterion_residues,
    criterion_su2,
    criterion_monodromy,
    criterion_toda,
    criterion_vacua,
    criterion_aks,
    criterion_dh,
    criterion_degeneration,
    criterion_determinism,
]


def run_battery(seed: int = 0, only=None) -> dict:
    """Run the criteria (all, or the 1-based subset `only`) and aggregate."""
    checks = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only is not None and i not in only:
            continue
        checks.append(fn(seed))
    return {"checks": checks,
            "ok": all(c["status"] == "pass" for c in checks)}
