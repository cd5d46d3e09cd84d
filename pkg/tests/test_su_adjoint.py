"""SU(n) adjoint family: distinguished polynomials, residues, degenerations."""

import numpy as np
import sympy

from swcurves import (
    EllipticCurveModel, NoDistinguishedSolutionError, branch_residues,
    check_first_order_poles, degeneration_check_su2, pn_closed, pn_solve,
    pure_curve_structure, spectral_family, su2_consistency,
)

CURVE = EllipticCurveModel(1.1 + 0.3j, 0.4 - 0.2j)


def test_pn_solve_agrees_with_closed_form():
    # dual route: the ansatz formula vs an independent linear solve
    for n in range(2, 6):
        closed = pn_closed(n)
        solved, dim = pn_solve(n)
        assert dim == n - 1
        assert len(closed) == len(solved)
        for a, b in zip(closed, solved):
            assert a == b


def test_pole_condition_holds_through_five():
    for n in range(2, 6):
        ok, worst = check_first_order_poles(spectral_family(n))
        assert ok, f"n={n}: {worst}"


def test_pole_condition_fails_from_six():
    # frozen position: the closed form violates its own pole condition at
    # n = 6 and the solve finds no distinguished solution
    ok, _ = check_first_order_poles(spectral_family(6))
    assert not ok
    try:
        pn_solve(6)
    except NoDistinguishedSolutionError:
        return
    raise AssertionError("expected NoDistinguishedSolutionError")


def test_residue_multiset_su3():
    rng = np.random.default_rng(7)
    for _ in range(5):
        u = [complex(*rng.normal(size=2)) for _ in range(2)]
        rep = branch_residues(3, u, CURVE)
        assert rep.passed
        assert rep.max_error < 1e-8
        vals = sorted(r.real for r in rep.residues)
        assert abs(vals[0] + 2) < 1e-6
        assert abs(vals[1] - 1) < 1e-6 and abs(vals[2] - 1) < 1e-6


def test_residue_q_polynomial_factorization():
    rep = branch_residues(4, [0.3 + 0.1j, -0.2j, 0.5], CURVE)
    cexp = sympy.Symbol("c_lead")
    target = (cexp - 1) ** 3 * (cexp + 3)
    assert sympy.expand(rep.q_factored - target) == 0


def test_su2_consistency_report():
    rep = su2_consistency()
    assert rep["quotient_ok"]
    assert rep["mobius_ok"]
    assert rep["u_to_infinity"]


def test_pure_curve_structure():
    rep = pure_curve_structure(4, [0.21 - 0.11j, -0.35 + 0.4j, 0.17 + 0.23j])
    assert rep["ok"]


def test_degeneration_residual_monotone():
    rep = degeneration_check_su2([1e-3, 1e-4])
    res = [e["residual"] for e in rep["entries"]]
    assert res[1] < res[0]
