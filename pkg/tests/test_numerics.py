"""Analytic layer: lattices, Weierstrass data, periods, monodromy."""

import cmath

import numpy as np

from swcurves import (
    EllipticCurveModel, curve_from_nome, elliptic_periods, gamma2_membership,
    lattice_data, model_consistency, monodromy, monodromy_report, sw1_periods,
    weierstrass_functions,
)


def test_lattice_roundtrip():
    # lattice -> (b, c) -> periods recovers the curve data, and both frames
    # satisfy the Legendre relation
    data = lattice_data(2.0, 1.0 + 1.7j)
    back = elliptic_periods(EllipticCurveModel(data.b, data.c))
    assert data.tau.imag > 0 and back.tau.imag > 0
    assert abs(data.b - back.b) < 1e-8 * (1 + abs(data.b))
    assert abs(data.c - back.c) < 1e-8 * (1 + abs(data.c))
    assert data.legendre_residual < 1e-8
    assert back.legendre_residual < 1e-8


def test_model_consistency_samples():
    data = lattice_data(2.0, 0.6 + 1.3j)
    worst = model_consistency(data, samples=5, seed=1)
    assert worst < 1e-8


def test_weierstrass_point_on_curve():
    data = lattice_data(1.0, 0.2 + 1.1j)
    p, pp = weierstrass_functions(data, 0.31 + 0.12j)[:2]
    lhs = pp**2
    rhs = 4 * p**3 - data.g2 * p - data.g3
    assert abs(lhs - rhs) < 1e-8 * (1 + abs(rhs))


def test_curve_from_nome_small_q():
    out = curve_from_nome(0.02 + 0.01j)
    tau = out["tau"]
    assert tau.imag > 0
    q = cmath.exp(2j * cmath.pi * tau)
    assert abs(q - (0.02 + 0.01j)) < 1e-10


def test_sw1_periods_positivity():
    for u in (3.0 + 0.4j, -2.0 + 2.5j, 0.2 + 3.0j):
        frame = sw1_periods(u)
        assert frame.tau.imag > 0


def test_monodromy_matrices_integral():
    for loop in ("inf", "+1", "-1"):
        m = monodromy(loop, steps=200)
        M = np.asarray(m.matrix)
        assert np.allclose(M, np.round(M), atol=1e-6)
        assert abs(abs(np.linalg.det(np.round(M))) - 1) < 1e-9
        assert m.residual < 1e-6


def test_monodromy_report_relations():
    rep = monodromy_report(steps=200)
    assert rep["product_relation"]
    assert rep["gamma2"]
    assert rep["conjugate_to_reference"]


def test_gamma2_membership_known_matrices():
    assert gamma2_membership([[-1, 2], [0, -1]])
    assert gamma2_membership([[1, 0], [-2, 1]])
    assert not gamma2_membership([[1, 1], [0, 1]])
    assert not gamma2_membership([[1, 2], [0, 2]])
