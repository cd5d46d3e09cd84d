"""AKS brackets, KKS sphere integrals, Duistermaat-Heckman linearity."""

import math
import random

import pytest

from swcurves import (
    DegenerateFitError, OrbitPoint2Sphere, aks_bracket, dh_linearity_fit,
    kks_sphere_integral, random_tridiagonal_point, split_algebra,
    tridiagonal_point,
)


def test_aks_bracket_vanishes_exactly():
    rng = random.Random(11)
    for n in (2, 3, 4):
        for _ in range(4):
            mu = random_tridiagonal_point(n, rng)
            for k1 in range(2, n + 1):
                for k2 in range(k1 + 1, n + 2):
                    assert aks_bracket(n, [k1, k2], mu) == 0


def test_aks_bracket_antisymmetry():
    mu = tridiagonal_point([1, -2, 1], [1, 2])
    v1 = aks_bracket(3, [2, ("entry", 0, 0)], mu)
    v2 = aks_bracket(3, [("entry", 0, 0), 2], mu)
    assert v1 + v2 == 0


def test_aks_negative_control():
    # a non-invariant function must break the commutation generically
    rng = random.Random(5)
    hits = 0
    for _ in range(6):
        mu = random_tridiagonal_point(3, rng)
        if aks_bracket(3, [2, ("entry", 0, 0)], mu) != 0:
            hits += 1
    assert hits > 0


def test_shift_annihilates_split():
    for n in (2, 3, 4):
        assert split_algebra(n).shift_annihilates()


def test_kks_integral_closed_form():
    # independent oracle: the root sphere at level a has symplectic volume
    # -2 pi (a_j - a_k)
    sphere = OrbitPoint2Sphere((1.0, -1.0), (0, 1))
    val = kks_sphere_integral(sphere)
    assert abs(val - (-4 * math.pi)) < 1e-8

    sphere = OrbitPoint2Sphere((0.9, 0.3, -1.2), (1, 2))
    val = kks_sphere_integral(sphere)
    assert abs(val - (-2 * math.pi * (0.3 - (-1.2)))) < 1e-8


def test_kks_reparametrization_invariance():
    sphere = OrbitPoint2Sphere((1.0, -1.0), (0, 1))
    base = kks_sphere_integral(sphere)

    def reparam(s, t):
        # smooth orientation-preserving warp of the polar coordinate
        theta = s + 0.1 * math.sin(2 * s)
        jac = 1.0 + 0.2 * math.cos(2 * s)
        return theta, t, jac

    warped = kks_sphere_integral(sphere, n_theta=96, reparam=reparam)
    assert abs(warped - base) < 1e-6 * (1 + abs(base))


def test_kks_degenerate_level_warns():
    sphere = OrbitPoint2Sphere((0.5, 0.5, -1.0), (0, 1))
    with pytest.warns(RuntimeWarning):
        val = kks_sphere_integral(sphere)
    assert val == 0.0


def test_dh_linearity_su2():
    rep = dh_linearity_fit("su2", [1.0, 2.0, 3.0], n_theta=32, n_phi=48)
    assert rep["ok"]
    assert rep["max_residual"] < 1e-8


def test_dh_degenerate_levels_raise():
    with pytest.raises(DegenerateFitError):
        dh_linearity_fit("su2", [1.0, 1.0], n_theta=16, n_phi=24)
