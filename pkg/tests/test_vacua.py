"""Massive vacua: subgroup counting, nodal degenerations, covers."""

from sympy.functions.combinatorial.numbers import divisor_sigma

from swcurves import (
    EllipticCurveModel, count_index_subgroups, curve_from_nome, node_count,
    su2_vacua,
)


def _scaled_curve(q):
    out = curve_from_nome(q)
    b, c = out["b"], out["c"]
    lam = max(abs(b) ** 0.25, abs(c) ** (1 / 6), 1.0)
    return EllipticCurveModel(b / lam**4, c / lam**6)


def test_subgroup_count_matches_divisor_sum():
    # independent oracle: sigma(n) from sympy's number theory module
    for n in range(1, 13):
        count, classes = count_index_subgroups(n)
        assert count == len(classes) == divisor_sigma(n)


def test_subgroup_classes_are_distinct_hnf():
    _, classes = count_index_subgroups(6)
    seen = {(H.d1, H.k, H.d2) for H in classes}
    assert len(seen) == len(classes)
    for H in classes:
        assert H.d1 * H.d2 == 6
        assert 0 <= H.k < H.d1


def test_su2_three_vacua():
    curve = _scaled_curve(0.04 + 0.03j)
    vac = su2_vacua(curve)
    assert len(vac) == 3
    # each vacuum u is a root of the cubic, making (x - u) rhs(x) a quartic
    # with a double root
    roots = sorted(curve.roots(), key=lambda z: (z.real, z.imag))
    us = sorted(vac, key=lambda z: (z.real, z.imag))
    for r, u in zip(roots, us):
        assert abs(r - u) < 1e-6 * (1 + abs(r))


def test_node_count_smooth_point():
    curve = _scaled_curve(0.04 + 0.03j)
    rep = node_count(3, [0.11 + 0.07j, -0.05 + 0.02j], curve)
    assert rep["nodes"] == 0


def test_node_count_su2_vacuum_has_one_node():
    curve = _scaled_curve(0.04 + 0.03j)
    u0 = curve.roots()[0]
    rep = node_count(2, [u0], curve)
    assert rep["nodes"] == 1
