"""Periodic Toda curves: characteristic polynomials, substitutions, genus."""

import sympy

from swcurves import (
    ShapeError, charpoly_matches_family, genus_table, riemann_hurwitz,
    substitution_identities, toda_charpoly, toda_family,
    verify_all_substitutions,
)


def test_charpoly_shape_a_series():
    # dual route: symbolic Lax determinant vs the declared family shape
    for rank in (1, 2, 3):
        assert charpoly_matches_family("A", rank)


def test_charpoly_shape_d3():
    # type D carries the x^2 factor on the z-terms
    rep = toda_charpoly("D", 3)
    assert rep.epsilon == 2
    assert len(rep.hamiltonians) > 0


def test_charpoly_rejects_bad_type():
    try:
        toda_charpoly("E", 3)
    except (ShapeError, ValueError, KeyError):
        return
    raise AssertionError("expected a shape error")


def test_substitution_identities_c2():
    rep = substitution_identities("C", 2)
    assert rep["ok"]
    for ch in rep["checks"]:
        assert ch["ok"], ch["name"]


def test_all_substitutions_rank2():
    rep = verify_all_substitutions(2)
    assert rep["ok"]


def test_genus_table_small():
    rep = genus_table(max_rank=2)
    assert rep["ok"]
    for row in rep["rows"]:
        assert row["genus"] == row["expected"]


def test_riemann_hurwitz_values():
    # 2 - 2g = N(2 - 2g0) - sum(e_P - 1)
    assert riemann_hurwitz(2, 2) == 0
    assert riemann_hurwitz(2, 4) == 1
    assert riemann_hurwitz(2, 6) == 2
    assert riemann_hurwitz(3, 8) == 2


def test_family_shape_a2():
    # x^3 + u2 x + u3 + z + mu/z in the variables (z, x)
    fam = toda_family("A", 2)
    assert tuple(str(v) for v in fam.variables) == ("z", "x")
    z, x, u2, u3, mu = sympy.symbols("z x u2 u3 mu")
    target = x**3 + u2 * x + u3 + z + mu / z
    assert sympy.simplify(fam.equation - target) == 0
