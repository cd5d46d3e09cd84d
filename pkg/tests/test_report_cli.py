"""Report serialization conventions and the command-line surface."""

import json
import os
from fractions import Fraction

import sympy

from swcurves.cli import run
from swcurves.report import json_bytes, make_report, poly_str, to_jsonable


def test_to_jsonable_conventions():
    assert to_jsonable(Fraction(3, 4)) == "3/4"
    assert to_jsonable(Fraction(5, 1)) == "5"
    assert to_jsonable(sympy.Rational(-7, 2)) == "-7/2"
    assert to_jsonable(2 + 3j) == [2.0, 3.0]
    assert to_jsonable({"a": (1, 2)}) == {"a": [1, 2]}


def test_poly_str_variable_order():
    t, x, b = sympy.symbols("t x b")
    s = poly_str(x * t + b * t**2 + 1)
    # t-monomials lead, lex-descending, parameters trail inside each term
    assert s == "t^2*b + t*x + 1"


def test_json_bytes_stable():
    rep = make_report("demo", {"n": 2}, {"v": [1.5, Fraction(1, 3)]}, [], 0)
    assert json_bytes(rep) == json_bytes(make_report(
        "demo", {"n": 2}, {"v": [1.5, Fraction(1, 3)]}, [], 0))


def test_cli_xk_json(capsys):
    code = run(["xk", "--k", "7", "--format", "json"])
    assert code == 0
    out = capsys.readouterr().out
    rep = json.loads(out)
    assert rep["command"] == "xk"
    assert rep["version"] == "0.1.0"
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_cli_subgroups(capsys):
    code = run(["subgroups", "--n", "6", "--format", "json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["results"]["count"] == 12


def test_cli_negative_arguments(capsys):
    code = run(["sw1", "monodromy", "--loop", "-1", "--format", "json"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["inputs"]["loop"] == "-1"


def test_cli_usage_error_exit_2(capsys):
    assert run(["xk", "--k", "1"]) == 2
    assert run(["no-such-command"]) == 2


def test_cli_determinism(capsys):
    args = ["aks", "--n", "3", "--samples", "5", "--format", "json"]
    run(args)
    first = capsys.readouterr().out
    run(args)
    second = capsys.readouterr().out
    assert first == second and first


def test_cli_out_artifacts(tmp_path, capsys):
    outdir = tmp_path / "art"
    code = run(["aks", "--n", "2", "--samples", "3", "--out", str(outdir)])
    assert code == 0
    capsys.readouterr()
    files = os.listdir(outdir)
    assert any(f.endswith(".csv") for f in files)
    assert any(f.endswith(".png") for f in files)
    # scalar results of a figure-less command still produce a CSV
    outdir2 = tmp_path / "art2"
    assert run(["xk", "--k", "5", "--out", str(outdir2)]) == 0
    capsys.readouterr()
    assert "xk_results.csv" in os.listdir(outdir2)
