"""Command-line surface: every check suite, curve printer, and table
generator behind one `swcurves` entry point.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or domain error.
Output is human text by default or canonical JSON with `--format json`;
`--out DIR` additionally writes CSV tables and a PNG figure.
"""

from __future__ import annotations

import argparse
import random
import re
import sys

import numpy as np
import sympy

from .weierstrass import EllipticCurveModel, GENERIC_CURVE, xk_basis
from .su_adjoint import (NoDistinguishedSolutionError, branch_residues,
                         degeneration_check_su2, pn_closed, pn_solve,
                         spectral_family)
from .numerics import curve_from_nome, monodromy, gamma2_membership, sw1_periods
from . import toda
from .vacua import all_vacua, count_index_subgroups, su2_vacua, node_count
from .symplectic import (aks_bracket, dh_linearity_fit,
                         random_tridiagonal_point)
from .report import (json_bytes, make_report, poly_str, render_text,
                     write_artifacts)
from .suite import run_battery


class UsageError(Exception):
    pass


_NEGATIVE_VALUE = re.compile(r"^-[0-9.]")


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"cannot parse complex number {text!r}") from exc


def _curve_from_args(args):
    b = getattr(args, "b", None)
    c = getattr(args, "c", None)
    if b is None and c is None:
        return GENERIC_CURVE
    bb = _complex(b) if b is not None else 0.0
    cc = _complex(c) if c is not None else 0.0
    return EllipticCurveModel(bb, cc)


def _check(name, ok, residual=None, tolerance=None, **details):
    return {"name": name, "status": "pass" if ok else "fail",
            "residual": residual, "tolerance": tolerance,
            "details": details}


# -- subcommand handlers; each returns (results, checks) ---------------------


def cmd_xk(args):
    curve = _curve_from_args(args)
    elem = xk_basis(curve, args.k)
    return {"k": args.k, "xk": poly_str(elem.expr)}, []


def cmd_pn(args):
    coeffs = pn_closed(args.n)
    t = sympy.Symbol("t")
    expr = sum(c.expr * t ** (args.n - k) for k, c in enumerate(coeffs))
    results = {"n": args.n, "pn": poly_str(expr)}
    checks = []
    if args.verify:
        try:
            solved, dim = pn_solve(args.n)
            agree = all(a == b for a, b in zip(coeffs, solved))
            results["solution_space_dimension"] = dim
            checks.append(_check("closed_form_equals_linear_solve",
                                 agree and dim == args.n - 1,
                                 tolerance="exact"))
        except NoDistinguishedSolutionError as exc:
            results["linear_solve"] = str(exc)
            checks.append(_check("closed_form_equals_linear_solve", False,
                                 tolerance="exact", reason=str(exc)))
    return results, checks


def cmd_curve_su(args):
    u = [_complex(v) for v in args.u] if args.u else None
    fam = spectral_family(args.n, GENERIC_CURVE, u=u)
    return {"n": args.n,
            "equation": poly_str(fam.equation()),
            "parameters": [str(p) for p in fam.parameters]}, []


def cmd_residues(args):
    data = curve_from_nome(_complex(args.q))["data"]
    u = [_complex(v) for v in args.u]
    # residues are invariant under the weighted rescaling x -> lam^2 x,
    # y -> lam^3 y, t -> lam t; normalize the curve to moderate size
    lam = max(abs(data.b) ** 0.25, abs(data.c) ** (1 / 6), 1.0)
    curve = EllipticCurveModel(data.b / lam**4, data.c / lam**6)
    u = [v / lam ** (args.n - ell) for ell, v in enumerate(u)]
    rep = branch_residues(args.n, u, curve)
    results = {"n": args.n, "u": u,
               "residues": rep.residues,
               "target": rep.target,
               "leading_coefficients": rep.leading,
               "q_factored": str(rep.q_factored)}
    checks = [_check("residue_multiset", rep.passed,
                     residual=rep.max_error, tolerance=1e-8)]
    return results, checks


def cmd_sw1_periods(args):
    frame = sw1_periods(_complex(args.u))
    results = {"u": frame.u, "a": frame.a, "a_dual": frame.a_dual,
               "tau": frame.tau, "cycles": frame.cycles}
    checks = [_check("im_tau_positive", frame.tau.imag > 0,
                     residual=-min(frame.tau.imag, 0.0), tolerance=0.0)]
    return results, checks


def cmd_sw1_monodromy(args):
    m = monodromy(args.loop)
    g2 = gamma2_membership(m.matrix)
    results = {"loop": args.loop, "matrix": m.matrix.tolist(),
               "gamma2": g2}
    checks = [_check("integral_matrix", m.residual < 1e-6,
                     residual=m.residual, tolerance=1e-6),
              _check("gamma2_membership", g2)]
    return results, checks


def cmd_toda_charpoly(args):
    cp = toda.toda_charpoly(args.type, args.rank)
    results = {"type": cp.type, "rank": cp.rank,
               "epsilon": cp.epsilon,
               "zscale": str(cp.zscale),
               "mu": poly_str(cp.mu),
               "p": poly_str(cp.p),
               "hamiltonians": [poly_str(h) for h in cp.hamiltonians]}
    checks = [_check("charpoly_shape", True, tolerance="exact")]
    if cp.type == "A":
        checks.append(_check("matches_family",
                             toda.charpoly_matches_family("A", args.rank),
                             tolerance="exact"))
    return results, checks


def cmd_toda_family(args):
    fam = toda.toda_family(args.type, args.rank, dual=args.dual)
    return {"type": args.type, "rank": args.rank, "dual": args.dual,
            "equation": poly_str(fam.equation),
            "variables": [str(v) for v in fam.variables],
            "parameters": [str(p) for p in fam.parameters],
            "designated_model": fam.designated_model,
            "notes": fam.notes}, []


def cmd_toda_verify(args):
    rep = toda.substitution_identities(args.type, args.rank)
    checks = [_check(f"substitution:{c['name']}", c["ok"], tolerance="exact")
              for c in rep["checks"]]
    return {"type": rep["type"], "rank": rep["rank"],
            "identities": [c["name"] for c in rep["checks"]]}, checks


def cmd_genus(args):
    if args.model == "all":
        gt = toda.genus_table(max_rank=args.max_rank)
        rows = [{k: r[k] for k in ("family", "rank", "genus", "expected")}
                for r in gt["rows"]]
        checks = [_check("genus_table", gt["ok"], tolerance="exact")]
        return {"rows": rows}, checks
    raise UsageError("genus: only --model all is supported")


def cmd_vacua(args):
    data = curve_from_nome(_complex(args.q))["data"]
    curve = EllipticCurveModel(data.b, data.c)
    if args.n == 2:
        roots = su2_vacua(curve)
        counts = [node_count(2, [r], curve)["nodes"] for r in roots]
        results = {"n": 2,
                   "points": [{"u": [r], "nodes": c}
                              for r, c in zip(roots, counts)]}
        checks = [_check("vacuum_count", len(roots) == 3),
                  _check("one_node_each", all(c == 1 for c in counts))]
        return results, checks
    rep = all_vacua(data, 3)
    results = {"n": 3,
               "points": [{"u": list(p.u), "nodes": p.nodes,
                           "subgroup": [p.subgroup.d1, p.subgroup.k,
                                        p.subgroup.d2],
                           "fit_residual": p.fit_residual,
                           "normalized_genus": p.normalized_genus}
                          for p in rep["points"]],
               "min_separation": rep["min_separation"]}
    checks = [_check("four_distinct_vacua",
                     rep["distinct"] and len(rep["points"]) == 4),
              _check("two_nodes_each",
                     all(p.nodes == 2 for p in rep["points"])),
              _check("genus_one_normalization",
                     all(p.normalized_genus == 1 for p in rep["points"]))]
    return results, checks


def cmd_subgroups(args):
    count, classes = count_index_subgroups(args.n)
    sigma = sum(d for d in range(1, args.n + 1) if args.n % d == 0)
    results = {"n": args.n, "count": count,
               "divisor_sum": sigma,
               "classes": [{"d1": h.d1, "k": h.k, "d2": h.d2}
                           for h in classes]}
    checks = [_check("count_equals_divisor_sum", count == sigma)]
    return results, checks


def cmd_aks(args):
    rng = random.Random(args.seed)
    nonzero = []
    for _ in range(args.samples):
        pt = random_tridiagonal_point(args.n, rng)
        for k1 in range(2, args.n + 2):
            for k2 in range(k1 + 1, args.n + 2):
                v = aks_bracket(args.n, (k1, k2), pt)
                if v != 0:
                    nonzero.append((k1, k2, str(v)))
    ctrl = aks_bracket(args.n, (2, ("entry", 0, 0)),
                       random_tridiagonal_point(args.n, rng))
    results = {"n": args.n, "samples": args.samples,
               "negative_control": str(ctrl)}
    checks = [_check("bracket_identically_zero", not nonzero,
                     tolerance="exact (0)", nonzero=nonzero),
              _check("negative_control_nonzero", ctrl != 0)]
    return results, checks


def cmd_dh(args):
    levels = []
    for tok in args.levels:
        if "," in tok:
            levels.append(tuple(float(v) for v in tok.split(",")))
        else:
            levels.append(float(tok))
    rep = dh_linearity_fit(args.algebra, levels)
    results = {"algebra": args.algebra,
               "levels": [list(a) for a in rep["levels"]],
               "cycles": rep["cycles"],
               "max_residual": rep["max_residual"]}
    checks = [_check("linearity_fit", rep["ok"],
                     residual=rep["max_residual"], tolerance=1e-8)]
    return results, checks


def cmd_degenerate(args):
    qs = [float(q) for q in args.qs]
    rep = degeneration_check_su2(qs)
    results = {"entries": rep["entries"],
               "loglog_slope": rep["loglog_slope"],
               "residual_monotone_decreasing":
                   rep["residual_monotone_decreasing"]}
    checks = [
        _check("residual_monotone",
               bool(rep["residual_monotone_decreasing"])),
        _check("lambda4_linear_in_nome",
               rep["loglog_slope"] is not None
               and abs(rep["loglog_slope"] - 1.0) < 0.05,
               residual=abs(rep["loglog_slope"] - 1.0)
               if rep["loglog_slope"] is not None else None,
               tolerance=0.05),
    ]
    return results, checks


def cmd_suite(args):
    rep = run_battery(seed=args.seed)
    results = {"ok": rep["ok"]}
    return results, rep["checks"]


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="swcurves",
        description="Spectral curves of Seiberg-Witten integrable systems: "
                    "exact identities, period monodromy, Toda families, "
                    "vacua, and the AKS/DH battery.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--out", metavar="DIR",
                    help="also write CSV tables and a PNG figure to DIR")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for every randomized sweep (default 0)")
    # the same flags are accepted after the subcommand as well
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"),
                        default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="DIR", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("xk", help="pole-order basis element x_k", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b")
    p.add_argument("--c")
    p.set_defaults(fn=cmd_xk)

    p = sub.add_parser("pn", help="distinguished polynomial p_n", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true",
                   help="compare against the linear-solve oracle")
    p.set_defaults(fn=cmd_pn)

    p = sub.add_parser("curve", help="spectral curve families", parents=[common])
    ssub = p.add_subparsers(dest="kind", required=True)
    q = ssub.add_parser("su", help="SU(n) adjoint family over E", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--u", nargs="*", default=None,
                   help="numeric parameters u0..u(n-2); omit for symbolic")
    q.set_defaults(fn=cmd_curve_su)

    p = sub.add_parser("residues", help="branch residues over infinity", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", nargs="+", required=True)
    p.add_argument("--q", required=True, help="nome of the base curve")
    p.set_defaults(fn=cmd_residues)

    p = sub.add_parser("sw1", help="rank-1 Seiberg-Witten periods", parents=[common])
    ssub = p.add_subparsers(dest="kind", required=True)
    q = ssub.add_parser("periods", parents=[common])
    q.add_argument("--u", required=True)
    q.set_defaults(fn=cmd_sw1_periods)
    q = ssub.add_parser("monodromy", parents=[common])
    q.add_argument("--loop", type=str.strip, choices=("inf", "+1", "-1"),
                   required=True)
    q.set_defaults(fn=cmd_sw1_monodromy)

    p = sub.add_parser("toda", help="periodic Toda curves", parents=[common])
    ssub = p.add_subparsers(dest="kind", required=True)
    q = ssub.add_parser("charpoly", parents=[common])
    q.add_argument("--type", choices=tuple("ABCD"), required=True)
    q.add_argument("--rank", type=int, required=True)
    q.set_defaults(fn=cmd_toda_charpoly)
    q = ssub.add_parser("family", parents=[common])
    q.add_argument("--type", required=True)
    q.add_argument("--rank", type=int, required=True)
    q.add_argument("--dual", action="store_true")
    q.set_defaults(fn=cmd_toda_family)
    q = ssub.add_parser("verify-substitutions", parents=[common])
    q.add_argument("--type", required=True)
    q.add_argument("--rank", type=int, required=True)
    q.set_defaults(fn=cmd_toda_verify)

    p = sub.add_parser("genus", help="genus table of the Toda curves", parents=[common])
    p.add_argument("--model", default="all")
    p.add_argument("--max-rank", type=int, default=4)
    p.set_defaults(fn=cmd_genus)

    p = sub.add_parser("vacua", help="massive vacua over a base nome", parents=[common])
    p.add_argument("--n", type=int, choices=(2, 3), required=True)
    p.add_argument("--q", required=True)
    p.set_defaults(fn=cmd_vacua)

    p = sub.add_parser("subgroups", help="index-n subgroup classes", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_subgroups)

    p = sub.add_parser("aks", help="exact AKS bracket sweep", parents=[common])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=25)
    p.set_defaults(fn=cmd_aks)

    p = sub.add_parser("dh", help="DH linearity of KKS sphere integrals", parents=[common])
    p.add_argument("--algebra", choices=("su2", "su3"), required=True)
    p.add_argument("--levels", nargs="+", required=True,
                   help="scalars for su2, comma-separated triples for su3")
    p.set_defaults(fn=cmd_dh)

    p = sub.add_parser("degenerate", help="empirical degeneration check", parents=[common])
    ssub = p.add_subparsers(dest="kind", required=True)
    q = ssub.add_parser("su2", parents=[common])
    q.add_argument("--qs", nargs="+", required=True)
    q.set_defaults(fn=cmd_degenerate)

    p = sub.add_parser("suite", help="full verification battery", parents=[common])
    ssub = p.add_subparsers(dest="kind", required=True)
    q = ssub.add_parser("all", parents=[common])
    q.set_defaults(fn=cmd_suite)

    return ap


def _command_name(args) -> str:
    name = args.command
    kind = getattr(args, "kind", None)
    return f"{name} {kind}" if kind else name


def run(argv) -> int:
    ap = build_parser()
    # numeric values may start with '-'; hide them from the option scanner
    # with a leading space, stripped again by the numeric parsers
    argv = [f" {tok}" if _NEGATIVE_VALUE.match(tok) else tok for tok in argv]
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    inputs = {k: v for k, v in sorted(vars(args).items())
              if k not in ("fn", "format", "out", "command", "kind")
              and v is not None}
    try:
        results, checks = args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, toda.ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = make_report(_command_name(args), inputs, results, checks,
                         args.seed)
    if args.format == "json":
        sys.stdout.buffer.write(json_bytes(report))
        sys.stdout.flush()
    else:
        sys.stdout.write(render_text(report))
    if args.out:
        written = write_artifacts(report, args.out)
        if args.format != "json":
            for name in written:
                print(f"wrote {args.out}/{name}")
    return 0 if all(c["status"] == "pass" for c in report["checks"]) else 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
