"""Deterministic report plumbing for the command-line surface.

Every report is a plain dict {command, inputs, results, checks, seed,
version}.  Serialization rules, fixed so that identical inputs give
byte-identical JSON:

* polynomials print with variables in the order t, x, y, z, w, s, v, xi and
  then parameters alphabetically, terms in descending lexicographic order;
* exact rationals become "p/q" strings, complex numbers [re, im] pairs;
* collections keep construction order, never set iteration order.

`write_artifacts` optionally renders tabular results to CSV and a figure per
command to PNG under a target directory.
"""

from __future__ import annotations

import csv
import json
import os
from fractions import Fraction

import numpy as np
import sympy


__all__ = [
    "VERSION", "VAR_ORDER",
    "poly_str", "to_jsonable", "json_bytes", "render_text",
    "make_report", "write_artifacts",
]

VERSION = "0.1.0"
VAR_ORDER = ("t", "x", "y", "z", "w", "s", "v", "xi")


def _ordered_gens(expr):
    names = {s.name: s for s in expr.free_symbols}
    head = [names.pop(v) for v in VAR_ORDER if v in names]
    tail = [names[k] for k in sorted(names)]
    return head + tail


def _coeff_str(c):
    c = sympy.nsimplify(c, rational=False) if c.free_symbols else c
    return sympy.sstr(c, order="lex")


def poly_str(expr) -> str:
    """Canonical string form of a polynomial expression."""
    if hasattr(expr, "expr"):  # FunctionFieldElement
        expr = expr.expr
    expr = sympy.expand(sympy.sympify(expr))
    gens = _ordered_gens(expr)
    if not gens:
        return sympy.sstr(expr)
    try:
        poly = sympy.Poly(expr, *gens)
    except sympy.PolynomialError:
        # Laurent expressions (for instance z + mu/z) fall back to the
        # deterministic sympy printer
        return sympy.sstr(expr, order="lex")
    pieces = []
    for monom, coeff in poly.terms():
        factors = []
        for g, e in zip(gens, monom):
            if e == 1:
                factors.append(g.name)
            elif e > 1:
                factors.append(f"{g.name}^{e}")
        mono = "*".join(factors)
        cs = _coeff_str(coeff)
        if mono:
            if cs == "1":
                piece = mono
            elif cs == "-1":
                piece = f"-{mono}"
            else:
                if any(op in cs for op in (" + ", " - ")) or cs.startswith("-") and " " in cs:
                    cs = f"({cs})"
                piece = f"{cs}*{mono}"
        else:
            piece = cs
        pieces.append(piece)
    if not pieces:
        return "0"
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _num(v):
    if isinstance(v, complex):
        return [float(v.real), float(v.imag)]
    return float(v)


def to_jsonable(obj):
    """Recursive conversion to JSON-safe values under the fixed conventions."""
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, complex):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 \
            else str(obj.numerator)
    if isinstance(obj, sympy.Integer):
        return int(obj)
    if isinstance(obj, sympy.Rational):
        return f"{obj.p}/{obj.q}"
    if isinstance(obj, sympy.Float):
        return float(obj)
    if isinstance(obj, sympy.Basic):
        if obj.free_symbols:
            return poly_str(obj)
        c = complex(obj)
        return _num(c) if c.imag else float(c.real)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "__dataclass_fields__"):
        return {k: to_jsonable(getattr(obj, k))
                for k in obj.__dataclass_fields__}
    return str(obj)


def make_report(command: str, inputs: dict, results: dict, checks: list,
                seed: int) -> dict:
    return {
        "command": command,
        "inputs": to_jsonable(inputs),
        "results": to_jsonable(results),
        "checks": to_jsonable(checks),
        "seed": int(seed),
        "version": VERSION,
    }


def json_bytes(report: dict) -> bytes:
    return (json.dumps(report, indent=2, ensure_ascii=True) + "\n").encode()


def render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    if report["inputs"]:
        lines.append("inputs:")
        for k, v in report["inputs"].items():
            lines.append(f"  {k} = {v}")
    lines.append("results:")
    lines.extend(_render_value(report["results"], "  "))
    if report["checks"]:
        lines.append("checks:")
        for ch in report["checks"]:
            mark = {"pass": "PASS", "fail": "FAIL", "skip": "SKIP"}[ch["status"]]
            extra = ""
            if ch.get("residual") is not None:
                extra += f"  residual={ch['residual']:.3e}"
            if ch.get("tolerance") is not None:
                extra += f"  tol={ch['tolerance']}"
            lines.append(f"  [{mark}] {ch['name']}{extra}")
    lines.append(f"seed: {report['seed']}  version: {report['version']}")
    return "\n".join(lines) + "\n"


def _render_value(value, indent):
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                out.append(f"{indent}{k}:")
                out.extend(_render_value(v, indent + "  "))
            else:
                out.append(f"{indent}{k} = {v}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v and not _is_flat(v):
                out.append(f"{indent}-")
                out.extend(_render_value(v, indent + "  "))
            else:
                out.append(f"{indent}- {v}")
    else:
        out.append(f"{indent}{value}")
    return out


def _is_flat(v):
    if isinstance(v, list):
        return all(not isinstance(x, (dict, list)) for x in v)
    return False


# ---------------------------------------------------------------------------
# artifacts


def write_artifacts(report: dict, outdir: str) -> list:
    """CSV tables for list-of-dict results plus a PNG figure per command.

    Returns the list of files written (relative names).
    """
    os.makedirs(outdir, exist_ok=True)
    written = []
    slug = report["command"].replace(" ", "_")
    scalar = []
    for key, value in report["results"].items():
        rows = _as_rows(value)
        if rows is None:
            scalar.append({"key": key, "value": _csv_cell(value)})
            continue
        path = os.path.join(outdir, f"{slug}_{key}.csv")
        _write_csv(path, rows)
        written.append(os.path.basename(path))
    if scalar:
        path = os.path.join(outdir, f"{slug}_results.csv")
        _write_csv(path, scalar)
        written.append(os.path.basename(path))
    if report["checks"]:
        path = os.path.join(outdir, f"{slug}_checks.csv")
        _write_csv(path, [{"name": c["name"], "status": c["status"],
                           "residual": c.get("residual"),
                           "tolerance": c.get("tolerance")}
                          for c in report["checks"]])
        written.append(os.path.basename(path))
    fig = _figure_for(report)
    if fig is not None:
        path = os.path.join(outdir, f"{slug}.png")
        fig.savefig(path, dpi=120)
        _close(fig)
        written.append(os.path.basename(path))
    return written


def _as_rows(value):
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        return value
    return None


def _write_csv(path, rows):
    keys = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=keys)
        w.writeheader()
        for r in rows:
            w.writerow({k: _csv_cell(r.get(k)) for k in keys})


def _csv_cell(v):
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return f"{v[0]}{v[1]:+}j"
    if isinstance(v, (dict, list)):
        return json.dumps(v)
    return v


def _mpl():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _close(fig):
    import matplotlib.pyplot as plt
    plt.close(fig)


def _figure_for(report):
    cmd = report["command"]
    res = report["results"]
    if cmd == "degenerate su2" and res.get("entries"):
        plt = _mpl()
        qs = [abs(complex(*e["nome"])) if isinstance(e["nome"], list)
              else abs(e["nome"]) for e in res["entries"]]
        rr = [e["residual"] for e in res["entries"]]
        l4 = [abs(complex(*e["lambda4"])) if isinstance(e["lambda4"], list)
              else abs(e["lambda4"]) for e in res["entries"]]
        fig, ax = plt.subplots(1, 2, figsize=(9, 4))
        ax[0].loglog(qs, rr, "o-")
        ax[0].set_xlabel("|nome|")
        ax[0].set_ylabel("fit residual")
        ax[1].loglog(qs, l4, "o-")
        ax[1].set_xlabel("|nome|")
        ax[1].set_ylabel("|Lambda^4|")
        fig.tight_layout()
        return fig
    if cmd == "vacua" and res.get("points"):
        plt = _mpl()
        fig, ax = plt.subplots(figsize=(5, 5))
        for i, p in enumerate(res["points"]):
            for comp in p["u"]:
                re, im = (comp if isinstance(comp, list) else (comp, 0.0))
                ax.plot(re, im, "o", label=f"vacuum {i}" if comp is p["u"][0] else None)
        ax.set_xlabel("Re u")
        ax.set_ylabel("Im u")
        ax.legend(fontsize=7)
        fig.tight_layout()
        return fig
    if cmd == "dh" and res.get("cycles"):
        plt = _mpl()
        fig, ax = plt.subplots(figsize=(6, 4))
        for cyc in res["cycles"]:
            ax.plot(cyc["integrals"], "o-", label=f"root {tuple(cyc['root'])}")
        ax.set_xlabel("level index")
        ax.set_ylabel("KKS integral")
        ax.legend(fontsize=8)
        fig.tight_layout()
        return fig
    if report["checks"]:
        plt = _mpl()
        names = [c["name"] for c in report["checks"]]
        vals = [1 if c["status"] == "pass" else 0 for c in report["checks"]]
        colors = ["tab:green" if v else "tab:red" for v in vals]
        fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(names)), 3.5))
        ax.bar(range(len(names)), vals, color=colors)
        ax.set_xticks(range(len(names)))
        ax.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
        ax.set_yticks([0, 1])
        ax.set_yticklabels(["fail", "pass"])
        fig.tight_layout()
        return fig
    return None
