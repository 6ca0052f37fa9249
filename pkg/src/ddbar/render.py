"""Text tables and JSON for cohomology reports."""

from __future__ import annotations

import json

from .cohomology import CohomologyReport
from .exterior import render_form
from .manifest import parse_expression

REPORT_KEYS = ("name", "n", "field_order", "hodge", "bott_chern", "aeppli", "betti",
               "verdict_numeric", "verdict_direct", "frolicher_e1")


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def report_to_dict(report: CohomologyReport) -> dict:
    out = {
        "name": report.name,
        "n": report.n,
        "field_order": report.field_order,
        "hodge": [list(r) for r in report.hodge],
        "bott_chern": [list(r) for r in report.bc],
        "aeppli": [list(r) for r in report.aeppli],
        "betti": list(report.betti),
        "verdict_numeric": report.verdict_numeric,
        "verdict_direct": report.verdict_direct,
        "frolicher_e1": report.frolicher_degenerate,
    }
    if report.representatives is not None:
        out["representatives"] = {
            f"{p},{q}": [render_form(f) for f in forms]
            for (p, q), forms in sorted(report.representatives.items())
        }
    return out


def report_from_dict(data: dict) -> CohomologyReport:
    """Inverse of :func:`report_to_dict`.

    The conjugate-Dolbeault grid is not serialized: the real structure forces
    it to be the transpose of the Dolbeault grid.
    """
    missing = [k for k in REPORT_KEYS if k not in data]
    if missing:
        raise ValueError(f"report JSON lacks keys {missing}")
    n, order = data["n"], data["field_order"]
    hodge = [list(r) for r in data["hodge"]]
    reps = None
    if "representatives" in data:
        reps = {}
        for key, forms in data["representatives"].items():
            p, q = (int(x) for x in key.split(","))
            reps[(p, q)] = [parse_expression(s, n, order) for s in forms]
    return CohomologyReport(
        name=data["name"], n=n, field_order=order,
        hodge=hodge,
        hodge_conj=[[hodge[q][p] for q in range(n + 1)] for p in range(n + 1)],
        bc=[list(r) for r in data["bott_chern"]],
        aeppli=[list(r) for r in data["aeppli"]],
        betti=list(data["betti"]),
        verdict_numeric=data["verdict_numeric"],
        verdict_direct=data["verdict_direct"],
        frolicher_degenerate=data["frolicher_e1"],
        representatives=reps,
    )


def report_to_json(report: CohomologyReport, extra: dict | None = None) -> str:
    data = report_to_dict(report)
    if extra:
        data.update(extra)
    return json.dumps(data, indent=2)


def report_from_json(text: str) -> CohomologyReport:
    return report_from_dict(json.loads(text))


def report_table(report: CohomologyReport) -> str:
    n = report.n
    lines = [f"{report.name}  (n = {n}, field Q(zeta_{report.field_order}))", ""]
    lines.append(f"{'':10}{'dbar':>6}{'del':>6}{'BC':>6}{'A':>6}")
    for p in range(n + 1):
        for q in range(n + 1):
            lines.append(f"{f'H^{{{p},{q}}}':10}{report.hodge[p][q]:>6}{report.hodge_conj[p][q]:>6}"
                         f"{report.bc[p][q]:>6}{report.aeppli[p][q]:>6}")
    lines.append("")
    lines.append("betti: " + " ".join(str(b) for b in report.betti))
    lines.append(f"ddbar: {_verdict(report.verdict_numeric)} (numeric), {_verdict(report.verdict_direct)} (direct)")
    lines.append("frolicher E1: " + ("degenerate" if report.frolicher_degenerate else "not degenerate"))
    if report.representatives is not None:
        lines.append("")
        lines.append("Dolbeault representatives:")
        for (p, q), forms in sorted(report.representatives.items()):
            if forms:
                lines.append(f"  H^{{{p},{q}}}: " + ", ".join(render_form(f) for f in forms))
    return "\n".join(lines)


def parse_table(text: str) -> dict:
    """Numeric entries of :func:`report_table` output, for cross-checking emitters."""
    grids = {"hodge": {}, "hodge_conj": {}, "bott_chern": {}, "aeppli": {}}
    out: dict = {"betti": None}
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("H^{") and "}:" not in s:
            label, *vals = s.split()
            p, q = (int(x) for x in label[3:-1].split(","))
            for key, v in zip(grids, vals):
                grids[key][(p, q)] = int(v)
        elif s.startswith("betti:"):
            out["betti"] = [int(x) for x in s.split()[1:]]
        elif s.startswith("ddbar:"):
            out["verdict_numeric"] = "PASS (numeric)" in s
            out["verdict_direct"] = "PASS (direct)" in s
        elif s.startswith("frolicher E1:"):
            out["frolicher_e1"] = s.endswith(" degenerate") and "not" not in s
    out.update(grids)
    return out
