"""Command line entry point.

Exit status: 0 on success, 1 on a computation error, 2 on a parse error.
"""

from __future__ import annotations

import argparse
import sys

from . import diamond
from .catalog import load_builtin
from .errors import DdbarError, ParseError
from .manifest import parse_manifest
from .pipeline import cohomology_of, quotient_of
from .render import report_table, report_to_json


def _read_manifest(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DdbarError(f"cannot read manifest {path}: {exc.strerror}") from None
    return parse_manifest(text)


def _read_diamond(path):
    try:
        return diamond.read_diamond(path)
    except OSError as exc:
        raise DdbarError(f"cannot read diamond file {path}: {exc.strerror}") from None


def _emit_report(args, report, out, extra=None, extra_text=()):
    if args.export_diamond:
        diamond.write_diamond(args.export_diamond, report.to_diamond())
    if args.json:
        print(report_to_json(report, extra), file=out)
        return
    for line in extra_text:
        print(line, file=out)
    print(report_table(report), file=out)


def _run_cohomology(manifest, args, out):
    _emit_report(args, cohomology_of(manifest, representatives=args.reps), out)


def _run_quotient(manifest, action, args, out):
    res = quotient_of(manifest, action, representatives=args.reps)
    sub = res.sub
    dims = [[sub.dim(p, q) for q in range(sub.n + 1)] for p in range(sub.n + 1)]
    extra = {"quotient": {
        "action": action,
        "group_order": res.group.order,
        "invariant_dims": dims,
        "differentials": res.differentials,
    }}
    text = [f"quotient of {manifest.name} by <{action}>, group order {res.group.order}",
            "invariant dimensions (row p, column q):"]
    text += ["  " + " ".join(f"{d:>3}" for d in row) for row in dims]
    text.append("nonzero differentials on the invariant basis:")
    text += [f"  {line}" for line in res.differentials] or ["  (none)"]
    text.append("")
    _emit_report(args, res.report, out, extra, text)


def cmd_cohomology(args, out):
    _run_cohomology(_read_manifest(args.manifest), args, out)


def cmd_quotient(args, out):
    _run_quotient(_read_manifest(args.manifest), args.action, args, out)


def cmd_builtin(args, out):
    manifest, action = load_builtin(args.name)
    if action is None:
        _run_cohomology(manifest, args, out)
    else:
        _run_quotient(manifest, action, args, out)


def _emit_diamond(pair, out):
    out.write(diamond.format_diamond(pair))
    ok = diamond.check_hodge_structure(*pair)
    print(f"# hodge structure: {'yes' if ok else 'no'}", file=out)


def cmd_blowup(args, out):
    result = diamond.blowup_diamond(_read_diamond(args.ambient), _read_diamond(args.center), args.codim)
    _emit_diamond(result, out)


def cmd_projectivize(args, out):
    _emit_diamond(diamond.projectivize(_read_diamond(args.base), args.rank), out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddbar", description="Exact Dolbeault, Bott-Chern and Aeppli cohomology of finite CDBA models.")
    sub = parser.add_subparsers(dest="command", required=True)

    def report_opts(p):
        p.add_argument("--json", action="store_true", help="emit the report as JSON")
        p.add_argument("--reps", action="store_true", help="include Dolbeault representatives")
        p.add_argument("--export-diamond", metavar="PATH", help="also write the Hodge diamond file")

    p = sub.add_parser("cohomology", help="cohomology report of a manifest")
    p.add_argument("manifest")
    report_opts(p)
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("quotient", help="cohomology of the invariant subcomplex of a group action")
    p.add_argument("manifest")
    p.add_argument("--action", required=True, help="name of an action declared in the manifest")
    report_opts(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("builtin", help="run on a catalog example")
    p.add_argument("name")
    report_opts(p)
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("blowup", help="Hodge diamond of a blow-up")
    p.add_argument("--ambient", required=True, metavar="FILE")
    p.add_argument("--center", required=True, metavar="FILE")
    p.add_argument("--codim", required=True, type=int)
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("projectivize", help="Hodge diamond of a projectivized bundle")
    p.add_argument("--base", required=True, metavar="FILE")
    p.add_argument("--rank", required=True, type=int)
    p.set_defaults(func=cmd_projectivize)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except ParseError as exc:
        print(f"ddbar: error[{exc.code}]: {exc}", file=err)
        return 2
    except DdbarError as exc:
        print(f"ddbar: error[{exc.code}]: {exc}", file=err)
        return 1
    return 0


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
