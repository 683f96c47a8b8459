"""Command-line front end.

Exit codes: 0 when everything verified, 1 on a mismatch, 2 on usage, parse or
evaluation errors.  JSON output is the stable interface; text is for humans.
"""

from __future__ import annotations

import argparse
import difflib
import json
import os
import sys
from typing import List, Optional

from . import identities as I
from . import partitions as P
from . import specdsl
from . import tables
from . import weights as W

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2

ORDER_ENV = "QPART_ORDER"
EXPAND_DEFAULT_ORDER = 10


class UsageError(Exception):
    pass


def _env_order() -> Optional[int]:
    raw = os.environ.get(ORDER_ENV)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{ORDER_ENV} must be a non-negative integer, got {raw!r}") from None
    if value < 0:
        raise UsageError(f"{ORDER_ENV} must be non-negative, got {value}")
    return value


def _order(args) -> Optional[int]:
    if args.order is not None:
        if args.order < 0:
            raise UsageError(f"--order must be non-negative, got {args.order}")
        return args.order
    return _env_order()


def _suggest(name: str, known) -> str:
    known = list(known)
    close = difflib.get_close_matches(name, known, n=5, cutoff=0.5)
    close = close or difflib.get_close_matches(name, known, n=5, cutoff=0.0)
    return f"; did you mean: {', '.join(close)}" if close else ""


def _dump(obj, out) -> None:
    json.dump(obj, out, indent=2, sort_keys=False)
    out.write("\n")


# --- verify ---------------------------------------------------------------


def _report_line(r: I.VerifyReport) -> str:
    line = f"{r.name:<32} order {r.order:>3}  {r.verdict:<8} {r.millis:9.1f} ms"
    if not r.ok:
        coeffs = ", ".join(f"{s.label} -> {s.coefficient_at_bad}" for s in r.sides)
        line += f"\n    first mismatch at q^{r.first_bad_exponent}: {coeffs}"
    return line


def cmd_verify(args, out) -> int:
    order = _order(args)
    if args.identity:
        reg = I.registry_by_name()
        if args.identity not in reg:
            raise UsageError(f"unknown identity {args.identity!r}" + _suggest(args.identity, reg))
        specs = [reg[args.identity]]
    elif args.file:
        try:
            specs = specdsl.load_file(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror or exc}") from None
        except specdsl.DslError as exc:
            raise UsageError(f"{args.file}:{exc}") from None
    else:
        specs = I.builtin_registry()
    try:
        reports = I.verify_all(order, parallel=args.parallel, specs=specs)
    except (I.SideEvaluationError, specdsl.DslEvalError) as exc:
        raise UsageError(f"evaluation failed: {exc}") from None
    if args.json:
        _dump([r.to_dict(timing=args.timing) for r in reports], out)
    else:
        for r in reports:
            out.write(_report_line(r) + "\n")
        bad = sum(1 for r in reports if not r.ok)
        out.write(f"{len(reports) - bad}/{len(reports)} OK\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH


# --- table ----------------------------------------------------------------


def _table_dict(t: tables.Table) -> dict:
    return {
        "table": t.number,
        "title": t.title,
        "n": t.n,
        "expected_total": t.expected_total,
        "ok": t.ok,
        "columns": [
            {
                "set": c.set_name,
                "weight": c.weight_name,
                "rows": [
                    {"partition": str(r.partition), "weight": r.weight, **({"note": r.note} if r.note else {})}
                    for r in c.rows
                ],
                "count": len(c.rows),
                "total": c.total,
                "notes": c.notes,
            }
            for c in t.columns
        ],
        "divergences": t.divergences(),
    }


def cmd_table(args, out) -> int:
    t = tables.regenerate(args.paper_table)
    if args.json:
        _dump(_table_dict(t), out)
        return EXIT_OK if t.ok else EXIT_MISMATCH
    out.write(f"Table {t.number}: {t.title}\n")
    footnotes: List[str] = []
    for c in t.columns:
        out.write(f"\n{c.set_name} weighted by {c.weight_name} ({len(c.rows)} partitions)\n")
        for r in c.rows:
            mark = ""
            if r.note:
                footnotes.append(f"{r.partition}: {r.note}")
                mark = f"  [{len(footnotes)}]"
            out.write(f"  {str(r.partition):<24} {r.weight:>4}{mark}\n")
        for p in c.extra_published:
            footnotes.append(f"{p}: published but not a member of {c.set_name}")
        out.write(f"  total {c.total}\n")
    if footnotes:
        out.write("\n")
        for k, note in enumerate(footnotes, 1):
            out.write(f"[{k}] {note}\n")
    out.write(f"\nexpected total {t.expected_total}: {'OK' if t.ok else 'DIVERGES'}\n")
    for d in t.divergences():
        out.write(f"  {d}\n")
    return EXIT_OK if t.ok else EXIT_MISMATCH


# --- expand ---------------------------------------------------------------


def cmd_expand(args, out) -> int:
    order = _order(args)
    if order is None:
        order = EXPAND_DEFAULT_ORDER
    try:
        node = specdsl.parse_expr(args.expr)
        s = specdsl.evaluate(node, order)
    except (specdsl.DslError, specdsl.DslEvalError) as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _dump({"expr": args.expr, "order": order, "coefficients": list(s.coeffs)}, out)
    else:
        out.write(" ".join(map(str, s.coeffs)) + "\n")
    return EXIT_OK


# --- enumerate ------------------------------------------------------------


def cmd_enumerate(args, out) -> int:
    try:
        pred = P.get_set(args.set)
    except KeyError:
        raise UsageError(f"unknown set {args.set!r}" + _suggest(args.set, P.SETS)) from None
    w = None
    if args.weight:
        try:
            w = W.get_weight(args.weight)
        except KeyError:
            raise UsageError(f"unknown weight {args.weight!r}" + _suggest(args.weight, W.WEIGHTS)) from None
    if args.n < 0:
        raise UsageError(f"--n must be non-negative, got {args.n}")
    rows = [(pi, w(pi) if w else 1) for pi in P.members(pred, args.n)]
    total = sum(v for _, v in rows)
    if args.json:
        doc = {
            "set": pred.key,
            "n": args.n,
            "weight": w.key if w else None,
            "rows": [{"partition": str(pi), **({"weight": v} if w else {})} for pi, v in rows],
            "count": len(rows),
            "total": total,
        }
        _dump(doc, out)
        return EXIT_OK
    for pi, v in rows:
        out.write(f"{str(pi):<28} {v}\n" if w else f"{pi}\n")
    out.write(f"count {len(rows)}\n")
    if w:
        out.write(f"total {total}\n")
    return EXIT_OK


# --- list -----------------------------------------------------------------


def cmd_list(args, out) -> int:
    specs = I.builtin_registry()
    if args.json:
        _dump(
            [
                {
                    "name": s.name,
                    "default_order": s.default_order,
                    "sides": [{"kind": side.kind, "label": side.label} for side in s.sides],
                    "notes": s.notes,
                }
                for s in specs
            ],
            out,
        )
        return EXIT_OK
    for s in specs:
        kinds = "/".join(side.kind for side in s.sides)
        out.write(f"{s.name:<32} order {s.default_order:>3}  {kinds}\n")
    return EXIT_OK


# --- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qpart", description="Verify weighted partition identities.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify builtin identities or an identity file")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--identity", metavar="NAME")
    which.add_argument("--file", metavar="PATH")
    which.add_argument("--all", action="store_true")
    v.add_argument("--order", type=int, help=f"truncation order (default: per identity, or ${ORDER_ENV})")
    v.add_argument("--json", action="store_true")
    v.add_argument("--timing", action="store_true", help="include wall-clock millis in JSON (otherwise 0)")
    v.add_argument("--parallel", action="store_true")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="regenerate a worked example table")
    t.add_argument("--paper-table", type=int, required=True, choices=sorted(tables.PUBLISHED))
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_table)

    e = sub.add_parser("expand", help="expand an expression as a power series")
    e.add_argument("--expr", required=True)
    e.add_argument("--order", type=int)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_expand)

    n = sub.add_parser("enumerate", help="list the members of a partition family")
    n.add_argument("--set", required=True)
    n.add_argument("--n", type=int, required=True)
    n.add_argument("--weight")
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_enumerate)

    ls = sub.add_parser("list", help="list the builtin registry")
    ls.add_argument("--json", action="store_true")
    ls.set_defaults(func=cmd_list)
    return ap


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"qpart: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
