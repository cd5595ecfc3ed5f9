"""``igv``: tables of invariants, theta coefficients and verification reports.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from .invariants import InvariantTable, SurfaceType, kkv_table, ngh_table, table_from_rows
from .lattice import LatticeTag, cosets_for, theta_from_cosets
from .verify import SUITES, run_suite

SCHEMA_VERSION = "1"
THREADS_ENV = "GV_SERIES_THREADS"


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _num(x):
    # exponents are integers for every supported lattice; keep halves readable if they ever occur
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _md_grid(title: str, cells: dict[tuple[int, int], int], row_label: str, col_label: str) -> list[str]:
    rows = sorted({r for r, _ in cells})
    cols = sorted({c for _, c in cells})
    out = [f"### {title}", ""]
    out.append("| | " + " | ".join(f"{col_label}={c}" for c in cols) + " |")
    out.append("|---" * (len(cols) + 1) + "|")
    for r in rows:
        vals = [str(cells[(r, c)]) if (r, c) in cells else "" for c in cols]
        out.append(f"| {row_label}={r} | " + " | ".join(vals) + " |")
    out.append("")
    return out


# -- serialization ---------------------------------------------------------


def table_record(table: InvariantTable, d_min: int, d_max: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": table.type.value,
        "d_min": d_min,
        "d_max": d_max,
        "skipped_d": list(table.skipped),
        "entries": [{"d": d, "g": g, "h": h, "n": n} for d, g, h, n in table.rows()],
    }


def table_from_record(rec: dict) -> InvariantTable:
    if rec.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {rec.get('schema_version')!r}")
    t = table_from_rows(((e["d"], e["g"], e["h"], e["n"]) for e in rec["entries"]), SurfaceType(rec["type"]))
    t.skipped = list(rec.get("skipped_d", []))
    return t


def emit_table(table: InvariantTable, d_min: int, d_max: int, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(table_record(table, d_min, d_max), indent=2) + "\n"
    if fmt == "csv":
        return _csv(("d", "g", "h", "n"), table.rows())
    lines = [f"## n_{{g,h}}(d) for type {table.type.value}", ""]
    for d in range(d_min, d_max + 1):
        if d in table.skipped:
            lines += [f"### d = {d}", "", "skipped: not admissible for this type", ""]
            continue
        cells = table.at(d)
        if cells:
            lines += _md_grid(f"d = {d}", cells, "g", "h")
        else:
            lines += [f"### d = {d}", "", "no nonzero values", ""]
    return "\n".join(lines)


def emit_kkv(data: dict[int, dict[int, int]], fmt: str) -> str:
    rows = [(d, h, n) for d in sorted(data) for h, n in sorted(data[d].items()) if n]
    if fmt == "json":
        rec = {"schema_version": SCHEMA_VERSION, "entries": [{"d": d, "h": h, "n": n} for d, h, n in rows]}
        return json.dumps(rec, indent=2) + "\n"
    if fmt == "csv":
        return _csv(("d", "h", "n"), rows)
    return "\n".join(_md_grid("KKV invariants n_h(d)", {(d, h): n for d, h, n in rows}, "d", "h"))


def emit_theta(tag: LatticeTag, order: int, fmt: str) -> str:
    series = theta_from_cosets(cosets_for(tag), order)
    rows = [(_num(e), _num(b), _num(c)) for e, coeff in series.items() for (_, b, c) in sorted(coeff.terms(), key=lambda t: t[1])]
    if fmt == "json":
        rec = {
            "schema_version": SCHEMA_VERSION,
            "lattice": tag.value,
            "order": order,
            "entries": [{"q": q, "w": w, "c": c} for q, w, c in rows],
        }
        return json.dumps(rec, indent=2) + "\n"
    if fmt == "csv":
        return _csv(("q", "w", "c"), rows)
    return "\n".join(_md_grid(f"Theta_{tag.value}(q^2, w) to q^{order}", {(q, w): c for q, w, c in rows}, "q", "w"))


# -- commands --------------------------------------------------------------


def cmd_table(args) -> int:
    stype = SurfaceType(args.type)
    table = ngh_table(stype, args.dmax, args.dmin)
    sys.stdout.write(emit_table(table, args.dmin, args.dmax, args.format))
    return 0


def cmd_kkv(args) -> int:
    sys.stdout.write(emit_kkv(kkv_table(args.dmax), args.format))
    return 0


def cmd_theta(args) -> int:
    sys.stdout.write(emit_theta(LatticeTag(args.lattice), args.order, args.format))
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.order)
    for r in results:
        print(r.line())
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="igv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    formats = ("json", "csv", "md")

    t = sub.add_parser("table", help="invariants n_{g,h}(d) for one surface type")
    t.add_argument("--type", required=True, choices=[s.value for s in SurfaceType])
    t.add_argument("--dmax", required=True, type=_nonneg)
    t.add_argument("--dmin", type=int, default=0)
    t.add_argument("--format", choices=formats, default="json")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--order", type=_nonneg, default=None)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("kkv", help="KKV invariants n_h(d) for -1 <= d <= dmax")
    k.add_argument("--dmax", required=True, type=_nonneg)
    k.add_argument("--format", choices=formats, default="json")
    k.set_defaults(func=cmd_kkv)

    th = sub.add_parser("theta", help="theta series Theta_T(q^2, w) by the coset method")
    th.add_argument("--lattice", required=True, choices=[tg.value for tg in LatticeTag])
    th.add_argument("--order", required=True, type=_nonneg)
    th.add_argument("--format", choices=formats, default="json")
    th.set_defaults(func=cmd_theta)
    return p


def _check_threads(parser: argparse.ArgumentParser) -> None:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return
    try:
        ok = int(raw) >= 1
    except ValueError:
        ok = False
    if not ok:
        parser.error(f"{THREADS_ENV} must be a positive integer, got {raw!r}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_threads(parser)
    if getattr(args, "dmin", 0) > getattr(args, "dmax", 0):
        parser.error("--dmin must not exceed --dmax")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
