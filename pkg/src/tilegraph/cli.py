"""Command line frontend.

Exit status: 0 success, 1 invalid input, 2 violated theorem (a bug),
3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, HypothesisFailed, TableMismatch, TileGraphError, TraceNonZero
from .graph import (
    DEFAULT_LIMIT,
    Path,
    aperiodicity_witness,
    build_graph,
    connect_vertices,
)
from .ktheory import compute_k_groups, gcd_formula_scan, reduction_chain
from .subshift import enumerate_windows, sample_window, window_is_valid
from .table_data import expected_order, published_cells
from .tiles import BasicData, parse_rule, parse_tile_text, tile_metrics


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass
class JobSpec:
    rows: tuple[int, ...]
    q: int
    t: int = 0
    rule: dict = field(default_factory=dict)
    command: str = "report"
    options: dict = field(default_factory=dict)

    def data(self) -> BasicData:
        return BasicData.make(parse_tile_text(",".join(map(str, self.rows))), self.q, self.t, self.rule)


def _point(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}") from None
    return (a, b)


def _rows(text: str) -> tuple[int, ...]:
    return parse_tile_text(text).rows()


def _digits(values, q: int) -> str:
    return "".join(map(str, values)) if q <= 10 else " ".join(map(str, values))


def grid_lines(grid: dict, q: int) -> list[str]:
    """Rows of a staircase grid, highest row first."""
    top = max(b for _, b in grid)
    lines = []
    for y in range(top, -1, -1):
        xs = sorted(a for a, b in grid if b == y)
        lines.append(_digits([grid[(x, y)] for x in xs], q))
    return lines


def _path_dict(lam: Path, q: int) -> dict:
    return {"degree": list(lam.degree), "rows_top_down": grid_lines(lam.as_dict(), q)}


# ---------------------------------------------------------------- commands


def cmd_report(spec: JobSpec) -> dict:
    data = spec.data()
    limit = spec.options.get("limit", DEFAULT_LIMIT)
    g = build_graph(data, limit)
    m = tile_metrics(data.tile)
    B, R = g.B.astype(np.int64), g.R.astype(np.int64)
    checks = {
        "BR_equals_RB": bool(np.array_equal(B @ R, R @ B)),
        "blue_sums": bool(np.all(B.sum(0) == data.q**m.c2) and np.all(B.sum(1) == data.q**m.c2)),
        "red_sums": bool(np.all(R.sum(0) == data.q**m.c1) and np.all(R.sum(1) == data.q**m.c1)),
        "vertex_count": len(g) == data.q ** (len(data.tile) - 1),
    }
    kt = compute_k_groups(data, limit=limit)
    out = {
        "tile": list(data.tile.rows()),
        "q": data.q,
        "t": data.t,
        "rule": {f"({a},{b})": x for (a, b), x in data.rule().items()},
        "vertices": len(g),
        "blue_edges": int(B.sum()),
        "red_edges": int(R.sum()),
        "matrix_checks": checks,
        "k_theory": kt.as_dict(),
    }
    try:
        out["reduction_chain"] = reduction_chain(data, limit=limit).as_dict()
    except HypothesisFailed as exc:
        out["reduction_chain"] = {"skipped": str(exc)}
    if kt.K0.is_finite:
        gcd_rec = gcd_formula_scan(kt)
        out["gcd_formula"] = {"predicted": gcd_rec.predicted, "observed": gcd_rec.observed, "agrees": gcd_rec.agrees}
    return out


def _table_cell(job):
    rows, q, limit = job
    from .tiles import parse_tile

    rep = compute_k_groups(BasicData(parse_tile(rows), q), limit=limit, hypotheses=False)
    return rep.K0.order, rep.K1.order


def cmd_table(cells, check: bool = False, jobs: int = 1, limit: int = DEFAULT_LIMIT) -> dict:
    """``cells`` is a list of ``(rows, q)``; output keeps input order."""
    work = [(tuple(rows), q, limit) for rows, q in cells]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_table_cell, work))
    else:
        results = [_table_cell(w) for w in work]
    out, mismatches = [], []
    for (rows, q, _), (k0, k1) in zip(work, results):
        exp = expected_order(rows, q)
        entry = {"tile": list(rows), "q": q, "K0_order": k0, "K1_order": k1, "expected": exp}
        if check and exp is not None:
            entry["match"] = k0 == exp and k1 == exp
            if not entry["match"]:
                mismatches.append(entry)
        out.append(entry)
    result = {"cells": out, "checked": check}
    if check and mismatches:
        raise TableMismatch(
            "; ".join(f"{e['tile']} q={e['q']}: got {e['K0_order']},{e['K1_order']} expected {e['expected']}" for e in mismatches)
        )
    return result


def cmd_sample(spec: JobSpec) -> dict:
    data = spec.data()
    extent = spec.options.get("extent", (0, 0))
    if spec.options.get("enumerate"):
        if data.t != 0:
            raise TraceNonZero("windows of the shift space need trace 0")
        wins = list(enumerate_windows(data, extent))
        return {
            "extent": list(extent),
            "count": len(wins),
            "windows": [grid_lines(w.as_dict(), data.q) for w in wins],
            "valid": all(window_is_valid(data, w) for w in wins),
        }
    seed = spec.options.get("seed", 0)
    w = sample_window(data, extent, seed, limit=spec.options.get("limit", DEFAULT_LIMIT))
    return {
        "extent": list(extent),
        "seed": seed,
        "cells": len(w.values),
        "rows_top_down": grid_lines(w.as_dict(), data.q),
        "valid": window_is_valid(data, w),
    }


def cmd_reduce(spec: JobSpec) -> dict:
    return reduction_chain(spec.data(), limit=spec.options.get("limit", DEFAULT_LIMIT)).as_dict()


def cmd_aperiodicity(spec: JobSpec) -> dict:
    data = spec.data()
    o = spec.options
    limit = o.get("limit", DEFAULT_LIMIT)
    g = build_graph(data, limit)
    verts = [g.vertex(o["vertex"])] if o.get("vertex") is not None else g.vertices
    results = []
    for v in verts:
        rep = aperiodicity_witness(data, v, o["m"], o["n"], bound=o.get("bound"), limit=limit)
        results.append({"vertex": str(v), "method": rep.method, "status": rep.status, "witness": _path_dict(rep.witness, data.q)})
    return {"m": list(o["m"]), "n": list(o["n"]), "results": results}


def cmd_connect(spec: JobSpec) -> dict:
    data = spec.data()
    o = spec.options
    lam = connect_vertices(data, o["source_range"], o["source"], limit=o.get("limit", DEFAULT_LIMIT))
    g = build_graph(data, o.get("limit", DEFAULT_LIMIT))
    return {"range": str(g.range_of(lam)), "source": str(g.source_of(lam)), "path": _path_dict(lam, data.q)}


# ---------------------------------------------------------------- text output


def _text(obj, indent: int = 0) -> list[str]:
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k in sorted(obj):
            v = obj[k]
            if k == "rows_top_down":
                lines.append(f"{pad}{k}:")
                lines.extend(f"{pad}  {row}" for row in v)
            elif isinstance(v, list) and v and all(isinstance(x, list) and not any(isinstance(y, (list, dict)) for y in x) for x in v):
                lines.append(f"{pad}{str(k).ljust(width)}  " + " ".join(_scalar(x) for x in v))
            elif isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], (dict, list))):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                lines.extend(_text(item, indent + 2))
                lines.append("")
            else:
                lines.append(f"{pad}{_scalar(item)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _table_text(result: dict) -> list[str]:
    lines = [f"{'tile':<12}{'q':>3}{'|K0|':>8}{'|K1|':>8}{'expected':>10}"]
    for c in result["cells"]:
        tile = "[" + ",".join(map(str, c["tile"])) + "]"
        exp = "-" if c["expected"] is None else str(c["expected"])
        mark = "" if "match" not in c else ("  ok" if c["match"] else "  MISMATCH")
        lines.append(f"{tile:<12}{c['q']:>3}{c['K0_order']:>8}{c['K1_order']:>8}{exp:>10}{mark}")
    return lines


def _sample_text(result: dict) -> list[str]:
    if "windows" in result:
        lines = []
        for i, rows in enumerate(result["windows"]):
            lines.append(f"# window {i}")
            lines.extend(rows)
        lines.append(f"count {result['count']}, all valid: {_scalar(result['valid'])}")
        return lines
    return result["rows_top_down"] + [f"valid: {_scalar(result['valid'])} (extent {result['extent'][0]},{result['extent'][1]}, seed {result['seed']})"]


def render(command: str, result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2)
    if command == "table":
        return "\n".join(_table_text(result))
    if command == "sample":
        return "\n".join(_sample_text(result))
    return "\n".join(_text(result)).rstrip()


# ---------------------------------------------------------------- argument parsing


def _parse_cell(text: str) -> tuple[tuple[int, ...], int]:
    try:
        rows, q = text.rsplit(":", 1)
        return _rows(rows), int(q)
    except (ValueError, DomainError):
        raise argparse.ArgumentTypeError(f"expected 'r1,r2,...:q', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="maximum vertex count")
    common.add_argument("--seed", type=int, default=0)

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--tile", required=True, help="row lengths, longest first, e.g. 2,1")
    data.add_argument("--q", type=int, required=True)
    data.add_argument("--t", type=int, default=0)
    data.add_argument("--rule", default="", help="e.g. '(1,0):2;(0,1):3'; unspecified cells get 1")

    p = _Parser(prog="tilegraph", description="2-graphs from tiles, their skeletons and K-groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("report", parents=[common, data], help="full structured report")

    t = sub.add_parser("table", parents=[common], help="K-group orders for many tiles")
    t.add_argument("--preset", choices=("published", "paper"), default=None)
    t.add_argument("--cell", type=_parse_cell, action="append", default=[], help="rows:q, repeatable")
    t.add_argument("--check", action="store_true", help="compare with the embedded expected values")
    t.add_argument("--jobs", type=int, default=1)

    s = sub.add_parser("sample", parents=[common, data], help="random or enumerated shift windows")
    s.add_argument("--extent", type=_point, default=(0, 0))
    s.add_argument("--enumerate", action="store_true")

    sub.add_parser("reduce", parents=[common, data], help="dual reduction chain of the blue graph")

    a = sub.add_parser("aperiodicity", parents=[common, data], help="aperiodicity witnesses")
    a.add_argument("--vertex", default=None, help="digit string or index; default all vertices")
    a.add_argument("--m", type=_point, required=True)
    a.add_argument("--n", type=_point, required=True)
    a.add_argument("--bound", type=_point, default=None)

    c = sub.add_parser("connect", parents=[common, data], help="diagonal path between two vertices")
    c.add_argument("--range", dest="range_vertex", required=True)
    c.add_argument("--source", required=True)
    return p


def _vertex_key(text):
    if text is None:
        return None
    return int(text[1:]) if text.startswith("#") else text


def _spec(args) -> JobSpec:
    rule = parse_rule(args.rule) if args.rule else {}
    opts = {"limit": args.limit, "seed": args.seed}
    for name in ("extent", "enumerate", "m", "n", "bound"):
        if hasattr(args, name):
            opts[name] = getattr(args, name)
    if hasattr(args, "vertex"):
        opts["vertex"] = _vertex_key(args.vertex)
    if hasattr(args, "range_vertex"):
        opts["source_range"] = _vertex_key(args.range_vertex)
        opts["source"] = _vertex_key(args.source)
    return JobSpec(_rows(args.tile), args.q, args.t, rule, args.command, opts)


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    if args.command == "table":
        cells = [(rows, q) for rows, q, _ in published_cells()] if args.preset or not args.cell else []
        cells += list(args.cell)
        result = cmd_table(cells, check=args.check, jobs=args.jobs, limit=args.limit)
    else:
        spec = _spec(args)
        handler = {
            "report": cmd_report,
            "sample": cmd_sample,
            "reduce": cmd_reduce,
            "aperiodicity": cmd_aperiodicity,
            "connect": cmd_connect,
        }[args.command]
        result = handler(spec)
    return 0, render(args.command, result, args.format)


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except TileGraphError as exc:
        extra = ""
        report = getattr(exc, "report", None)
        if report is not None and getattr(report, "status", None):
            extra = f" [status: {report.status}]"
        print(f"error: {type(exc).__name__}: {exc}{extra}", file=sys.stderr)
        return exc.exit_code
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
