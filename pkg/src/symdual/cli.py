"""Command-line front end: one pipeline stage per invocation, reports on stdout.

Exit status is 0 on success, 1 on a domain error (or a failed ``compare``) and
2 on a usage error.  Every failure prints a single-line ``{"error": ...}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .delta_complex import DeltaComplex, euler_characteristic, f_vector, homology, is_simplicial
from .expansion import IndexSet, expand
from .graph import OrientedGraph, has_directed_cycle, is_bipartitely_oriented, is_tree, parse_graph
from .stability import (
    enumerate_strata,
    enumerate_tuples,
    stratum_facet,
    tuple_facet,
    tuple_to_json,
)
from .sym_product import (
    DEFAULT_MAX_TOP_CELLS,
    ComplexTooLargeError,
    compare,
    induced_weights,
    minimal_span,
    product_complex,
    skeleton_complex,
    sym_complex,
)

COMMANDS = ("check", "expand", "strata", "tuples", "facets", "sym", "product", "compare", "skeleton")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: Path
    command: str
    n: int | None = None
    index_set: str | None = None
    weights: dict[str, int] | None = None
    format: str = "json"
    dump_cells: bool = False
    max_top_cells: int | None = DEFAULT_MAX_TOP_CELLS
    threads: int | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(message)


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _weights(items: Sequence[str]) -> dict[str, int]:
    out: dict[str, int] = {}
    for item in items:
        for pair in filter(None, item.split(",")):
            name, sep, value = pair.partition("=")
            try:
                if not sep or not name:
                    raise ValueError
                out[name.strip()] = int(value)
            except ValueError:
                raise UsageError(f"bad weight {pair!r}, expected vertex=int") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="symdual", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", type=Path, help="graph file")
    p.add_argument("-n", type=_nonnegative, help="number of points")
    p.add_argument("--set", dest="index_set", metavar="I", help="comma list of members of [n+1], e.g. 1,3")
    p.add_argument("--weights", nargs="+", metavar="V=W", help="vertex weights, e.g. v=0 w=1")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--dump-cells", action="store_true", help="include every cell and its faces")
    p.add_argument("--max-top-cells", type=_nonnegative, default=DEFAULT_MAX_TOP_CELLS)
    p.add_argument("--threads", type=_nonnegative, default=None, help="homology workers (default: all cores)")
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        input=ns.input,
        command=ns.command,
        n=ns.n,
        index_set=ns.index_set,
        weights=_weights(ns.weights) if ns.weights else None,
        format=ns.format,
        dump_cells=ns.dump_cells,
        max_top_cells=ns.max_top_cells,
        threads=ns.threads or None,
    )
    needs_n = {"strata", "tuples", "facets", "sym", "product", "compare", "skeleton"}
    if cfg.command in needs_n and cfg.n is None:
        raise UsageError(f"{cfg.command} requires -n")
    if cfg.command in {"expand", "strata", "tuples", "facets"} and cfg.index_set is None:
        raise UsageError(f"{cfg.command} requires --set")
    if cfg.command == "skeleton" and cfg.weights is None:
        raise UsageError("skeleton requires --weights")
    return cfg


# -- reports -------------------------------------------------------------------

def complex_report(dc: DeltaComplex, dump_cells: bool = False, workers: int | None = 1) -> dict:
    h = homology(dc, workers=workers)
    report = {
        "f_vector": f_vector(dc),
        "euler": euler_characteristic(dc),
        "betti": h.betti,
        "torsion": h.torsion,
        "simplicial": is_simplicial(dc),
    }
    if dump_cells:
        report["cells"] = dc.to_json()
    return report


def _index_set(cfg: RunConfig) -> IndexSet:
    assert cfg.index_set is not None
    if cfg.n is None:
        members = [int(t) for t in cfg.index_set.split(",") if t.strip()]
        return IndexSet.parse(max(max(members, default=1) - 1, 1), cfg.index_set)
    return IndexSet.parse(cfg.n, cfg.index_set)


def _facets(g: OrientedGraph, J: IndexSet) -> dict:
    ks = range(1, J.r + 1) if J.r >= 2 else ()
    strata = []
    for idx in enumerate_strata(g, J):
        entries = []
        for k in ks:
            I, b = stratum_facet(g, J, idx, k)
            entries.append({"k": k, "I": list(I.members), "stratum": b.to_json()})
        strata.append({"stratum": idx.to_json(), "facets": entries})
    tuples = []
    for z in enumerate_tuples(g, J):
        entries = []
        for k in ks:
            I, y = tuple_facet(g, J, z, k)
            entries.append({"k": k, "I": list(I.members), "tuple": tuple_to_json(I, y)})
        tuples.append({"tuple": tuple_to_json(J, z), "facets": entries})
    return {"J": list(J.members), "strata": strata, "tuples": tuples}


def run(cfg: RunConfig) -> tuple[int, dict]:
    try:
        text = cfg.input.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        return 1, {"error": f"cannot read {cfg.input}: {exc}"}
    workers = cfg.threads or os.cpu_count() or 1
    try:
        g = parse_graph(text)
        cmd = cfg.command
        if cmd == "check":
            return 0, {
                "bipartite": is_bipartitely_oriented(g),
                "directed_cycle": has_directed_cycle(g),
                "tree": is_tree(g),
            }
        if cmd == "expand":
            eg = expand(g, _index_set(cfg)).to_graph()
            return 0, {
                "nodes": list(eg.vertices),
                "arrows": [{"label": a.label, "src": a.src, "tgt": a.tgt} for a in eg.arrows],
            }
        if cmd == "strata":
            I = _index_set(cfg)
            strata = enumerate_strata(g, I)
            return 0, {"I": list(I.members), "count": len(strata), "strata": [s.to_json() for s in strata]}
        if cmd == "tuples":
            I = _index_set(cfg)
            tuples = enumerate_tuples(g, I)
            return 0, {"I": list(I.members), "count": len(tuples), "tuples": [tuple_to_json(I, z) for z in tuples]}
        if cmd == "facets":
            return 0, _facets(g, _index_set(cfg))
        if cmd == "sym":
            return 0, complex_report(sym_complex(g, cfg.n, cfg.max_top_cells), cfg.dump_cells, workers)
        if cmd == "product":
            dc, _ = product_complex(g, cfg.n, cfg.max_top_cells)
            return 0, complex_report(dc, cfg.dump_cells, workers)
        if cmd == "compare":
            result = compare(g, cfg.n, cfg.max_top_cells)
            return (0 if result.match else 1), result.to_json()
        if cmd == "skeleton":
            span = minimal_span(g, cfg.weights)
            report = complex_report(skeleton_complex(g, cfg.weights, cfg.n, cfg.max_top_cells), cfg.dump_cells, workers)
            report["minimal_vertices"] = list(span.vertices)
            report["induced_weights"] = {str(c): w for c, w in induced_weights(g, cfg.weights, cfg.n).items()}
            return 0, report
    except (ValueError, ComplexTooLargeError) as exc:
        return 1, {"error": str(exc)}
    raise AssertionError(f"unhandled command {cfg.command}")


# -- output --------------------------------------------------------------------

def _cell(value: Any) -> str:
    return value if isinstance(value, str) else json.dumps(value, ensure_ascii=False)


def render_text(report: dict) -> str:
    """Scalars and short lists as aligned ``key  value`` rows; lists of records as tables."""
    lines: list[str] = []
    scalars = {k: v for k, v in report.items() if not (isinstance(v, list) and v and isinstance(v[0], dict))}
    width = max((len(k) for k in scalars), default=0)
    for k, v in scalars.items():
        lines.append(f"{k:<{width}}  {_cell(v)}")
    for k, rows in report.items():
        if k in scalars:
            continue
        cols = list(dict.fromkeys(c for row in rows for c in row))
        table = [cols] + [[_cell(row.get(c, "")) for c in cols] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(cols))]
        lines.append("")
        lines.append(f"{k}:")
        for r in table:
            lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "text" and "error" not in report:
        print(render_text(report))
    else:
        print(json.dumps(report, ensure_ascii=False, separators=(", ", ": ")))


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(a in ("-h", "--help") for a in argv):
        build_parser().print_help()
        return 0
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        _emit({"error": str(exc)}, "json")
        return 2
    status, report = run(cfg)
    _emit(report, cfg.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
