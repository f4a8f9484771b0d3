"""Command-line entry point.

One subcommand per verb; every invocation prints a single RunReport as JSON
on stdout and a one-line human summary on stderr.  Exit codes: 0 ok,
2 usage or parse problem, 3 a configured bound was exceeded, 4 a guaranteed
property failed on a concrete instance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Dict, List, Optional, Tuple

from . import verify as verify_mod
from .chords import ChordDiagram, format_word, interlacement_graph, is_circle_graph, parse_word, prop5_embed
from .errors import (
    BoundExceeded,
    CircleKitError,
    OrbitCapExceeded,
    PreconditionError,
    TheoremViolation,
)
from .graphio import emit_graph, parse_graph
from .planar import plane_from_json, plane_to_json, theorem2_converse, theorem2_forward
from .rankwidth import rank_width_exact
from .rlc import find_nontrivial_r_incident, multiset_to_json
from .verify import RunReport, orbit_report, run_verifier

__all__ = ["main", "run"]


def _read_input(raw: str) -> str:
    """Positional inputs are literal text, ``@path`` for file contents, or
    ``-`` for stdin."""
    if raw == "-":
        return sys.stdin.read()
    if raw.startswith("@"):
        with open(raw[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return raw


def _parse_r_list(text: str) -> List[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise PreconditionError(f"--r expects comma-separated integers, got {text!r}")
    if not values or any(r < 1 for r in values):
        raise PreconditionError("--r values must be positive integers")
    return values


def _load_graph(args):
    return parse_graph(_read_input(args.input), args.format)


# -- subcommand handlers (each returns (inputs_echo, result_dict)) ----------


def _cmd_recognize(args) -> Tuple[Dict, Dict]:
    g = _load_graph(args)
    d = is_circle_graph(g, max_n=args.max_n)
    result = {
        "is_circle": d is not None,
        "word": format_word(d.word) if d is not None else None,
    }
    return {"n": g.n, "format": args.format}, result


def _cmd_orbit(args) -> Tuple[Dict, Dict]:
    g = _load_graph(args)
    result = orbit_report(g, cap=args.cap, recognition_n=args.max_n)
    return {"n": g.n, "cap": args.cap}, result


def _cmd_rlc_verify(args) -> Tuple[Dict, Dict]:
    g = _load_graph(args)
    rs = _parse_r_list(args.r)
    try:
        circle = is_circle_graph(g, max_n=args.max_n) is not None
    except BoundExceeded:
        circle = None
    findings = {}
    for r in rs:
        hits = find_nontrivial_r_incident(g, r, max_n=max(args.max_n, g.n))
        findings[str(r)] = [json.loads(multiset_to_json(m)) for m in hits]
    result = {"is_circle": circle, "nontrivial": findings}
    if circle and any(findings[k] for k in findings):
        raise TheoremViolation(
            f"circle graph admits a nontrivial r-incident multiset: {result!r}"
        )
    return {"n": g.n, "r": rs}, result


def _cmd_planar2graph(args) -> Tuple[Dict, Dict]:
    p = plane_from_json(_read_input(args.input))
    c, hset = theorem2_forward(p)
    result = {
        "graph": emit_graph(c, args.format),
        "labels": [str(x) for x in c.labels],
        "non_tree": sorted(str(x) for x in hset),
    }
    return {"vertices": p.base.n, "edges": p.base.edge_count()}, result


def _cmd_graph2planar(args) -> Tuple[Dict, Dict]:
    g = _load_graph(args)
    d = is_circle_graph(g, max_n=args.max_n)
    if d is None:
        raise PreconditionError("input graph is not a circle graph")
    sides = g.bipartition()
    if sides is None:
        raise PreconditionError("input graph is not bipartite")
    # bipartition() puts each component's lowest vertex in side 0
    side = sides[0]
    p = theorem2_converse(d, side)
    result = {
        "plane": json.loads(plane_to_json(p)),
        "word": format_word(d.word),
        "tree_side": sorted(str(x) for x in side),
    }
    return {"n": g.n}, result


def _cmd_embed_bipartite(args) -> Tuple[Dict, Dict]:
    word = parse_word(_read_input(args.input))
    d = ChordDiagram(word)
    c = interlacement_graph(d)
    b, added, p = prop5_embed(c, d)
    result = {
        "bipartite_graph": emit_graph(b, args.format),
        "labels": [str(x) for x in b.labels],
        "added": sorted(str(x) for x in added),
        "plane": json.loads(plane_to_json(p)),
    }
    return {"word": format_word(word), "chords": c.n}, result


def _cmd_rankwidth(args) -> Tuple[Dict, Dict]:
    g = _load_graph(args)
    width, dec = rank_width_exact(g, max_n=args.max_n)
    result = {
        "width": width,
        "decomposition": dec.to_json_obj() if dec is not None else None,
        "text": dec.to_text() if dec is not None else None,
    }
    return {"n": g.n, "max_n": args.max_n}, result


def _cmd_render(args) -> Tuple[Dict, Dict]:
    from .render import render_chord_diagram, render_plane_multigraph, save_figure

    text = _read_input(args.input)
    if args.what == "chord":
        d = ChordDiagram(parse_word(text))
        highlight = set(parse_word(args.highlight)) if args.highlight else set()
        fig = render_chord_diagram(d, highlight=highlight)
    else:
        p = plane_from_json(text)
        fig = render_plane_multigraph(p)
    save_figure(fig, args.out)
    result = {"out": args.out, "bytes": os.path.getsize(args.out)}
    return {"what": args.what}, result


_VERIFY_PARAMS = {
    "theorem1": lambda a: {"max_n": a.max_n if a.max_n is not None else 6, "rs": tuple(_parse_r_list(a.r))},
    "theorem2": lambda a: {"seed": a.seed, "random_count": a.count, "max_edges": a.max_edges},
    "lemma2": lambda a: {"max_n": a.max_n if a.max_n is not None else 7},
    "prop5": lambda a: {"max_n": a.max_n if a.max_n is not None else 5},
    "onethird": lambda a: {"n": a.max_n if a.max_n is not None else 3},
    "remark": lambda a: {"seed": a.seed, "count": a.count, "max_edges": a.max_edges},
}


def _cmd_verify(args) -> RunReport:
    params = _VERIFY_PARAMS[args.name](args)
    return run_verifier(args.name, **params)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circlekit",
        description="Circle graphs, graph states, planar codes, and rank-width.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_flags(p, max_n_default=9):
        p.add_argument("input", help="graph text, @file, or - for stdin")
        p.add_argument("--format", choices=("graph6", "json"), default="graph6")
        p.add_argument("--max-n", dest="max_n", type=int, default=max_n_default)

    p = sub.add_parser("recognize", help="decide circle-graph membership, returning a word")
    add_graph_flags(p)
    p.set_defaults(handler=_cmd_recognize)

    p = sub.add_parser("orbit", help="count the local-complementation orbit")
    add_graph_flags(p)
    p.add_argument("--cap", type=int, default=1_000_000)
    p.set_defaults(handler=_cmd_orbit)

    p = sub.add_parser("rlc-verify", help="search for nontrivial r-incident multisets")
    add_graph_flags(p)
    p.add_argument("--r", default="2,3", help="comma-separated incidence levels")
    p.set_defaults(handler=_cmd_rlc_verify)

    p = sub.add_parser("planar2graph", help="fundamental graph of a plane multigraph (JSON in)")
    p.add_argument("input", help="plane multigraph JSON, @file, or -")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(handler=_cmd_planar2graph)

    p = sub.add_parser("graph2planar", help="plane multigraph from a bipartite circle graph")
    add_graph_flags(p)
    p.set_defaults(handler=_cmd_graph2planar)

    p = sub.add_parser("embed-bipartite", help="embed a circle graph into a bipartite one (word in)")
    p.add_argument("input", help="chord-diagram word, @file, or -")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(handler=_cmd_embed_bipartite)

    p = sub.add_parser("rankwidth", help="exact rank-width with a witness decomposition")
    add_graph_flags(p, max_n_default=12)
    p.set_defaults(handler=_cmd_rankwidth)

    p = sub.add_parser("render", help="draw a chord diagram or plane multigraph")
    p.add_argument("what", choices=("chord", "plane"))
    p.add_argument("input", help="word or plane JSON, @file, or -")
    p.add_argument("--out", required=True, help="output image path (.svg is byte-deterministic)")
    p.add_argument("--highlight", default="", help="letters to emphasise (chord only)")
    p.set_defaults(handler=_cmd_render)

    p = sub.add_parser("verify", help="run one exhaustive verification suite")
    p.add_argument("name", choices=sorted(_VERIFY_PARAMS))
    p.add_argument("--max-n", dest="max_n", type=int, default=None)
    p.add_argument("--r", default="2,3")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--max-edges", dest="max_edges", type=int, default=12)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.count is None:
        args.count = 200 if args.name == "theorem2" else 20

    start = time.monotonic()
    code = 0
    try:
        out = args.handler(args)
        if isinstance(out, RunReport):
            report = out
        else:
            inputs, result = out
            elapsed = int((time.monotonic() - start) * 1000)
            report = RunReport(args.command, inputs, result, elapsed, "ok")
        if report.status == "theorem-violation":
            code = 4
    except CircleKitError as exc:
        elapsed = int((time.monotonic() - start) * 1000)
        status = "theorem-violation" if isinstance(exc, TheoremViolation) else "error"
        report = RunReport(
            args.command,
            {},
            {"error": str(exc), "type": type(exc).__name__},
            elapsed,
            status,
        )
        if isinstance(exc, TheoremViolation):
            code = 4
        elif isinstance(exc, (BoundExceeded, OrbitCapExceeded)):
            code = 3
        else:
            code = 2
    except OSError as exc:
        elapsed = int((time.monotonic() - start) * 1000)
        report = RunReport(
            args.command, {}, {"error": str(exc), "type": type(exc).__name__}, elapsed, "error"
        )
        code = 2

    print(report.to_json())
    summary = f"{report.command}: {report.status} in {report.elapsed_ms} ms"
    if report.status != "ok":
        summary += f" -- {report.result.get('error', report.result)}"
    print(summary, file=sys.stderr)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
