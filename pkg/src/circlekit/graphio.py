"""Reading and writing graphs: graph6 strings and a small JSON edge-list form.

graph6 follows the format used by nauty and friends, including the long
(``~``-prefixed) vertex-count encodings.  The JSON form is
``{"n": <int>, "edges": [[u, v], ...]}`` with 0-based integer labels.
Emission mirrors ingestion: ``to_graph6(parse_graph6(s)) == s`` for any
canonical graph6 string.
"""

from __future__ import annotations

import json
from typing import List

from .errors import GraphParseError
from .graphs import LabeledGraph

__all__ = [
    "parse_graph6",
    "to_graph6",
    "parse_graph_json",
    "to_graph_json",
    "parse_graph",
    "emit_graph",
]

_HEADER = ">>graph6<<"


def _read_number(data: str, pos: int) -> tuple[int, int]:
    """Decode the vertex-count field starting at ``pos``; return (n, next_pos)."""
    if pos >= len(data):
        raise GraphParseError("empty graph6 string", pos)
    c = ord(data[pos])
    if c != 126:
        if not 63 <= c <= 125:
            raise GraphParseError(f"bad graph6 byte {data[pos]!r}", pos)
        return c - 63, pos + 1
    if pos + 1 < len(data) and ord(data[pos + 1]) == 126:
        start, width = pos + 2, 6
    else:
        start, width = pos + 1, 3
    if start + width > len(data):
        raise GraphParseError("truncated graph6 vertex count", len(data))
    n = 0
    for k in range(start, start + width):
        c = ord(data[k])
        if not 63 <= c <= 126:
            raise GraphParseError(f"bad graph6 byte {data[k]!r}", k)
        n = (n << 6) | (c - 63)
    return n, start + width


def parse_graph6(text: str) -> LabeledGraph:
    """Parse one graph6 string (an optional ``>>graph6<<`` header is allowed)."""
    data = text.strip()
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
    n, pos = _read_number(data, 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos != need:
        raise GraphParseError(
            f"graph6 body for n={n} needs {need} bytes, found {len(data) - pos}", pos
        )
    bits: List[int] = []
    for k in range(pos, len(data)):
        c = ord(data[k])
        if not 63 <= c <= 126:
            raise GraphParseError(f"bad graph6 byte {data[k]!r}", k)
        v = c - 63
        bits.extend((v >> s) & 1 for s in (5, 4, 3, 2, 1, 0))
    if any(bits[nbits:]):
        raise GraphParseError("nonzero padding bits in graph6 body", len(data) - 1)
    edges = []
    t = 0
    for j in range(1, n):
        for i in range(j):
            if bits[t]:
                edges.append((i, j))
            t += 1
    return LabeledGraph(range(n), edges)


def to_graph6(g: LabeledGraph) -> str:
    """Encode by position in label order (labels themselves are not stored)."""
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        head = "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    bits = []
    for j in range(1, n):
        rj = g.row(j)
        bits.extend((rj >> i) & 1 for i in range(j))
    while len(bits) % 6:
        bits.append(0)
    body = "".join(
        chr(63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3 | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5]))
        for k in range(0, len(bits), 6)
    )
    return head + body


def parse_graph_json(text: str) -> LabeledGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphParseError(f"bad JSON: {e.msg}", e.pos) from None
    if not isinstance(obj, dict) or "n" not in obj:
        raise GraphParseError('JSON graph must be an object with an "n" field')
    n = obj["n"]
    if not isinstance(n, int) or n < 0:
        raise GraphParseError('"n" must be a nonnegative integer')
    edges = obj.get("edges", [])
    out = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphParseError(f"bad edge entry {e!r}")
        u, v = e
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphParseError(f"edge {e!r} out of range for n={n}")
        out.append((u, v))
    return LabeledGraph(range(n), out)


def to_graph_json(g: LabeledGraph) -> str:
    index = {u: i for i, u in enumerate(g.labels)}
    edges = sorted((index[u], index[v]) for u, v in g.edges())
    return json.dumps({"n": g.n, "edges": [list(e) for e in edges]}, separators=(",", ":"))


def parse_graph(text: str, format: str = "graph6") -> LabeledGraph:
    if format == "graph6":
        return parse_graph6(text)
    if format == "json":
        return parse_graph_json(text)
    raise GraphParseError(f"unknown graph format {format!r}")


def emit_graph(g: LabeledGraph, format: str = "graph6") -> str:
    if format == "graph6":
        return to_graph6(g)
    if format == "json":
        return to_graph_json(g)
    raise GraphParseError(f"unknown graph format {format!r}")
