"""Plane multigraphs, planar-code stabilizers, and the correspondence with
bipartite circle graph states (both directions).

Embeddings are combinatorial maps: each vertex carries a cyclic order of its
incident edge-ends, faces are traced by the usual next-dart rule, and a
genus-0 check (|V| - |E| + |F| = 2 per connected component) guards every face
computation.  A directed edge-side ("dart") is a pair (edge_id, tail_end).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .chords import ChordDiagram, _Regions, interlacement_graph
from .errors import (
    EmbeddingError,
    GraphParseError,
    InvalidVertexError,
    PreconditionError,
    TheoremViolation,
)
from .graphs import LabeledGraph, LabeledMultigraph
from .stabilizer import (
    PauliOperator,
    apply_hadamards,
    graph_state_tableau,
    is_stabilized,
)

__all__ = [
    "PlaneMultigraph",
    "Face",
    "faces",
    "planar_code_stabilizers",
    "spanning_tree",
    "fundamental_graph",
    "theorem2_forward",
    "theorem2_converse",
    "plane_to_json",
    "plane_from_json",
]


class PlaneMultigraph:
    """A multigraph with a rotation system.

    ``rotation`` maps each vertex to the cyclic order of its incident
    edge-ends, each written (edge_id, end) with end in {0, 1} naming which
    endpoint of the edge sits there.  Every edge-end must appear exactly once
    overall and at the vertex it is attached to.
    """

    __slots__ = ("base", "rotation")

    def __init__(self, base: LabeledMultigraph, rotation: Dict):
        rot: Dict = {}
        seen: Set[Tuple] = set()
        for v in base.vertices:
            ends = tuple(tuple(x) for x in rotation.get(v, ()))
            for e, end in ends:
                if end not in (0, 1):
                    raise PreconditionError(f"edge-end ({e!r}, {end!r}) has bad end index")
                if base.ends(e)[end] != v:
                    raise PreconditionError(f"edge-end ({e!r}, {end}) listed at wrong vertex {v!r}")
                if (e, end) in seen:
                    raise PreconditionError(f"edge-end ({e!r}, {end}) appears twice")
                seen.add((e, end))
            rot[v] = ends
        expected = {(e, end) for e in base.edge_ids() for end in (0, 1)}
        if seen != expected:
            missing = sorted(expected - seen)
            raise PreconditionError(f"rotation misses edge-ends {missing!r}")
        if set(rotation) - set(base.vertices):
            raise InvalidVertexError("rotation mentions unknown vertices")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "rotation", rot)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PlaneMultigraph is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PlaneMultigraph)
            and self.base == other.base
            and self.rotation == other.rotation
        )

    def __hash__(self) -> int:
        return hash((self.base, tuple(sorted(self.rotation.items(), key=lambda kv: repr(kv[0])))))

    def __repr__(self) -> str:
        return f"PlaneMultigraph(base={self.base!r}, rotation={self.rotation!r})"


@dataclass(frozen=True)
class Face:
    """One face walk: a cyclic sequence of darts (edge_id, tail_end)."""

    boundary: Tuple[Tuple, ...]

    def edge_multiset(self) -> Counter:
        return Counter(e for e, _ in self.boundary)

    def operator_support(self) -> FrozenSet:
        """Edges appearing an odd number of times (Z² = I drops the rest)."""
        return frozenset(e for e, c in self.edge_multiset().items() if c % 2)


def _components(base: LabeledMultigraph) -> List[List]:
    seen: Set = set()
    comps: List[List] = []
    for v0 in base.vertices:
        if v0 in seen:
            continue
        comp = [v0]
        seen.add(v0)
        stack = [v0]
        while stack:
            v = stack.pop()
            for e in base.incident(v):
                u, w = base.ends(e)
                other = w if v == u else u
                if other not in seen:
                    seen.add(other)
                    comp.append(other)
                    stack.append(other)
        comps.append(sorted(comp))
    return comps


def faces(p: PlaneMultigraph) -> List[Face]:
    """All face walks.  Raises EmbeddingError unless every connected
    component satisfies |V| - |E| + |F| = 2 (an edgeless vertex counts one
    face); so the rotation system must describe a sphere embedding."""
    base = p.base
    succ: Dict[Tuple, Tuple] = {}
    for v in base.vertices:
        rot = p.rotation[v]
        for i, de in enumerate(rot):
            succ[de] = rot[(i + 1) % len(rot)]

    def next_dart(dart: Tuple) -> Tuple:
        e, tail = dart
        return succ[(e, 1 - tail)]

    out: List[Face] = []
    for comp in _components(base):
        vset = set(comp)
        darts = [(e, end) for v in comp for (e, end) in p.rotation[v]]
        edge_count = len(darts) // 2
        consumed: Set[Tuple] = set()
        count = 0
        for start in sorted(darts, key=repr):
            if start in consumed:
                continue
            walk = [start]
            consumed.add(start)
            cur = next_dart(start)
            while cur != start:
                walk.append(cur)
                consumed.add(cur)
                cur = next_dart(cur)
            out.append(Face(tuple(walk)))
            count += 1
        if not darts:
            out.append(Face(()))
            count = 1
        if len(comp) - edge_count + count != 2:
            raise EmbeddingError(
                f"component {comp!r}: Euler characteristic "
                f"{len(comp)} - {edge_count} + {count} != 2"
            )
    return out


def planar_code_stabilizers(p: PlaneMultigraph) -> List[PauliOperator]:
    """One Z-type generator per face (odd-multiplicity boundary edges) and
    one X-type per vertex (loops drop out); qubits are the edges."""
    qubits = p.base.edge_ids()
    pos = {e: i for i, e in enumerate(qubits)}
    ops: List[PauliOperator] = []
    for f in faces(p):
        z = 0
        for e in f.operator_support():
            z |= 1 << pos[e]
        ops.append(PauliOperator(qubits, 0, z, 1))
    for v in p.base.vertices:
        x = 0
        for e in p.base.incident(v):
            if not p.base.is_loop(e):
                x |= 1 << pos[e]
        ops.append(PauliOperator(qubits, x, 0, 1))
    return ops


def spanning_tree(p: PlaneMultigraph) -> FrozenSet:
    """Deterministic BFS forest: roots are each component's lowest vertex,
    frontier edges tried in edge-id order, loops skipped."""
    base = p.base
    tree: Set = set()
    visited: Set = set()
    for root in base.vertices:
        if root in visited:
            continue
        visited.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            for e in base.incident(v):
                if base.is_loop(e):
                    continue
                u, w = base.ends(e)
                other = w if v == u else u
                if other not in visited:
                    visited.add(other)
                    tree.add(e)
                    queue.append(other)
    return frozenset(tree)


def _tree_paths(base: LabeledMultigraph, tset: FrozenSet):
    """Parent structure of the forest tset; also validates tree-ness."""
    for e in tset:
        if base.is_loop(e):
            raise PreconditionError(f"loop {e!r} cannot be a tree edge")
    parent: Dict = {}
    parent_edge: Dict = {}
    comp_of: Dict = {}
    adj: Dict = {v: [] for v in base.vertices}
    for e in sorted(tset):
        u, w = base.ends(e)
        adj[u].append((w, e))
        adj[w].append((u, e))
    for root in base.vertices:
        if root in comp_of:
            continue
        comp_of[root] = root
        parent[root] = None
        parent_edge[root] = None
        stack = [root]
        while stack:
            v = stack.pop()
            for other, e in adj[v]:
                if other in comp_of:
                    if parent_edge[v] != e:
                        raise PreconditionError("tree edge set contains a cycle")
                    continue
                comp_of[other] = root
                parent[other] = v
                parent_edge[other] = e
                stack.append(other)
    for e in base.edge_ids():
        u, w = base.ends(e)
        if comp_of[u] != comp_of[w]:
            raise PreconditionError(f"tree edge set does not span: edge {e!r}")

    def path(u, w) -> List:
        depth: Dict = {}

        def depth_of(v):
            d = 0
            while parent[v] is not None:
                v = parent[v]
                d += 1
            return d

        du, dw = depth_of(u), depth_of(w)
        edges: List = []
        eu: List = []
        ew: List = []
        while du > dw:
            eu.append(parent_edge[u])
            u = parent[u]
            du -= 1
        while dw > du:
            ew.append(parent_edge[w])
            w = parent[w]
            dw -= 1
        while u != w:
            eu.append(parent_edge[u])
            ew.append(parent_edge[w])
            u = parent[u]
            w = parent[w]
        return eu + ew[::-1]

    return path


def fundamental_graph(p: PlaneMultigraph, tset: Iterable) -> LabeledGraph:
    """Bipartite graph on the edges of P: a non-tree edge r is adjacent to
    exactly the tree edges on the tree path between r's endpoints (its
    fundamental cycle).  Loops of P become isolated vertices."""
    base = p.base
    tset = frozenset(tset)
    unknown = tset - set(base.edge_ids())
    if unknown:
        raise PreconditionError(f"unknown tree edges {sorted(unknown)!r}")
    path = _tree_paths(base, tset)
    edges: List[Tuple] = []
    for r in base.edge_ids():
        if r in tset or base.is_loop(r):
            continue
        u, w = base.ends(r)
        for l in path(u, w):
            edges.append((r, l))
    return LabeledGraph(base.edge_ids(), edges)


def theorem2_forward(p: PlaneMultigraph, tset: Optional[Iterable] = None):
    """Fundamental graph C of (P, T) together with the Hadamard set E∖T.

    Verifies, at tableau level, that the two stabilizer families of the
    correspondence hold: X_r Z_{F_r∖{r}} and X_t Z_{F_t⁻¹} stabilize |C⟩, and
    every planar-code generator of P stabilizes H_{E∖T}|C⟩.  A failure raises
    TheoremViolation.
    """
    tset = frozenset(spanning_tree(p) if tset is None else tset)
    c = fundamental_graph(p, tset)
    qubits = c.labels
    pos = {e: i for i, e in enumerate(qubits)}
    hset = frozenset(set(p.base.edge_ids()) - tset)
    tab = graph_state_tableau(c)
    for r in qubits:
        mask = 0
        for u in c.neighbors(r):
            mask |= 1 << pos[u]
        op = PauliOperator(qubits, 1 << pos[r], mask, 1)
        if not is_stabilized(tab, op):
            raise TheoremViolation(f"fundamental-cycle stabilizer fails at {r!r}")
    conj = apply_hadamards(tab, hset)
    for op in planar_code_stabilizers(p):
        if not is_stabilized(conj, op):
            raise TheoremViolation("planar-code generator not stabilized after Hadamards")
    return c, hset


def theorem2_converse(d: ChordDiagram, sideK: Iterable) -> PlaneMultigraph:
    """Plane multigraph P whose fundamental graph w.r.t. the sideK tree edges
    is the (bipartite) interlacement graph of d.

    The regions cut out by the sideK chords become the vertices, sideK chords
    the tree edges, and every other letter an edge between the regions of its
    endpoints; the rotation at each region is its boundary walk.
    """
    c = interlacement_graph(d)
    kset = frozenset(sideK)
    for u, v in c.edges():
        if (u in kset) == (v in kset):
            raise PreconditionError("sideK is not a color class of the interlacement graph")
    reg = _Regions(d, kset)
    edges: Dict = {t: (sides[0], sides[1]) for t, sides in reg.k_sides.items()}
    for t in d.letters:
        if t not in kset:
            edges[t] = (reg.end_region[(t, 0)], reg.end_region[(t, 1)])
    base = LabeledMultigraph(range(reg.region_count), edges)
    rotation = {rid: tuple(walk) for rid, walk in enumerate(reg.rotation)}
    return PlaneMultigraph(base, rotation)


# -- JSON ---------------------------------------------------------------------


def plane_to_json(p: PlaneMultigraph) -> str:
    doc = {
        "vertices": list(p.base.vertices),
        "edges": [
            {"id": e, "ends": list(p.base.ends(e))} for e in p.base.edge_ids()
        ],
        "rotation": {
            str(v): [[e, end] for e, end in p.rotation[v]] for v in p.base.vertices
        },
    }
    return json.dumps(doc, separators=(",", ":"))


def plane_from_json(text: str) -> PlaneMultigraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"bad JSON: {exc}", offset=exc.pos) from None
    try:
        vertices = doc["vertices"]
        edges = {item["id"]: tuple(item["ends"]) for item in doc["edges"]}
        rotation_raw = doc["rotation"]
    except (KeyError, TypeError) as exc:
        raise GraphParseError(f"missing or malformed field: {exc}") from None
    base = LabeledMultigraph(vertices, edges)
    by_name = {str(v): v for v in base.vertices}
    rotation: Dict = {}
    for key, ends in rotation_raw.items():
        if key not in by_name:
            raise GraphParseError(f"rotation names unknown vertex {key!r}")
        rotation[by_name[key]] = [(e, end) for e, end in ends]
    return PlaneMultigraph(base, rotation)
