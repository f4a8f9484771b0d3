"""Exhaustive desk-scale verification runs and the instance generators they
sweep over.

Each run_* function executes one of the structural checks end to end and
returns a RunReport; a reported "theorem-violation" means a property the
library promises unconditionally failed on a generated instance, which is
the loudest possible bug alarm, so the reports never swallow it.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Sequence, Tuple

from . import gf2
from .chords import ChordDiagram, enumerate_diagrams, interlacement_graph, is_circle_graph, prop5_embed
from .errors import CircleKitError, PreconditionError, TheoremViolation
from .graphs import LabeledGraph, LabeledMultigraph, count_lc_orbit, lc_orbit, pivot_orbit
from .planar import PlaneMultigraph, faces, fundamental_graph, planar_code_stabilizers, spanning_tree, theorem2_forward
from .rankwidth import verify_one_third_lemma
from .rlc import RlcInstance, enumerate_valid_multisets, find_nontrivial_r_incident, lemma2_witness, r_local_complement
from .stabilizer import lc_equivalent, measure_pauli

__all__ = [
    "RunReport",
    "thread_count",
    "parallel_map",
    "grid_plane",
    "theta_plane",
    "book_plane",
    "fan_plane",
    "random_plane_multigraph",
    "plane_suite",
    "graph_suite",
    "orbit_report",
    "run_theorem1",
    "run_theorem2",
    "run_lemma2",
    "run_prop5",
    "run_onethird",
    "run_remark",
    "run_verifier",
]


@dataclass
class RunReport:
    command: str
    inputs: Dict
    result: Dict
    elapsed_ms: int
    status: str  # ok | theorem-violation | error

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "inputs": self.inputs,
                "result": self.result,
                "elapsed_ms": self.elapsed_ms,
                "status": self.status,
            },
            sort_keys=True,
        )


def thread_count() -> int:
    """Worker cap from CIRCLEKIT_THREADS (default 1)."""
    raw = os.environ.get("CIRCLEKIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn: Callable, items: Sequence) -> List:
    """Map preserving input order; uses a thread pool when CIRCLEKIT_THREADS
    allows more than one worker."""
    workers = thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _report(command: str, inputs: Dict, body: Callable[[], Dict]) -> RunReport:
    start = time.monotonic()
    try:
        result = body()
        status = "ok"
    except TheoremViolation as exc:
        result = {"violation": str(exc)}
        status = "theorem-violation"
    elapsed = int((time.monotonic() - start) * 1000)
    return RunReport(command, inputs, result, elapsed, status)


# -- plane multigraph generators ------------------------------------------------


class _PlaneBuilder:
    """Grow a plane multigraph one genus-preserving insertion at a time.

    A corner is (vertex, index): a new edge-end slides into the rotation at
    that index.  Corners of one face are exactly the positions swept by its
    walk, so adding an edge between two corners of a single face splits that
    face and keeps the embedding spherical.
    """

    def __init__(self):
        self.rotation: Dict[int, List[Tuple[int, int]]] = {0: []}
        self.edge_ends: Dict[int, Tuple[int, int]] = {}
        self.next_vertex = 1
        self.next_edge = 0

    def snapshot(self) -> PlaneMultigraph:
        base = LabeledMultigraph(range(self.next_vertex), dict(self.edge_ends))
        return PlaneMultigraph(base, {v: tuple(r) for v, r in self.rotation.items()})

    def corners_by_face(self) -> List[List[Tuple[int, int]]]:
        """Groups of corners, one group per face of the current embedding."""
        p = self.snapshot()
        pos = {
            (e, end): (v, i)
            for v, rot in self.rotation.items()
            for i, (e, end) in enumerate(rot)
        }
        groups: List[List[Tuple[int, int]]] = []
        for f in faces(p):
            cs = []
            for e, tail in f.boundary:
                v, i = pos[(e, 1 - tail)]
                cs.append((v, i + 1))
            if cs:
                groups.append(cs)
        for v, rot in self.rotation.items():
            if not rot:
                groups.append([(v, 0)])
        return groups

    def add_pendant(self, corner: Tuple[int, int]) -> None:
        v, i = corner
        e = self.next_edge
        self.next_edge += 1
        w = self.next_vertex
        self.next_vertex += 1
        self.edge_ends[e] = (v, w)
        self.rotation[v].insert(i, (e, 0))
        self.rotation[w] = [(e, 1)]

    def add_chord(self, c1: Tuple[int, int], c2: Tuple[int, int]) -> None:
        """Join two corners of one face (loops allowed, including c1 = c2)."""
        e = self.next_edge
        self.next_edge += 1
        (v1, i1), (v2, i2) = c1, c2
        self.edge_ends[e] = (v1, v2)
        if v1 != v2:
            self.rotation[v1].insert(i1, (e, 0))
            self.rotation[v2].insert(i2, (e, 1))
        elif i1 == i2:
            self.rotation[v1].insert(i1, (e, 0))
            self.rotation[v1].insert(i1, (e, 1))
        else:
            hi, lo = max(i1, i2), min(i1, i2)
            first_end = 1 if hi == i1 else 0
            self.rotation[v1].insert(hi, (e, first_end))
            self.rotation[v1].insert(lo, (e, 1 - first_end))


def random_plane_multigraph(rng: random.Random, max_edges: int = 12) -> PlaneMultigraph:
    """A random sphere embedding built from genus-preserving insertions."""
    b = _PlaneBuilder()
    target = rng.randint(1, max_edges)
    while b.next_edge < target:
        groups = b.corners_by_face()
        if b.next_edge == 0 or rng.random() < 0.4:
            group = groups[rng.randrange(len(groups))]
            b.add_pendant(group[rng.randrange(len(group))])
        else:
            group = groups[rng.randrange(len(groups))]
            c1 = group[rng.randrange(len(group))]
            c2 = group[rng.randrange(len(group))]
            b.add_chord(c1, c2)
    p = b.snapshot()
    faces(p)  # embedding sanity: raises if the builder ever slips
    return p


def grid_plane(rows: int, cols: int) -> PlaneMultigraph:
    """rows×cols grid with its standard embedding; edge ids ("h", i, j) and
    ("v", i, j)."""
    if rows < 1 or cols < 1:
        raise PreconditionError("grid sides must be at least 1")
    vertices = [(i, j) for i in range(rows) for j in range(cols)]
    edges = {}
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                edges[("h", i, j)] = ((i, j), (i, j + 1))
            if i + 1 < rows:
                edges[("v", i, j)] = ((i, j), (i + 1, j))
    rotation = {}
    for i, j in vertices:
        order = []
        if i > 0:
            order.append((("v", i - 1, j), 1))
        if j + 1 < cols:
            order.append((("h", i, j), 0))
        if i + 1 < rows:
            order.append((("v", i, j), 0))
        if j > 0:
            order.append((("h", i, j - 1), 1))
        rotation[(i, j)] = order
    return PlaneMultigraph(LabeledMultigraph(vertices, edges), rotation)


def theta_plane(k: int) -> PlaneMultigraph:
    """Two vertices joined by k parallel edges."""
    if k < 1:
        raise PreconditionError("need at least one edge")
    base = LabeledMultigraph((0, 1), {i: (0, 1) for i in range(k)})
    rotation = {
        0: [(i, 0) for i in range(k)],
        1: [(i, 1) for i in reversed(range(k))],
    }
    return PlaneMultigraph(base, rotation)


def book_plane(pages: int) -> PlaneMultigraph:
    """Triangular book: ``pages`` triangles stacked on the spine edge 0-1."""
    if pages < 1:
        raise PreconditionError("need at least one page")
    vertices = [0, 1] + [w + 2 for w in range(pages)]
    spine = ("spine", 0)
    edges: Dict = {spine: (0, 1)}
    for w in vertices[2:]:
        edges[("a", w)] = (0, w)
        edges[("b", w)] = (w, 1)
    rotation = {
        0: [(spine, 0)] + [(("a", w), 0) for w in vertices[2:]],
        1: [(spine, 1)] + [(("b", w), 1) for w in reversed(vertices[2:])],
    }
    for w in vertices[2:]:
        rotation[w] = [(("a", w), 1), (("b", w), 0)]
    return PlaneMultigraph(LabeledMultigraph(vertices, edges), rotation)


def fan_plane(k: int) -> PlaneMultigraph:
    """Fan: a path on k vertices plus an apex (vertex 0) joined to each."""
    if k < 2:
        raise PreconditionError("need a path of at least two vertices")
    vertices = list(range(k + 1))
    edges: Dict = {}
    for i in range(1, k + 1):
        edges[("spoke", i)] = (0, i)
        if i < k:
            edges[("path", i)] = (i, i + 1)
    rotation = {0: [(("spoke", i), 0) for i in reversed(range(1, k + 1))]}
    for i in range(1, k + 1):
        order = []
        if i > 1:
            order.append((("path", i - 1), 1))
        order.append((("spoke", i), 1))
        if i < k:
            order.append((("path", i), 0))
        rotation[i] = order
    return PlaneMultigraph(LabeledMultigraph(vertices, edges), rotation)


def plane_suite(seed: int = 0, random_count: int = 200, max_edges: int = 12) -> List[PlaneMultigraph]:
    """The theorem-2 generator suite: all grids up to 3×3, theta/book/fan
    families, and seeded random embeddings."""
    out: List[PlaneMultigraph] = []
    for r in range(1, 4):
        for c in range(1, 4):
            out.append(grid_plane(r, c))
    for k in range(1, 5):
        out.append(theta_plane(k))
    for k in range(1, 5):
        out.append(book_plane(k))
    for k in range(2, 6):
        out.append(fan_plane(k))
    rng = random.Random(seed)
    for _ in range(random_count):
        out.append(random_plane_multigraph(rng, max_edges))
    return out


# -- graph suite ----------------------------------------------------------------


def graph_suite(seed: int = 0, per_size: int = 25) -> List[LabeledGraph]:
    """Desk-scale orbit-counting suite: every graph on up to 4 vertices plus
    seeded samples on 5 and 6."""
    out: List[LabeledGraph] = []
    for n in range(0, 5):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            out.append(
                LabeledGraph(range(n), [pairs[i] for i in range(len(pairs)) if mask >> i & 1])
            )
    rng = random.Random(seed)
    for n in (5, 6):
        pairs = list(combinations(range(n), 2))
        for _ in range(per_size):
            out.append(LabeledGraph(range(n), [e for e in pairs if rng.random() < 0.5]))
    return out


def orbit_report(g: LabeledGraph, cap: int = 1_000_000, recognition_n: int = 9) -> Dict:
    """LC-orbit size; for circle graphs the local-unitary orbit coincides
    with the LC orbit, so the LU count is reported as the same number."""
    lc = count_lc_orbit(g, cap)
    circle = g.n <= recognition_n and is_circle_graph(g, recognition_n) is not None
    return {
        "lc_orbit": lc,
        "is_circle": circle,
        "lu_orbit": lc if circle else None,
    }


# -- verification runs -----------------------------------------------------------


def _diagram_graphs(max_n: int) -> List[LabeledGraph]:
    out = []
    for n in range(max_n + 1):
        for d in enumerate_diagrams(n):
            out.append(interlacement_graph(d))
    return out


def run_theorem1(max_n: int = 6, rs: Tuple[int, ...] = (2, 3), orbit_cap: int = 1_000_000) -> RunReport:
    """Circle graphs admit no r-local complementation beyond the LC orbit:
    the nontrivial-instance search must come back empty, and every valid
    instance's image must already be LC-reachable."""

    def body() -> Dict:
        graphs = _diagram_graphs(max_n)
        checked = images = 0

        def one(g: LabeledGraph) -> Tuple[int, int]:
            local_images = 0
            orbit = None
            for r in rs:
                bad = find_nontrivial_r_incident(g, r, max_n=max(8, g.n))
                if bad:
                    raise TheoremViolation(
                        f"nontrivial r-incident multiset on {g.edges()!r} at r={r}: "
                        f"{bad[0]!r}"
                    )
                for rep, _size in enumerate_valid_multisets(g, r, max_n=max(8, g.n)):
                    image = r_local_complement(RlcInstance(g, rep, r))
                    if orbit is None:
                        orbit = lc_orbit(g, orbit_cap)
                    if image not in orbit:
                        raise TheoremViolation(
                            f"r-LC image escapes the LC orbit on {g.edges()!r}"
                        )
                    local_images += 1
            return 1, local_images

        for a, b in parallel_map(one, graphs):
            checked += a
            images += b
        return {"graphs": checked, "valid_images": images, "r": list(rs)}

    return _report("theorem1", {"max_n": max_n, "r": list(rs)}, body)


def run_theorem2(seed: int = 0, random_count: int = 200, max_edges: int = 12) -> RunReport:
    """Planar-code correspondence on the generator suite: stabilizer
    identities, generator count |V|+|F| = |E|+2, and exactly two redundant
    generators."""

    def body() -> Dict:
        suite = plane_suite(seed, random_count, max_edges)

        def one(p: PlaneMultigraph) -> int:
            theorem2_forward(p)  # tableau-level identity checks live inside
            ops = planar_code_stabilizers(p)
            m = p.base.edge_count()
            nv = p.base.n
            nf = len(faces(p))
            if len(ops) != nv + nf or len(ops) != m + 2 * _component_count(p):
                raise TheoremViolation(
                    f"generator count {len(ops)} != {m} + 2 per component"
                )
            vectors = [op.x | op.z << m for op in ops]
            if gf2.rank(vectors) != m:
                raise TheoremViolation("planar-code generators have wrong rank")
            return 1

        total = sum(parallel_map(one, suite))
        return {"instances": total}

    return _report(
        "theorem2",
        {"seed": seed, "random_count": random_count, "max_edges": max_edges},
        body,
    )


def _component_count(p: PlaneMultigraph) -> int:
    seen = set()
    count = 0
    base = p.base
    for v0 in base.vertices:
        if v0 in seen:
            continue
        count += 1
        stack = [v0]
        seen.add(v0)
        while stack:
            v = stack.pop()
            for e in base.incident(v):
                u, w = base.ends(e)
                other = w if v == u else u
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
    return count


def run_lemma2(max_n: int = 7) -> RunReport:
    """Every qualifying independent set in a circle graph admits an outside
    pair with exactly one common neighbour inside the set."""

    def body() -> Dict:
        instances = 0
        for n in range(max_n + 1):
            for d in enumerate_diagrams(n):
                g = interlacement_graph(d)
                for k in _qualifying_sets(g):
                    lemma2_witness(g, k)  # raises TheoremViolation when absent
                    instances += 1
        return {"instances": instances, "max_n": max_n}

    return _report("lemma2", {"max_n": max_n}, body)


def _qualifying_sets(g: LabeledGraph) -> Iterable[FrozenSet]:
    labels = g.labels
    for size in range(1, g.n + 1):
        for combo in combinations(labels, size):
            if any(g.has_edge(a, b) for a, b in combinations(combo, 2)):
                continue
            rows = [g.row(g.index(v)) for v in combo]
            if len(set(rows)) != len(rows):
                continue
            if all(g.degree(v) < 2 for v in combo):
                continue
            yield frozenset(combo)


def run_prop5(max_n: int = 5) -> RunReport:
    """Bipartite-embedding pipeline on every diagram with at most max_n
    chords: size bounds, circle recognition, and measurement recovery."""

    def body() -> Dict:
        instances = 0
        max_added = 0
        for n in range(1, max_n + 1):
            for d in enumerate_diagrams(n):
                c = interlacement_graph(d)
                b, added, p = prop5_embed(c, d)
                if b.bipartition() is None:
                    raise TheoremViolation(f"non-bipartite output for {d.word!r}")
                if b.n > 2 * n * n or len(added) > 2 * n * n - n:
                    raise TheoremViolation(f"size bound violated for {d.word!r}")
                if is_circle_graph(b, max_n=max(9, b.n)) is None:
                    raise TheoremViolation(f"output not a circle graph for {d.word!r}")
                faces(p)
                g = b
                for z in sorted(added, reverse=True):
                    g, _ = measure_pauli(g, z, "Y")
                if g != c and not lc_equivalent(g, c):
                    raise TheoremViolation(f"measurement recovery failed for {d.word!r}")
                instances += 1
                max_added = max(max_added, len(added))
        return {"instances": instances, "max_added": max_added}

    return _report("prop5", {"max_n": max_n}, body)


def run_onethird(n: int = 3) -> RunReport:
    def body() -> Dict:
        result = verify_one_third_lemma(n)
        if result["violations"]:
            raise TheoremViolation(f"one-third violations: {result['violations']!r}")
        return result

    return _report("onethird", {"n": n}, body)


def run_remark(seed: int = 0, count: int = 20, max_edges: int = 7) -> RunReport:
    """Fundamental graphs of one plane multigraph under different spanning
    trees are pivot-equivalent."""

    def body() -> Dict:
        rng = random.Random(seed)
        instances = pairs = 0
        while instances < count:
            p = random_plane_multigraph(rng, max_edges)
            trees = _all_spanning_trees(p)
            if len(trees) < 2:
                continue
            base = fundamental_graph(p, trees[0])
            orbit = pivot_orbit(base)
            for t in trees[1:]:
                if fundamental_graph(p, t) not in orbit:
                    raise TheoremViolation("spanning trees gave pivot-inequivalent graphs")
                pairs += 1
            instances += 1
        return {"instances": instances, "tree_pairs": pairs}

    return _report("remark", {"seed": seed, "count": count, "max_edges": max_edges}, body)


def _all_spanning_trees(p: PlaneMultigraph) -> List[FrozenSet]:
    base = p.base
    non_loops = [e for e in base.edge_ids() if not base.is_loop(e)]
    want = base.n - _component_count(p)
    out = []
    for combo in combinations(non_loops, want):
        try:
            fundamental_graph(p, combo)
        except CircleKitError:
            continue
        out.append(frozenset(combo))
    return out


_VERIFIERS: Dict[str, Callable[..., RunReport]] = {
    "theorem1": run_theorem1,
    "theorem2": run_theorem2,
    "lemma2": run_lemma2,
    "prop5": run_prop5,
    "onethird": run_onethird,
    "remark": run_remark,
}


def run_verifier(name: str, **params) -> RunReport:
    if name not in _VERIFIERS:
        raise PreconditionError(
            f"unknown verifier {name!r}; choose from {sorted(_VERIFIERS)}"
        )
    return _VERIFIERS[name](**params)
