"""Labeled simple graphs and the local-complementation toolbox.

The graph type is immutable and hashable: vertex labels are kept in sorted
order and adjacency is stored as one int bitset per vertex, so a graph *is*
its own canonical form and can be dropped into sets during orbit searches.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import BoundExceeded, InvalidVertexError, NotAnEdgeError, OrbitCapExceeded, PreconditionError

Label = Hashable

__all__ = [
    "LabeledGraph",
    "LabeledMultigraph",
    "VertexMultiset",
    "local_complement",
    "pivot",
    "delete_vertex",
    "lc_orbit",
    "count_lc_orbit",
    "pivot_orbit",
    "lc_sequence",
    "is_vertex_minor",
    "is_pivot_minor",
]


class LabeledGraph:
    """Simple undirected graph with ordered, meaningful vertex labels.

    Labels may be any mutually comparable hashables (ints, strings, tuples).
    Instances are immutable; all operations return new graphs.
    """

    __slots__ = ("labels", "_index", "_rows", "_hash")

    def __init__(self, labels: Iterable[Label], edges: Iterable[Tuple[Label, Label]] = ()):
        lab = tuple(sorted(set(labels)))
        index = {u: i for i, u in enumerate(lab)}
        rows = [0] * len(lab)
        for u, v in edges:
            if u not in index or v not in index:
                raise InvalidVertexError(f"edge ({u!r}, {v!r}) uses unknown vertex")
            if u == v:
                raise PreconditionError(f"self-loop at {u!r} not allowed in a simple graph")
            i, j = index[u], index[v]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        object.__setattr__(self, "labels", lab)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_rows", tuple(rows))
        object.__setattr__(self, "_hash", hash((lab, self._rows)))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("LabeledGraph is immutable")

    @classmethod
    def _from_rows(cls, labels: Tuple[Label, ...], rows: Sequence[int]) -> "LabeledGraph":
        """Internal fast path; ``labels`` must already be sorted and rows symmetric."""
        g = object.__new__(cls)
        object.__setattr__(g, "labels", labels)
        object.__setattr__(g, "_index", {u: i for i, u in enumerate(labels)})
        object.__setattr__(g, "_rows", tuple(rows))
        object.__setattr__(g, "_hash", hash((labels, g._rows)))
        return g

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, u: Label) -> int:
        try:
            return self._index[u]
        except KeyError:
            raise InvalidVertexError(f"unknown vertex {u!r}") from None

    def row(self, i: int) -> int:
        return self._rows[i]

    def rows(self) -> Tuple[int, ...]:
        return self._rows

    def has_vertex(self, u: Label) -> bool:
        return u in self._index

    def has_edge(self, u: Label, v: Label) -> bool:
        return bool(self._rows[self.index(u)] >> self.index(v) & 1)

    def neighbors(self, u: Label) -> Tuple[Label, ...]:
        m = self._rows[self.index(u)]
        return tuple(self.labels[i] for i in _bits(m))

    def degree(self, u: Label) -> int:
        return self._rows[self.index(u)].bit_count()

    def edges(self) -> List[Tuple[Label, Label]]:
        out = []
        for i, r in enumerate(self._rows):
            r >>= i + 1
            j = i + 1
            while r:
                if r & 1:
                    out.append((self.labels[i], self.labels[j]))
                r >>= 1
                j += 1
        return out

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LabeledGraph)
            and self.labels == other.labels
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"LabeledGraph({list(self.labels)!r}, {self.edges()!r})"

    # -- derived structure -------------------------------------------------

    def components(self) -> List[Tuple[Label, ...]]:
        """Connected components, each as a sorted label tuple."""
        seen = 0
        comps = []
        for i in range(self.n):
            if seen >> i & 1:
                continue
            comp = 1 << i
            frontier = 1 << i
            while frontier:
                nxt = 0
                for j in _bits(frontier):
                    nxt |= self._rows[j]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(tuple(self.labels[j] for j in _bits(comp)))
        return comps

    def bipartition(self) -> Optional[Tuple[FrozenSet[Label], FrozenSet[Label]]]:
        """A proper 2-coloring as (side containing each component's lowest
        vertex, other side), or None if some component has an odd cycle."""
        color: Dict[int, int] = {}
        for i in range(self.n):
            if i in color:
                continue
            color[i] = 0
            stack = [i]
            while stack:
                j = stack.pop()
                for k in _bits(self._rows[j]):
                    if k not in color:
                        color[k] = color[j] ^ 1
                        stack.append(k)
                    elif color[k] == color[j]:
                        return None
        side0 = frozenset(self.labels[i] for i, c in color.items() if c == 0)
        side1 = frozenset(self.labels) - side0
        return side0, side1

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def subgraph(self, keep: Iterable[Label]) -> "LabeledGraph":
        keep_set = set(keep)
        for u in keep_set:
            self.index(u)
        labels = tuple(u for u in self.labels if u in keep_set)
        keep_mask = 0
        for u in keep_set:
            keep_mask |= 1 << self._index[u]
        idx = [self._index[u] for u in labels]
        rows = [_compress(self._rows[i] & keep_mask, keep_mask) for i in idx]
        return LabeledGraph._from_rows(labels, rows)

    def relabeled(self, mapping: Dict[Label, Label]) -> "LabeledGraph":
        labels = [mapping.get(u, u) for u in self.labels]
        if len(set(labels)) != self.n:
            raise PreconditionError("relabeling is not injective")
        return LabeledGraph(labels, [(mapping.get(u, u), mapping.get(v, v)) for u, v in self.edges()])


class VertexMultiset:
    """A multiplicity function on vertex labels; absent labels have count 0.

    Accepts a mapping or an iterable of (vertex, count) pairs (repeated pairs
    are summed).  Zero counts are dropped, so two multisets are equal exactly
    when they assign the same positive counts.
    """

    __slots__ = ("_map", "_items")

    def __init__(self, mult=()):
        pairs = mult.items() if isinstance(mult, dict) else mult
        m: Dict[Label, int] = {}
        for v, c in pairs:
            if not isinstance(c, int) or c < 0:
                raise PreconditionError(f"multiplicity of {v!r} must be a nonnegative integer")
            if c:
                m[v] = m.get(v, 0) + c
        object.__setattr__(self, "_map", m)
        object.__setattr__(self, "_items", tuple(sorted(m.items())))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("VertexMultiset is immutable")

    def mult(self, v: Label) -> int:
        return self._map.get(v, 0)

    __getitem__ = mult

    def support(self) -> Tuple[Label, ...]:
        return tuple(v for v, _ in self._items)

    def items(self) -> Tuple[Tuple[Label, int], ...]:
        return self._items

    def total(self) -> int:
        return sum(c for _, c in self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexMultiset) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        return f"VertexMultiset({dict(self._items)!r})"


class LabeledMultigraph:
    """Undirected multigraph with named edges; parallel edges and loops allowed.

    ``edges`` maps an edge id to its (unordered) pair of endpoints.  Edge ids
    are preserved verbatim: downstream constructions identify multigraph edges
    with external objects (chord letters, qubits), so identity matters more
    than position.  Immutable.
    """

    __slots__ = ("_vertices", "_edges", "_incident")

    def __init__(self, vertices: Iterable[Label], edges=()):
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        pairs = edges.items() if isinstance(edges, dict) else edges
        emap: Dict[Label, Tuple[Label, Label]] = {}
        incident: Dict[Label, List[Label]] = {v: [] for v in verts}
        for eid, ends in pairs:
            u, v = ends
            if u not in vset or v not in vset:
                raise InvalidVertexError(f"edge {eid!r} uses unknown vertex")
            if eid in emap:
                raise PreconditionError(f"duplicate edge id {eid!r}")
            emap[eid] = (u, v)
            incident[u].append(eid)
            if v != u:
                incident[v].append(eid)
        object.__setattr__(self, "_vertices", verts)
        object.__setattr__(self, "_edges", emap)
        object.__setattr__(self, "_incident", {v: tuple(sorted(es)) for v, es in incident.items()})

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("LabeledMultigraph is immutable")

    @property
    def vertices(self) -> Tuple[Label, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def edge_ids(self) -> Tuple[Label, ...]:
        return tuple(sorted(self._edges))

    def edge_count(self) -> int:
        return len(self._edges)

    def ends(self, eid: Label) -> Tuple[Label, Label]:
        if eid not in self._edges:
            raise NotAnEdgeError(f"unknown edge id {eid!r}")
        return self._edges[eid]

    def is_loop(self, eid: Label) -> bool:
        u, v = self.ends(eid)
        return u == v

    def incident(self, v: Label) -> Tuple[Label, ...]:
        """Edge ids touching ``v`` (a loop is listed once)."""
        if v not in self._incident:
            raise InvalidVertexError(f"unknown vertex {v!r}")
        return self._incident[v]

    def degree(self, v: Label) -> int:
        return sum(2 if self.is_loop(e) else 1 for e in self.incident(v))

    def has_vertex(self, v: Label) -> bool:
        return v in self._incident

    def _key(self):
        return (self._vertices, tuple(sorted((e, tuple(sorted(uv))) for e, uv in self._edges.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, LabeledMultigraph) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"LabeledMultigraph(vertices={list(self._vertices)!r}, edges={self._edges!r})"


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _compress(value: int, mask: int) -> int:
    """Gather the bits of ``value`` selected by ``mask`` into the low positions."""
    out = 0
    k = 0
    while mask:
        low = mask & -mask
        if value & low:
            out |= 1 << k
        k += 1
        mask ^= low
    return out


# -- elementary moves -------------------------------------------------------


def local_complement(g: LabeledGraph, u: Label) -> LabeledGraph:
    """Toggle every edge between two neighbours of ``u``.

    Involution: applying twice returns the original graph.
    """
    i = g.index(u)
    m = g.row(i)
    rows = list(g.rows())
    for j in _bits(m):
        rows[j] ^= m & ~(1 << j)
    return LabeledGraph._from_rows(g.labels, rows)


def pivot(g: LabeledGraph, u: Label, v: Label) -> LabeledGraph:
    """Pivot on the edge ``{u, v}``: local complement at u, v, u again.

    Raises NotAnEdgeError when u and v are not adjacent.  The result does not
    depend on the order of u and v.
    """
    if not g.has_edge(u, v):
        raise NotAnEdgeError(f"pivot requires an edge between {u!r} and {v!r}")
    return local_complement(local_complement(local_complement(g, u), v), u)


def delete_vertex(g: LabeledGraph, u: Label) -> LabeledGraph:
    i = g.index(u)
    labels = g.labels[:i] + g.labels[i + 1 :]
    mask = ~(1 << i)
    rows = []
    for j, r in enumerate(g.rows()):
        if j == i:
            continue
        r &= mask
        rows.append((r & ((1 << i) - 1)) | ((r >> (i + 1)) << i))
    return LabeledGraph._from_rows(labels, rows)


# -- orbits ------------------------------------------------------------------


def lc_orbit(g: LabeledGraph, cap: int = 1_000_000) -> Set[LabeledGraph]:
    """All graphs reachable from ``g`` by local complementations (BFS).

    Raises OrbitCapExceeded as soon as the orbit grows past ``cap``.
    """
    if cap < 1:
        raise PreconditionError("orbit cap must be at least 1")
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            for u in h.labels:
                h2 = local_complement(h, u)
                if h2 not in seen:
                    if len(seen) >= cap:
                        raise OrbitCapExceeded(cap)
                    seen.add(h2)
                    nxt.append(h2)
        frontier = nxt
    return seen


def count_lc_orbit(g: LabeledGraph, cap: int = 1_000_000) -> int:
    return len(lc_orbit(g, cap))


def pivot_orbit(g: LabeledGraph, cap: int = 1_000_000) -> Set[LabeledGraph]:
    """All graphs reachable by pivots on edges (BFS with the same cap rule as lc_orbit)."""
    if cap < 1:
        raise PreconditionError("orbit cap must be at least 1")
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            for u, v in h.edges():
                h2 = pivot(h, u, v)
                if h2 not in seen:
                    if len(seen) >= cap:
                        raise OrbitCapExceeded(cap)
                    seen.add(h2)
                    nxt.append(h2)
        frontier = nxt
    return seen


def lc_sequence(g: LabeledGraph, vertices: Iterable[Label]) -> LabeledGraph:
    """Apply local complementations at ``vertices`` left to right."""
    for u in vertices:
        g = local_complement(g, u)
    return g


# -- minor relations ---------------------------------------------------------


def _minor_search(h: LabeledGraph, g: LabeledGraph, moves: str, max_n: int) -> bool:
    if not set(h.labels) <= set(g.labels):
        raise PreconditionError("target vertex set must be contained in the host's")
    if g.n > max_n:
        raise BoundExceeded(f"host graph has {g.n} > {max_n} vertices; raise max_n to search anyway")
    target_labels = set(h.labels)
    seen = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for cur in frontier:
            if cur.labels == h.labels:
                if cur == h:
                    return True
                candidates = []
            else:
                candidates = [delete_vertex(cur, u) for u in cur.labels if u not in target_labels]
            if moves == "lc":
                candidates.extend(local_complement(cur, u) for u in cur.labels)
            else:
                candidates.extend(pivot(cur, u, v) for u, v in cur.edges())
            for h2 in candidates:
                if h2 not in seen:
                    seen.add(h2)
                    nxt.append(h2)
        frontier = nxt
    return False


def is_vertex_minor(h: LabeledGraph, g: LabeledGraph, max_n: int = 10) -> bool:
    """Is ``h`` reachable from ``g`` by local complementations and deletions?

    Deletions are restricted to vertices outside ``h``'s label set, so the
    result is the labeled vertex-minor relation.  Exhaustive BFS, memoized on
    the reached graph; intended for hosts with at most ``max_n`` vertices.
    """
    return _minor_search(h, g, "lc", max_n)


def is_pivot_minor(h: LabeledGraph, g: LabeledGraph, max_n: int = 10) -> bool:
    """Same search as is_vertex_minor but with pivots as the only edit move."""
    return _minor_search(h, g, "pivot", max_n)
