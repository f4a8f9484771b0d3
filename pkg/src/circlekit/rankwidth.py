"""Cut-rank, exact rank-width, comparability grids, and their chord diagrams.

Rank-width is computed by a subset DP over induced bipartitions; a much
slower enumeration over all ternary leaf-labeled trees is kept as an
independent oracle for cross-checking at small n.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Tuple

from . import gf2
from .chords import ChordDiagram
from .errors import BoundExceeded, InvalidVertexError, PreconditionError, TheoremViolation
from .graphs import LabeledGraph

__all__ = [
    "cut_rank",
    "RankDecomposition",
    "rank_width_exact",
    "rank_width_by_tree_enumeration",
    "comparability_grid",
    "comparability_grid_diagram",
    "verify_one_third_lemma",
]


def cut_rank(g: LabeledGraph, x: Iterable) -> int:
    """GF(2) rank of the adjacency block between X and its complement."""
    mask = 0
    for u in x:
        if not g.has_vertex(u):
            raise InvalidVertexError(f"unknown vertex {u!r}")
        mask |= 1 << g.index(u)
    return _cut_rank_mask(g.rows(), mask, (1 << g.n) - 1)


def _cut_rank_mask(rows: Tuple[int, ...], mask: int, full: int) -> int:
    comp = full & ~mask
    sub = []
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        sub.append(rows[i] & comp)
        m &= m - 1
    return gf2.rank(sub)


@dataclass(frozen=True)
class RankDecomposition:
    """A ternary leaf-labeled tree in rooted-binary form.

    ``shape`` nests 2-tuples down to leaf *indices* into ``labels`` (indices
    keep the structure unambiguous when labels are themselves tuples); each
    subtree's leaf set is one side of a tree-edge cut, and ``width`` is the
    largest cut-rank among them.
    """

    shape: object
    labels: Tuple
    width: int

    def leaves(self) -> Tuple:
        out: List[int] = []
        _collect_leaves(self.shape, out)
        return tuple(self.labels[i] for i in out)

    def clusters(self) -> List[FrozenSet]:
        """Leaf sets of all strict subtrees (the cuts of the decomposition)."""
        out: List[FrozenSet] = []

        def walk(node) -> FrozenSet:
            if isinstance(node, int):
                cluster = frozenset([self.labels[node]])
            else:
                cluster = walk(node[0]) | walk(node[1])
            out.append(cluster)
            return cluster

        walk(self.shape)
        out.pop()  # the full leaf set is not a cut
        return out

    def to_text(self) -> str:
        return _shape_text(self.shape, self.labels)

    def to_json_obj(self):
        return _shape_json(self.shape, self.labels)

    def check(self, g: LabeledGraph) -> None:
        """Validate leaf bijection and the claimed width against g."""
        if sorted(self.leaves(), key=repr) != sorted(g.labels, key=repr):
            raise PreconditionError("decomposition leaves do not match the vertex set")
        widths = [cut_rank(g, c) for c in self.clusters()]
        got = max(widths, default=0)
        if got != self.width:
            raise TheoremViolation(
                f"decomposition width {self.width} but cuts give {got}"
            )


def _collect_leaves(node, out: List[int]) -> None:
    if isinstance(node, int):
        out.append(node)
    else:
        _collect_leaves(node[0], out)
        _collect_leaves(node[1], out)


def _shape_text(node, labels) -> str:
    if isinstance(node, int):
        return str(labels[node]).replace(" ", "")
    return f"({_shape_text(node[0], labels)},{_shape_text(node[1], labels)})"


def _shape_json(node, labels):
    if isinstance(node, int):
        lab = labels[node]
        return list(lab) if isinstance(lab, tuple) else lab
    return [_shape_json(node[0], labels), _shape_json(node[1], labels)]


def rank_width_exact(g: LabeledGraph, max_n: int = 12) -> Tuple[int, Optional[RankDecomposition]]:
    """Exact rank-width with a witness decomposition.

    Subset DP: f({v}) = r({v}) and
    f(X) = min over proper bipartitions X = X1 ∪ X2 of
    max(f(X1), f(X2), r(X1), r(X2)); the answer is f(V).
    """
    n = g.n
    if n > max_n:
        raise BoundExceeded(f"rank-width DP limited to {max_n} vertices")
    if n == 0:
        return 0, None
    labels = g.labels
    if n == 1:
        return 0, RankDecomposition(0, labels, 0)
    rows = g.rows()
    full = (1 << n) - 1
    size = 1 << n
    rank_of = [0] * size
    for mask in range(1, size):
        comp = full & ~mask
        if comp < mask:
            rank_of[mask] = rank_of[comp]
        else:
            rank_of[mask] = _cut_rank_mask(rows, mask, full)
    f = [0] * size
    choice = [0] * size
    for i in range(n):
        f[1 << i] = rank_of[1 << i]
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        lo = mask & -mask
        best = None
        best_sub = 0
        sub = (mask - 1) & mask
        while sub:
            if sub & lo:
                other = mask ^ sub
                cand = max(f[sub], f[other], rank_of[sub], rank_of[other])
                if best is None or cand < best:
                    best = cand
                    best_sub = sub
            sub = (sub - 1) & mask
        f[mask] = best
        choice[mask] = best_sub

    def build(mask: int):
        if mask & (mask - 1) == 0:
            return mask.bit_length() - 1
        sub = choice[mask]
        return (build(sub), build(mask ^ sub))

    return f[full], RankDecomposition(build(full), labels, f[full])


def _ternary_trees(k: int) -> Iterator[List[Tuple[int, int]]]:
    """Edge lists of all leaf-labeled trees with internal degree 3.

    Leaves are 0..k-1, internal nodes are negative.  Trees are generated by
    inserting each new leaf into every edge of every smaller tree.
    """
    if k == 1:
        yield []
        return
    if k == 2:
        yield [(0, 1)]
        return
    for smaller in _ternary_trees(k - 1):
        for idx in range(len(smaller)):
            u, v = smaller[idx]
            mid = -(k - 1)
            tree = smaller[:idx] + smaller[idx + 1 :]
            tree += [(u, mid), (mid, v), (mid, k - 1)]
            yield tree


def rank_width_by_tree_enumeration(g: LabeledGraph, max_n: int = 7) -> int:
    """Brute-force rank-width: minimum over every ternary leaf-labeled tree
    of its maximum edge cut-rank.  Independent of the subset DP."""
    n = g.n
    if n > max_n:
        raise BoundExceeded(f"tree enumeration limited to {max_n} vertices")
    if n <= 1:
        return 0
    rows = g.rows()
    full = (1 << n) - 1
    best = None
    for edges in _ternary_trees(n):
        adj: Dict[int, List[Tuple[int, int]]] = {}
        for ei, (u, v) in enumerate(edges):
            adj.setdefault(u, []).append((v, ei))
            adj.setdefault(v, []).append((u, ei))
        width = 0
        for ei, (u, v) in enumerate(edges):
            mask = _leaf_mask_below(adj, u, ei, n)
            width = max(width, _cut_rank_mask(rows, mask, full))
            if best is not None and width >= best:
                break
        if best is None or width < best:
            best = width
    return best


def _leaf_mask_below(adj, start: int, banned_edge: int, n: int) -> int:
    mask = 0
    stack = [start]
    seen = {start}
    while stack:
        node = stack.pop()
        if 0 <= node < n:
            mask |= 1 << node
        for other, ei in adj.get(node, ()):
            if ei == banned_edge or other in seen:
                continue
            seen.add(other)
            stack.append(other)
    return mask


def comparability_grid(m: int, n: int) -> LabeledGraph:
    """Graph on {1..m}×{1..n}: (i,j) ~ (i',j') iff the pairs are comparable
    coordinate-wise (both ≤ or both ≥) and distinct."""
    if m < 1 or n < 1:
        raise PreconditionError("grid sides must be at least 1")
    vertices = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    edges = []
    for (i, j), (i2, j2) in combinations(vertices, 2):
        if (i <= i2 and j <= j2) or (i >= i2 and j >= j2):
            edges.append(((i, j), (i2, j2)))
    return LabeledGraph(vertices, edges)


def comparability_grid_diagram(n: int) -> ChordDiagram:
    """Chord diagram realizing comparability_grid(n, n).

    One arc of the circle carries the row blocks (row i ascending in j), the
    opposite arc the column blocks (column j ascending in i); chords that
    would share an endpoint get adjacent distinct points, ordered so that
    comparable pairs cross.
    """
    if n < 1:
        raise PreconditionError("grid side must be at least 1")
    word: List[Tuple[int, int]] = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            word.append((i, j))
    for j in range(1, n + 1):
        for i in range(1, n + 1):
            word.append((i, j))
    return ChordDiagram(tuple(word))


def verify_one_third_lemma(n: int, max_n: int = 4) -> Dict:
    """Exhaustively check, over every subset X of the n×n comparability
    grid: |X| ≤ n²/2 and r(X) ≤ n/4 imply |X| < n²/3.  Any counterexample
    lands in the report's ``violations``."""
    if n > max_n:
        raise BoundExceeded(f"one-third scan limited to {max_n}×{max_n} grids")
    start = time.monotonic()
    g = comparability_grid(n, n)
    rows = g.rows()
    nn = g.n
    full = (1 << nn) - 1
    violations: List[Dict] = []
    for mask in range(1 << nn):
        k = bin(mask).count("1")
        if 2 * k > nn or 3 * k < nn:
            continue
        r = _cut_rank_mask(rows, mask, full)
        if 4 * r > n:
            continue
        violations.append(
            {
                "subset": sorted(
                    list(g.labels[i]) for i in range(nn) if mask >> i & 1
                ),
                "size": k,
                "cut_rank": r,
            }
        )
    return {
        "n": n,
        "subsets": 1 << nn,
        "violations": violations,
        "elapsed": time.monotonic() - start,
    }
