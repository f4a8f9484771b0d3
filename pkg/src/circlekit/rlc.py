"""Higher-order local complementation driven by weighted vertex multisets.

An independent multiset S with level parameter r acts on a graph by toggling
the edge {a, b} exactly when the multiplicity-weighted count of common
neighbors of a and b is ≡ 2^(r-1) (mod 2^r).  Validity additionally requires
the divisibility ("incidence") conditions checked by :func:`is_r_incident`;
only valid instances are applied.

The module also provides the normalization that strips degree-≤1 support
vertices and merges twins (reducing any valid instance to a plain
local-complementation set plus a small residue), the exhaustive certifier
:func:`find_nontrivial_r_incident`, and the common-neighbor witness search
:func:`lemma2_witness`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterator, List, Sequence, Tuple

from .errors import (
    BoundExceeded,
    PreconditionError,
    RlcValidityError,
    TheoremViolation,
)
from .graphs import Label, LabeledGraph, VertexMultiset, _bits

__all__ = [
    "RlcInstance",
    "NormalizationResult",
    "is_independent",
    "is_r_incident",
    "r_local_complement",
    "normalize_multiset",
    "enumerate_valid_multisets",
    "find_nontrivial_r_incident",
    "lemma2_witness",
    "multiset_to_json",
    "multiset_from_json",
]


def _support_mask(g: LabeledGraph, s: VertexMultiset) -> int:
    m = 0
    for v in s.support():
        m |= 1 << g.index(v)
    return m


def is_independent(g: LabeledGraph, s: VertexMultiset) -> bool:
    """True iff no edge of ``g`` joins two support vertices of ``s``."""
    mask = _support_mask(g, s)
    return all(g.row(i) & mask == 0 for i in _bits(mask))


def is_r_incident(g: LabeledGraph, s: VertexMultiset, r: int) -> bool:
    """Divisibility test over all outside sets K of size k+2, k in [0, r).

    The required modulus is 2^(r-k) in general, strengthened to 2^(r-1) for
    the pair case k = 0.  Subsets are scanned in increasing k so the cheap
    pair conditions refute first.
    """
    if r < 1:
        raise PreconditionError("incidence level r must be a positive integer")
    supp = _support_mask(g, s)
    n = g.n
    mult = [s.mult(u) for u in g.labels]
    outside = [i for i in range(n) if not supp >> i & 1]
    full = (1 << n) - 1
    for k in range(r):
        mod = 1 << (r - k - (1 if k == 0 else 0))
        if mod == 1:
            continue
        for K in combinations(outside, k + 2):
            common = full
            for i in K:
                common &= g.row(i)
                if not common:
                    break
            total = sum(mult[i] for i in _bits(common & supp))
            if total % mod:
                return False
    return True


@dataclass(frozen=True)
class RlcInstance:
    """A graph together with a candidate multiset and level.

    ``validate`` enforces the two validity conditions; only valid instances
    correspond to implementable transformations, so application refuses
    invalid ones.
    """

    graph: LabeledGraph
    multiset: VertexMultiset
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise PreconditionError("level r must be a positive integer")
        for v in self.multiset.support():
            self.graph.index(v)  # raises InvalidVertexError on foreign vertices

    def validate(self) -> None:
        if not is_independent(self.graph, self.multiset):
            raise RlcValidityError("independence", "support contains an edge")
        if not is_r_incident(self.graph, self.multiset, self.r):
            raise RlcValidityError("incidence", f"divisibility fails for r={self.r}")

    def is_valid(self) -> bool:
        return is_independent(self.graph, self.multiset) and is_r_incident(
            self.graph, self.multiset, self.r
        )


def r_local_complement(inst: RlcInstance) -> LabeledGraph:
    """Apply a valid instance; refuses invalid ones with RlcValidityError."""
    inst.validate()
    g, s, r = inst.graph, inst.multiset, inst.r
    n = g.n
    mult = [s.mult(u) for u in g.labels]
    half = 1 << (r - 1)
    full = half << 1
    rows = list(g.rows())
    for i in range(n):
        for j in range(i + 1, n):
            common = g.row(i) & g.row(j)
            total = sum(mult[b] for b in _bits(common))
            if total % full == half:
                rows[i] ^= 1 << j
                rows[j] ^= 1 << i
    return LabeledGraph._from_rows(g.labels, rows)


@dataclass(frozen=True)
class NormalizationResult:
    """Outcome of :func:`normalize_multiset`.

    ``lc_set`` is an independent set of vertices to locally complement one by
    one; ``reduced`` is the residual multiset (no twins in its support, no
    degree-≤1 support vertices, all multiplicities below 2^(r-1)).
    """

    lc_set: FrozenSet[Label]
    reduced: VertexMultiset


def normalize_multiset(g: LabeledGraph, s: VertexMultiset, r: int) -> NormalizationResult:
    """Reduce a valid instance to (plain LC set, residual multiset).

    Guarantee: applying the instance equals locally complementing at every
    vertex of ``lc_set`` (in any order; the set is independent) and then
    applying the residual at the same level.  Degree-≤1 support vertices are
    dropped, twin multiplicities are merged onto the lowest-labeled member,
    and the merged counts are split into a "high bit" (the LC set) and the
    remainder mod 2^(r-1).
    """
    RlcInstance(g, s, r).validate()
    support = list(s.support())
    merged: Dict[Label, int] = {}
    rep_of: Dict[int, Label] = {}  # neighborhood row -> chosen twin representative
    for v in support:  # support() is sorted, so representatives are lowest labels
        i = g.index(v)
        if g.row(i).bit_count() <= 1:
            continue
        rep = rep_of.setdefault(g.row(i), v)
        merged[rep] = merged.get(rep, 0) + s.mult(v)
    half = 1 << (r - 1)
    lc_set = frozenset(v for v, c in merged.items() if c % (half << 1) >= half)
    reduced = VertexMultiset({v: c % half for v, c in merged.items()})
    return NormalizationResult(lc_set, reduced)


# ---------------------------------------------------------------------------
# exhaustive search over candidate multisets


def _independent_sets(g: LabeledGraph) -> Iterator[int]:
    """All nonempty independent sets, as vertex-index bitmasks."""
    rows = g.rows()
    for mask in range(1, 1 << g.n):
        if all(rows[i] & mask == 0 for i in _bits(mask)):
            yield mask


def _constraints_for_support(g: LabeledGraph, d_mask: int, r: int) -> Dict[int, int]:
    """Map each common-neighborhood mask (restricted to the support) to the
    strongest modulus any outside set imposes on it."""
    n = g.n
    outside = [i for i in range(n) if not d_mask >> i & 1]
    full = (1 << n) - 1
    acc: Dict[int, int] = {}
    for k in range(r):
        mod = 1 << (r - k - (1 if k == 0 else 0))
        if mod == 1:
            continue
        for K in combinations(outside, k + 2):
            common = full
            for i in K:
                common &= g.row(i)
                if not common:
                    break
            common &= d_mask
            if common:
                acc[common] = max(acc.get(common, 1), mod)
    return acc


def _constrained_assignments(
    positions: Sequence[int], masks: Dict[int, int], r: int
) -> Iterator[Dict[int, int]]:
    """DFS over multiplicities in [1, 2^r - 1] for the given vertex indices,
    pruning as soon as a fully assigned constraint mask has a bad sum."""
    if not positions:
        yield {}
        return
    # Complete small constraint masks as early as possible.
    order: List[int] = []
    for mask in sorted(masks, key=lambda m: m.bit_count()):
        for i in _bits(mask):
            if i not in order:
                order.append(i)
    for i in positions:
        if i not in order:
            order.append(i)
    depth_of = {i: d for d, i in enumerate(order)}
    finish_at: Dict[int, List[Tuple[int, int]]] = {d: [] for d in range(len(order))}
    for mask, mod in masks.items():
        finish_at[max(depth_of[i] for i in _bits(mask))].append((mask, mod))

    values = range(1, 1 << r)
    assignment: Dict[int, int] = {}

    def rec(depth: int) -> Iterator[Dict[int, int]]:
        if depth == len(order):
            yield dict(assignment)
            return
        i = order[depth]
        for val in values:
            assignment[i] = val
            ok = True
            for mask, mod in finish_at[depth]:
                if sum(assignment[b] for b in _bits(mask)) % mod:
                    ok = False
                    break
            if ok:
                yield from rec(depth + 1)
        del assignment[i]

    yield from rec(0)


def enumerate_valid_multisets(
    g: LabeledGraph, r: int, max_n: int = 8
) -> Iterator[Tuple[VertexMultiset, int]]:
    """Yield (representative, class_size) for every valid nonempty multiset
    with multiplicities in [1, 2^r − 1] on its support.

    Degree-≤1 support vertices never appear in any incidence constraint and
    never influence the applied image, so assignments differing only there
    form a class; the representative gives them multiplicity 1 and
    ``class_size`` is the number of assignments in the class.
    """
    if r < 1:
        raise PreconditionError("level r must be a positive integer")
    if g.n > max_n:
        raise BoundExceeded(f"graph has {g.n} > {max_n} vertices; raise max_n to search anyway")
    labels = g.labels
    for d_mask in _independent_sets(g):
        members = list(_bits(d_mask))
        constrained = [i for i in members if g.row(i).bit_count() >= 2]
        free = [i for i in members if g.row(i).bit_count() <= 1]
        if r == 1:
            constrained, free = [], members  # no constraint has modulus > 1
        masks = _constraints_for_support(g, d_mask, r) if constrained else {}
        class_size = ((1 << r) - 1) ** len(free)
        for assignment in _constrained_assignments(constrained, masks, r):
            mult = {labels[i]: v for i, v in assignment.items()}
            for i in free:
                mult[labels[i]] = 1
            yield VertexMultiset(mult), class_size


def find_nontrivial_r_incident(g: LabeledGraph, r: int, max_n: int = 8) -> List[VertexMultiset]:
    """All valid multisets (multiplicities < 2^r) whose normalization leaves a
    nonempty residual.  An empty result certifies that every valid instance
    on ``g`` reduces to ordinary local complementations.
    """
    out: List[VertexMultiset] = []
    values = range(1, 1 << r)
    for rep, class_size in enumerate_valid_multisets(g, r, max_n):
        if not normalize_multiset(g, rep, r).reduced:
            continue
        # Expand the whole class: free-vertex multiplicities never affect
        # normalization, so every member is nontrivial too.
        free = [v for v in rep.support() if g.degree(v) <= 1]
        base = {v: c for v, c in rep.items() if v not in free}
        if not free:
            out.append(rep)
            continue
        for vals in product(values, repeat=len(free)):
            full = dict(base)
            full.update(zip(free, vals))
            out.append(VertexMultiset(full))
    out.sort(key=lambda m: m.items())
    return out


def lemma2_witness(c: LabeledGraph, k_set) -> Tuple[Label, Label]:
    """Find distinct a, b outside ``k_set`` with exactly one common neighbor
    inside it.

    Preconditions (checked): ``k_set`` is independent, contains no twins, and
    has a member of degree ≥ 2.  For intersection graphs of circle chords the
    witness always exists; exhausting all pairs without finding one raises
    TheoremViolation.
    """
    k_list = sorted(set(k_set))
    k_mask = 0
    for v in k_list:
        k_mask |= 1 << c.index(v)
    if any(c.row(i) & k_mask for i in _bits(k_mask)):
        raise PreconditionError("witness set must be independent")
    rows_seen: Dict[int, Label] = {}
    for v in k_list:
        row = c.row(c.index(v))
        if row in rows_seen:
            raise PreconditionError(f"witness set contains twins {rows_seen[row]!r}, {v!r}")
        rows_seen[row] = v
    if all(c.degree(v) < 2 for v in k_list):
        raise PreconditionError("witness set needs a member of degree at least 2")
    rest = [u for u in c.labels if u not in set(k_list)]
    for a, b in combinations(rest, 2):
        common = c.row(c.index(a)) & c.row(c.index(b)) & k_mask
        if common.bit_count() == 1:
            return (a, b)
    raise TheoremViolation(
        "no outside pair with a unique common neighbor in the independent set; "
        "this cannot happen on an intersection graph of circle chords"
    )


# ---------------------------------------------------------------------------
# JSON forms


def multiset_to_json(s: VertexMultiset) -> str:
    return json.dumps({"mult": {str(v): c for v, c in s.items()}}, separators=(",", ":"))


def multiset_from_json(text: str, int_labels: bool = True) -> VertexMultiset:
    obj = json.loads(text)
    if not isinstance(obj, dict) or "mult" not in obj or not isinstance(obj["mult"], dict):
        raise PreconditionError('multiset JSON must be {"mult": {vertex: count, ...}}')
    items = []
    for key, c in obj["mult"].items():
        v: Label = int(key) if int_labels else key
        items.append((v, c))
    return VertexMultiset(items)
