"""Chord diagrams, interlacement graphs, and circle-graph machinery.

A chord diagram is stored as a double occurrence word read around the circle:
every letter names a chord and occurs exactly twice.  Two chords cross exactly
when their letters alternate in the word, which makes the whole module purely
combinatorial -- no coordinates anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import (
    BoundExceeded,
    EmbeddingError,
    InvalidVertexError,
    PreconditionError,
    WordParseError,
)
from .graphs import LabeledGraph, LabeledMultigraph, local_complement

__all__ = [
    "ChordDiagram",
    "IndependentSetTree",
    "parse_word",
    "format_word",
    "interlacement_graph",
    "enumerate_diagrams",
    "is_circle_graph",
    "independent_set_tree",
    "fundamental_cycle_multigraph",
    "prop5_embed",
]

_TOKEN_RE = re.compile(r"[a-z0-9_]+\Z")
_CHAR_RE = re.compile(r"[a-z0-9_]\Z")


def parse_word(text: str) -> Tuple[str, ...]:
    """Tokenize a word string.

    Without commas every character is one token; with commas the word is a
    comma-separated list of multi-character tokens.  Tokens are restricted to
    [a-z0-9_].  Raises WordParseError with the byte offset of the offence.
    """
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        tokens: List[str] = []
        offset = 0
        for part in text.split(","):
            tok = part.strip()
            if not _TOKEN_RE.match(tok):
                raise WordParseError(f"bad token {tok!r}", offset=offset)
            tokens.append(tok)
            offset += len(part) + 1
        return tuple(tokens)
    for i, ch in enumerate(text):
        if not _CHAR_RE.match(ch):
            raise WordParseError(f"bad character {ch!r}", offset=i)
    return tuple(text)


def format_word(word: Sequence) -> str:
    """Inverse of parse_word: single-character tokens concatenate, everything
    else joins with commas.  Integer tokens are emitted in decimal."""
    toks = [t if isinstance(t, str) else str(t) for t in word]
    if all(len(t) == 1 for t in toks):
        return "".join(toks)
    return ",".join(toks)


class ChordDiagram:
    """A double occurrence word up to rotation and reflection.

    Tokens must be uniformly strings or uniformly integers so that the
    canonical form (lexicographic minimum over all rotations and the two
    reading directions) is well defined.  Equality and hashing use that
    canonical form.
    """

    __slots__ = ("_word", "_pos", "_canonical")

    def __init__(self, word):
        if isinstance(word, str):
            word = parse_word(word)
        w = tuple(word)
        kinds = {type(t) for t in w}
        if len(kinds) > 1:
            raise WordParseError("mixed token types in word")
        pos: Dict = {}
        for i, t in enumerate(w):
            pos.setdefault(t, []).append(i)
            if len(pos[t]) > 2:
                raise WordParseError(f"letter {t!r} occurs more than twice", offset=i)
        for t, ps in pos.items():
            if len(ps) != 2:
                raise WordParseError(f"letter {t!r} occurs only once", offset=ps[0])
        object.__setattr__(self, "_word", w)
        object.__setattr__(self, "_pos", {t: (ps[0], ps[1]) for t, ps in pos.items()})
        object.__setattr__(self, "_canonical", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("ChordDiagram is immutable")

    @classmethod
    def from_text(cls, text: str) -> "ChordDiagram":
        return cls(parse_word(text))

    @property
    def word(self) -> Tuple:
        return self._word

    @property
    def letters(self) -> Tuple:
        return tuple(sorted(self._pos))

    @property
    def n(self) -> int:
        return len(self._pos)

    def positions(self, letter) -> Tuple[int, int]:
        if letter not in self._pos:
            raise InvalidVertexError(f"unknown letter {letter!r}")
        return self._pos[letter]

    def rotated(self, k: int) -> "ChordDiagram":
        w = self._word
        if not w:
            return self
        k %= len(w)
        return ChordDiagram(w[k:] + w[:k])

    def reflected(self) -> "ChordDiagram":
        return ChordDiagram(self._word[::-1])

    def canonical_word(self) -> Tuple:
        """Lexicographically least word over all rotations and reflections."""
        if self._canonical is not None:
            return self._canonical
        w = self._word
        best = w
        for ww in (w, w[::-1]):
            for r in range(len(w)):
                cand = ww[r:] + ww[:r]
                if cand < best:
                    best = cand
        object.__setattr__(self, "_canonical", best)
        return best

    def shape(self) -> Tuple[int, ...]:
        """Canonical form that forgets letter names (first-occurrence
        numbering, minimized over rotations and reflections).  Two matchings
        of circle points give the same shape exactly when one diagram is a
        rotation/reflection of the other after renaming."""
        w = self._word
        best: Optional[Tuple[int, ...]] = None
        for ww in (w, w[::-1]):
            for r in range(len(w)):
                seen: Dict = {}
                out: List[int] = []
                for t in ww[r:] + ww[:r]:
                    if t not in seen:
                        seen[t] = len(seen)
                    out.append(seen[t])
                cand = tuple(out)
                if best is None or cand < best:
                    best = cand
        return best if best is not None else ()

    def to_text(self) -> str:
        return format_word(self._word)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChordDiagram) and self.canonical_word() == other.canonical_word()

    def __hash__(self) -> int:
        return hash(self.canonical_word())

    def __repr__(self) -> str:
        return f"ChordDiagram({self.to_text()!r})"


def _crossing(pos: Dict, a, b) -> bool:
    a1, a2 = pos[a]
    b1, b2 = pos[b]
    return (a1 < b1 < a2 < b2) or (b1 < a1 < b2 < a2)


def interlacement_graph(d: ChordDiagram) -> LabeledGraph:
    """Graph on the letters; x ~ y iff their occurrences alternate x..y..x..y."""
    letters = d.letters
    pos = {t: d.positions(t) for t in letters}
    edges = [
        (letters[i], letters[j])
        for i in range(len(letters))
        for j in range(i + 1, len(letters))
        if _crossing(pos, letters[i], letters[j])
    ]
    return LabeledGraph(letters, edges)


# -- enumeration -------------------------------------------------------------

_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def enumerate_diagrams(n: int, dedupe: bool = True) -> List[ChordDiagram]:
    """All chord diagrams with ``n`` chords, built from the (2n-1)!! perfect
    matchings of 2n circle points, letters named a, b, c, ... in order of
    first occurrence.  With ``dedupe`` (the default) diagrams equal up to
    rotation, reflection and renaming are kept once.
    """
    if n < 0:
        raise PreconditionError("n must be nonnegative")
    if n > len(_ALPHABET):
        raise BoundExceeded(f"enumeration capped at {len(_ALPHABET)} chords")
    out: List[ChordDiagram] = []
    seen: Set[Tuple[int, ...]] = set()

    def rec(points: Tuple[int, ...], pairs: List[Tuple[int, int]]):
        if not points:
            word = [""] * (2 * n)
            for li, (a, b) in enumerate(pairs):
                word[a] = _ALPHABET[li]
                word[b] = _ALPHABET[li]
            d = ChordDiagram(word)
            if dedupe:
                s = d.shape()
                if s in seen:
                    return
                seen.add(s)
            out.append(d)
            return
        a = points[0]
        for k in range(1, len(points)):
            pairs.append((a, points[k]))
            rec(points[1:k] + points[k + 1:], pairs)
            pairs.pop()

    rec(tuple(range(2 * n)), [])
    return out


# -- recognition -------------------------------------------------------------


def _bfs_order(g: LabeledGraph) -> List:
    order: List = []
    placed: Set = set()
    for start in g.labels:
        if start in placed:
            continue
        queue = [start]
        placed.add(start)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for v in g.neighbors(u):
                if v not in placed:
                    placed.add(v)
                    queue.append(v)
    return order


def is_circle_graph(g: LabeledGraph, max_n: int = 9) -> Optional[ChordDiagram]:
    """Search for a chord diagram whose interlacement graph equals ``g``
    exactly (same labels), returning it, or None when no diagram exists.

    Backtracking insertion: vertices are added in BFS order, each new chord's
    two endpoints are tried in every slot pair of the current word, and a
    placement survives only if its crossings with all placed chords match the
    requested adjacency.  The first chord is pinned at the word start, which
    quotients away rotations.
    """
    if g.n > max_n:
        raise BoundExceeded(f"recognition capped at {max_n} vertices (got {g.n})")
    if g.n == 0:
        return ChordDiagram(())
    order = _bfs_order(g)
    word: List = [order[0], order[0]]

    def place(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        length = len(word)
        needed = {x for x in set(word) if g.has_edge(u, x)}
        for i in range(1, length + 1):
            for j in range(i, length + 1):
                inner = word[i:j]
                crossed = {x for x in set(inner) if inner.count(x) % 2 == 1}
                if crossed != needed:
                    continue
                word[i:i] = [u]
                word[j + 1:j + 1] = [u]
                if place(k + 1):
                    return True
                del word[j + 1]
                del word[i]
        return False

    if place(1):
        return ChordDiagram(tuple(word))
    return None


# -- regions of a family of noncrossing chords -------------------------------


class _Regions:
    """Combinatorics of the disk cut along the pairwise-noncrossing chords K.

    The 2m word positions define 2m circular gaps; each gap belongs to one
    region.  Walking a region's boundary counterclockwise (circle arcs plus
    chord sides) yields the cyclic order in which chord ends attach to it,
    which downstream becomes a planar rotation system.
    """

    def __init__(self, d: ChordDiagram, kset: FrozenSet):
        word = d.word
        L = len(word)
        pos = {t: d.positions(t) for t in set(word)}
        for t in kset:
            if t not in pos:
                raise InvalidVertexError(f"K contains unknown letter {t!r}")
        klist = sorted(kset)
        for i in range(len(klist)):
            for j in range(i + 1, len(klist)):
                if _crossing(pos, klist[i], klist[j]):
                    raise PreconditionError(
                        f"K is not independent: chords {klist[i]!r} and {klist[j]!r} cross"
                    )

        def signature(gap: int) -> FrozenSet:
            return frozenset(t for t in klist if pos[t][0] <= gap < pos[t][1])

        sigs = [signature(gp) for gp in range(L)] if L else [frozenset()]
        gaps_by_sig: Dict[FrozenSet, List[int]] = {}
        for gp, s in enumerate(sigs):
            gaps_by_sig.setdefault(s, []).append(gp)
        ordered = sorted(gaps_by_sig.values(), key=lambda gs: gs[0])
        self.region_count = len(ordered) if L else 1
        self.region_of_gap: Dict[int, int] = {}
        for rid, gs in enumerate(ordered):
            for gp in gs:
                self.region_of_gap[gp] = rid
        if self.region_count != len(kset) + 1:
            raise PreconditionError("region count mismatch; K is not a noncrossing family")

        # boundary walks: rotation[r] = cyclic list of (letter, end) encounters
        self.rotation: List[List[Tuple]] = [[] for _ in range(self.region_count)]
        if L:
            consumed: Set[int] = set()
            for start in range(L):
                if start in consumed:
                    continue
                rid = self.region_of_gap[start]
                walk: List[Tuple] = []
                gp = start
                while True:
                    consumed.add(gp)
                    p = (gp + 1) % L
                    t = word[p]
                    if t in kset:
                        walk.append((t, 0 if p == pos[t][0] else 1))
                        other = pos[t][1] if p == pos[t][0] else pos[t][0]
                        gp = other
                    else:
                        walk.append((t, 0 if p == pos[t][0] else 1))
                        gp = p
                    if gp == start:
                        break
                    if self.region_of_gap[gp] != rid:
                        raise PreconditionError("inconsistent region walk")  # pragma: no cover
                if self.rotation[rid]:  # pragma: no cover - regions are simply connected
                    raise PreconditionError("region boundary is disconnected")
                self.rotation[rid] = walk

        # region of each non-K chord end, and the two regions flanking each K chord
        self.end_region: Dict[Tuple, int] = {}
        self.k_sides: Dict = {}
        for rid, walk in enumerate(self.rotation):
            for t, end in walk:
                if t in kset:
                    self.k_sides.setdefault(t, {})[end] = rid
                else:
                    self.end_region[(t, end)] = rid


@dataclass(frozen=True)
class IndependentSetTree:
    tree: LabeledMultigraph
    edge_labels: Dict

    def __post_init__(self):
        t = self.tree
        if t.edge_count() != t.n - 1:
            raise PreconditionError("not a tree: wrong edge count")
        seen = {t.vertices[0]}
        stack = [t.vertices[0]]
        while stack:
            v = stack.pop()
            for e in t.incident(v):
                u, w = t.ends(e)
                other = w if v == u else u
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        if len(seen) != t.n:
            raise PreconditionError("not a tree: disconnected")


def independent_set_tree(d: ChordDiagram, K: Iterable) -> IndependentSetTree:
    """Tree on the regions cut out by the noncrossing chords K; each tree edge
    is the chord separating its two regions and carries that letter as id."""
    kset = frozenset(K)
    reg = _Regions(d, kset)
    edges = {t: (sides[0], sides[1]) for t, sides in reg.k_sides.items()}
    tree = LabeledMultigraph(range(reg.region_count), edges)
    return IndependentSetTree(tree=tree, edge_labels={t: t for t in kset})


def fundamental_cycle_multigraph(d: ChordDiagram, K: Iterable) -> LabeledMultigraph:
    """The multigraph H of the region construction: the region tree plus, for
    every chord e outside K, an edge joining the regions of e's endpoints.

    The tree path between those regions crosses exactly the K-chords that e
    crosses, so the fundamental cycle of e automatically traverses the tree
    edges labeled by N(e) ∩ K.  Every letter of the word contributes exactly
    one edge, hence |E(H)| = |V(C)|.
    """
    kset = frozenset(K)
    reg = _Regions(d, kset)
    edges: Dict = {t: (sides[0], sides[1]) for t, sides in reg.k_sides.items()}
    for t in d.letters:
        if t in kset:
            continue
        edges[t] = (reg.end_region[(t, 0)], reg.end_region[(t, 1)])
    return LabeledMultigraph(range(reg.region_count), edges)


# -- the embedding pipeline ---------------------------------------------------


def _word_graph(word: Tuple) -> Dict:
    pos: Dict = {}
    for i, t in enumerate(word):
        pos.setdefault(t, []).append(i)
    letters = list(pos)
    adj: Dict = {t: set() for t in letters}
    for i in range(len(letters)):
        for j in range(i + 1, len(letters)):
            a, b = letters[i], letters[j]
            a1, a2 = pos[a]
            b1, b2 = pos[b]
            if (a1 < b1 < a2 < b2) or (b1 < a1 < b2 < a2):
                adj[a].add(b)
                adj[b].add(a)
    return adj


def _is_bipartite(adj: Dict) -> bool:
    color: Dict = {}
    for s in adj:
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in color:
                    color[v] = color[u] ^ 1
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _surgeries(word: Tuple, z) -> Iterable[Tuple]:
    """All distinct words obtainable by one insertion move: pick a circular
    segment, reverse it, and close both cuts with a fresh letter ``z``.

    Measuring ``z`` in the Y basis on the interlacement graph of the result
    undoes the move exactly, which is what makes the pipeline reversible.
    """
    L = len(word)
    seen: Set[Tuple] = set()
    for i in range(L):
        for seglen in range(1, L):
            seg = tuple(word[(i + k) % L] for k in range(seglen))
            rest = tuple(word[(i + seglen + k) % L] for k in range(L - seglen))
            w2 = (z,) + seg[::-1] + (z,) + rest
            key = ChordDiagram(w2).shape()
            if key in seen:
                continue
            seen.add(key)
            yield w2


def _fresh_names(tokens: Iterable):
    """Unbounded supply of new letters that cannot collide with ``tokens``."""
    toks = set(tokens)
    if toks and all(isinstance(t, int) for t in toks):
        base = max(toks) + 1
        k = 0
        while True:
            yield base + k
            k += 1
    else:
        prefix = "x"
        while any(isinstance(t, str) and t.startswith(prefix) and t[len(prefix):].isdigit() for t in toks):
            prefix += "x"
        k = 0
        while True:
            yield f"{prefix}{k}"
            k += 1


def prop5_embed(
    c: LabeledGraph,
    d: ChordDiagram,
    node_budget: int = 2_000_000,
):
    """Embed the circle graph C into a bipartite circle graph B.

    Searches for the fewest insertion moves (iterative deepening) that make
    the word's interlacement graph bipartite; each move adds one new letter.
    Returns (B, added, P) where ``added`` is the set of new letters, P is a
    plane multigraph whose fundamental graph with respect to its region tree
    equals B, and Y-measuring the added letters in reverse insertion order
    recovers C exactly.

    Guarantees |V(B)| = n + f with f ≤ 2n² − n; in practice f stays tiny
    (every diagram with at most 6 chords needs at most 3 insertions).
    """
    if interlacement_graph(d) != c:
        raise PreconditionError("diagram does not realize the given graph")
    n = d.n
    ceiling = max(2 * n * n - n, 0)
    names = _fresh_names(d.word)
    zs = [next(names) for _ in range(ceiling)]

    final: Optional[Tuple] = None
    used = 0
    if _is_bipartite(_word_graph(d.word)):
        final = d.word
    else:
        budget = [node_budget]

        def dfs(word: Tuple, depth: int, limit: int) -> Optional[Tuple]:
            budget[0] -= 1
            if budget[0] < 0:
                raise EmbeddingError("insertion search budget exhausted")
            for w2 in _surgeries(word, zs[depth]):
                if _is_bipartite(_word_graph(w2)):
                    return w2
                if depth + 1 < limit:
                    r = dfs(w2, depth + 1, limit)
                    if r is not None:
                        return r
            return None

        for limit in range(1, ceiling + 1):
            r = dfs(d.word, 0, limit)
            if r is not None:
                final = r
                used = limit
                break
        if final is None:
            raise EmbeddingError("no bipartite completion within the insertion bound")

    bdiag = ChordDiagram(final)
    b = interlacement_graph(bdiag)
    added = frozenset(zs[:used])
    parts = b.bipartition()
    if parts is None:  # pragma: no cover - bipartiteness was just established
        raise EmbeddingError("unexpected non-bipartite result")
    from .planar import theorem2_converse

    p = theorem2_converse(bdiag, parts[0])
    return b, added, p
