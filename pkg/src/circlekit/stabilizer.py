"""Stabilizer tableaux for graph states, Pauli measurements, and a dense oracle.

Paulis are stored as x/z bitmasks over a fixed, sorted qubit tuple.  Phases
are tracked internally as powers of i (the operator is i^phase · X^x Z^z), so
products are exact; externally only Hermitian sign-carrying operators appear.
Global phase is ignored everywhere, matching the usual graph-state setting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from . import gf2
from .errors import BoundExceeded, InvalidVertexError, PreconditionError
from .graphs import LabeledGraph, delete_vertex, lc_orbit, local_complement, pivot

__all__ = [
    "PauliOperator",
    "StabilizerTableau",
    "graph_state_tableau",
    "tableau_from_generators",
    "apply_hadamards",
    "is_stabilized",
    "lc_equivalent",
    "measure_pauli",
    "statevector_oracle",
    "pauli_from_string",
    "pauli_to_string",
]


def _phase_of(x: int, z: int, sign: int) -> int:
    """Internal i-power of sign · (tensor of I/X/Y/Z letters) written X^x Z^z."""
    return ((0 if sign > 0 else 2) + (x & z).bit_count()) % 4


@dataclass(frozen=True)
class PauliOperator:
    """A Hermitian Pauli: sign · tensor of I/X/Y/Z over the given qubits."""

    qubits: Tuple
    x: int
    z: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise PreconditionError("sign must be +1 or -1")
        if self.x >> len(self.qubits) or self.z >> len(self.qubits):
            raise PreconditionError("support outside the qubit register")

    def commutes_with(self, other: "PauliOperator") -> bool:
        _check_same_qubits(self.qubits, other.qubits)
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) % 2 == 0


def _check_same_qubits(a: Tuple, b: Tuple):
    if a != b:
        raise PreconditionError("operators live on different qubit registers")


def _mul(p1: Tuple[int, int, int], p2: Tuple[int, int, int]) -> Tuple[int, int, int]:
    """Multiply (x, z, iphase) triples: X^xZ^z · X^x'Z^z' picks up (-1)^|z∧x'|."""
    x1, z1, f1 = p1
    x2, z2, f2 = p2
    return (x1 ^ x2, z1 ^ z2, (f1 + f2 + 2 * (z1 & x2).bit_count()) % 4)


class StabilizerTableau:
    """An independent, pairwise-commuting list of signed Pauli generators."""

    __slots__ = ("qubits", "rows")

    def __init__(self, qubits: Sequence, rows: Iterable[Tuple[int, int, int]]):
        qubits = tuple(qubits)
        rows = tuple(rows)
        n = len(qubits)
        for x, z, sign in rows:
            if x >> n or z >> n:
                raise PreconditionError("row support outside the qubit register")
            if sign not in (1, -1):
                raise PreconditionError("row sign must be +1 or -1")
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                xi, zi, _ = rows[i]
                xj, zj, _ = rows[j]
                if ((xi & zj).bit_count() + (zi & xj).bit_count()) % 2:
                    raise PreconditionError("generators do not commute")
        if gf2.rank([x | (z << n) for x, z, _ in rows]) != len(rows):
            raise PreconditionError("generators are dependent")
        object.__setattr__(self, "qubits", qubits)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("StabilizerTableau is immutable")

    @property
    def n(self) -> int:
        return len(self.qubits)

    def row_operator(self, i: int) -> PauliOperator:
        x, z, sign = self.rows[i]
        return PauliOperator(self.qubits, x, z, sign)

    def canonical_rows(self) -> Tuple[Tuple[int, int, int], ...]:
        """Sign-tracked reduced echelon form; equal groups give equal tuples."""
        n = self.n
        work = [(x, z, _phase_of(x, z, s)) for x, z, s in self.rows]
        pivots: List[Tuple[int, int]] = []  # (bit position in x|z<<n space, row index)
        for col in range(2 * n):
            piv = None
            for r in range(len(work)):
                if any(r == pr for _, pr in pivots):
                    continue
                vec = work[r][0] | (work[r][1] << n)
                if (vec >> col) & 1:
                    piv = r
                    break
            if piv is None:
                continue
            for r in range(len(work)):
                if r == piv:
                    continue
                vec = work[r][0] | (work[r][1] << n)
                if (vec >> col) & 1:
                    work[r] = _mul(work[r], work[piv])
            pivots.append((col, piv))
        ordered = [work[r] for _, r in sorted(pivots)]
        out = []
        for x, z, f in ordered:
            sign = 1 if (f - (x & z).bit_count()) % 4 == 0 else -1
            out.append((x, z, sign))
        return tuple(out)

    def to_strings(self) -> List[str]:
        return [pauli_to_string(self.row_operator(i)) for i in range(len(self.rows))]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StabilizerTableau)
            and self.qubits == other.qubits
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.qubits, self.rows))


def graph_state_tableau(g: LabeledGraph) -> StabilizerTableau:
    """Rows X_u Z_{N(u)}, one per vertex, all with sign +."""
    rows = [(1 << i, g.row(i), 1) for i in range(g.n)]
    return StabilizerTableau(g.labels, rows)


def tableau_from_generators(qubits: Sequence, gens: Iterable[PauliOperator]) -> StabilizerTableau:
    """Reduce a (possibly redundant) commuting generating set to a tableau.

    Every dependency among the generators must multiply out to +I; a
    dependency reaching -I means the set stabilizes nothing and is refused.
    """
    qubits = tuple(qubits)
    n = len(qubits)
    basis: List[Tuple[int, int, int]] = []  # accepted rows as (x, z, iphase)
    for p in gens:
        _check_same_qubits(qubits, p.qubits)
        cur = (p.x, p.z, _phase_of(p.x, p.z, p.sign))
        # eliminate against accepted rows
        reduced = cur
        vecs = [x | (z << n) for x, z, _ in basis]
        target = reduced[0] | (reduced[1] << n)
        combo = gf2.solve(vecs, target)
        if combo is None:
            basis.append(cur)
            continue
        acc = (0, 0, 0)
        for idx in combo:
            acc = _mul(acc, basis[idx])
        if acc != cur:
            raise PreconditionError("generators generate -I (inconsistent signs)")
    rows = []
    for x, z, f in basis:
        sign = 1 if (f - (x & z).bit_count()) % 4 == 0 else -1
        rows.append((x, z, sign))
    return StabilizerTableau(qubits, rows)


def apply_hadamards(t: StabilizerTableau, qubit_set: Iterable) -> StabilizerTableau:
    """Conjugate every row by H on the given qubits: X↔Z there, Y picks up -1."""
    idx = {q: i for i, q in enumerate(t.qubits)}
    mask = 0
    for q in qubit_set:
        if q not in idx:
            raise InvalidVertexError(f"unknown qubit {q!r}")
        mask |= 1 << idx[q]
    rows = []
    for x, z, sign in t.rows:
        flips = (x & z & mask).bit_count()
        nx = (x & ~mask) | (z & mask)
        nz = (z & ~mask) | (x & mask)
        rows.append((nx, nz, sign * (-1) ** flips))
    return StabilizerTableau(t.qubits, rows)


def conjugate_pauli_by_hadamards(p: PauliOperator, qubit_set: Iterable) -> PauliOperator:
    idx = {q: i for i, q in enumerate(p.qubits)}
    mask = 0
    for q in qubit_set:
        if q not in idx:
            raise InvalidVertexError(f"unknown qubit {q!r}")
        mask |= 1 << idx[q]
    flips = (p.x & p.z & mask).bit_count()
    nx = (p.x & ~mask) | (p.z & mask)
    nz = (p.z & ~mask) | (p.x & mask)
    return PauliOperator(p.qubits, nx, nz, p.sign * (-1) ** flips)


def is_stabilized(t: StabilizerTableau, p: PauliOperator) -> bool:
    """True iff p is a product of rows and the signs work out to +."""
    _check_same_qubits(t.qubits, p.qubits)
    n = t.n
    vecs = [x | (z << n) for x, z, _ in t.rows]
    combo = gf2.solve(vecs, p.x | (p.z << n))
    if combo is None:
        return False
    acc = (0, 0, 0)
    for idx in combo:
        x, z, sign = t.rows[idx]
        acc = _mul(acc, (x, z, _phase_of(x, z, sign)))
    return acc == (p.x, p.z, _phase_of(p.x, p.z, p.sign))


def lc_equivalent(g1: LabeledGraph, g2: LabeledGraph, cap: int = 1_000_000) -> bool:
    """Whether the two graph states are related by local Cliffords, decided
    as membership of g2 in the local-complementation orbit of g1."""
    if g1.labels != g2.labels:
        raise PreconditionError("graphs must share one vertex set")
    return g2 in lc_orbit(g1, cap=cap)


def measure_pauli(g: LabeledGraph, v, basis: str):
    """Destructively measure vertex ``v`` of the graph state in X, Y or Z.

    Returns (new_graph, corrections) for the +1 outcome: the measured qubit
    leaves the system, and applying the correction gates (name, vertex) to
    the graph state of ``new_graph`` reproduces the post-measurement state
    exactly (up to global phase).
    """
    if not g.has_vertex(v):
        raise InvalidVertexError(f"unknown vertex {v!r}")
    if basis not in ("X", "Y", "Z"):
        raise PreconditionError(f"basis must be X, Y or Z, not {basis!r}")
    nbrs = g.neighbors(v)
    if basis == "Z":
        return delete_vertex(g, v), ()
    if basis == "Y":
        out = delete_vertex(local_complement(g, v), v)
        return out, tuple(("S", u) for u in nbrs)
    if not nbrs:
        return delete_vertex(g, v), ()
    b = nbrs[0]
    out = delete_vertex(pivot(g, v, b), v)
    zset = sorted(set(nbrs) - set(g.neighbors(b)) - {b})
    corrections = (("sqrt_plus_iY", b),) + tuple(("Z", u) for u in zset)
    return out, corrections


_SQRT2 = math.sqrt(2.0)

_GATES: Dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2,
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "Sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
    "sqrt_plus_iY": np.array([[1, 1], [-1, 1]], dtype=complex) / _SQRT2,
    "sqrt_minus_iY": np.array([[1, -1], [1, 1]], dtype=complex) / _SQRT2,
}


def correction_gate(name: str) -> np.ndarray:
    """The 2x2 unitary for a correction word entry."""
    if name not in _GATES:
        raise PreconditionError(f"unknown gate {name!r}")
    return _GATES[name]


def statevector_oracle(g: LabeledGraph, max_n: int = 6) -> np.ndarray:
    """Dense amplitudes of the graph state; qubit i of the index (bit i,
    little-endian) is g.labels[i].  All amplitudes are ±2^{-n/2}."""
    if g.n > max_n:
        raise BoundExceeded(f"statevector oracle capped at {max_n} qubits")
    n = g.n
    amps = np.empty(1 << n, dtype=float)
    rows = g.rows()
    for idx in range(1 << n):
        signs = 0
        rem = idx
        while rem:
            low = rem & -rem
            i = low.bit_length() - 1
            signs += (rows[i] & idx & (low - 1)).bit_count()
            rem ^= low
        amps[idx] = (-1.0) ** (signs % 2)
    return amps / (2 ** (n / 2))


def pauli_from_string(text: str, qubits: Sequence) -> PauliOperator:
    """Parse e.g. "+XZIZ" (letters follow the sorted qubit order)."""
    qubits = tuple(qubits)
    s = text.strip()
    sign = 1
    if s and s[0] in "+-":
        sign = 1 if s[0] == "+" else -1
        s = s[1:]
    if len(s) != len(qubits):
        raise PreconditionError(f"expected {len(qubits)} letters, got {len(s)}")
    x = z = 0
    for i, ch in enumerate(s):
        if ch == "X":
            x |= 1 << i
        elif ch == "Z":
            z |= 1 << i
        elif ch == "Y":
            x |= 1 << i
            z |= 1 << i
        elif ch != "I":
            raise PreconditionError(f"bad Pauli letter {ch!r}")
    return PauliOperator(qubits, x, z, sign)


def pauli_to_string(p: PauliOperator) -> str:
    letters = []
    for i in range(len(p.qubits)):
        xb = (p.x >> i) & 1
        zb = (p.z >> i) & 1
        letters.append("IXZY"[xb + 2 * zb])
    return ("+" if p.sign > 0 else "-") + "".join(letters)
