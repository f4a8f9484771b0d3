"""Small GF(2) linear algebra on int bitsets.

Rows are Python ints; bit j of a row is the coefficient of column j.  This is
fast enough for the desk scales used everywhere in the package and keeps the
arithmetic exact.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

__all__ = ["rank", "solve", "rref"]


def rank(rows: Sequence[int]) -> int:
    """Rank of the span of ``rows`` over GF(2)."""
    work: List[int] = [r for r in rows if r]
    r = 0
    for col_row in _eliminate(work):
        if col_row:
            r += 1
    return r


def _eliminate(rows: List[int]) -> List[int]:
    """In-place forward elimination; returns the (unsorted) pivot rows."""
    pivots: List[int] = []
    for i in range(len(rows)):
        row = rows[i]
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            pivots.append(row)
    return pivots


def rref(rows: Sequence[int]) -> List[int]:
    """Reduced row-echelon form, sorted with highest pivot first.

    The result is canonical for the row space, so two generating sets span
    the same space iff their rref lists are equal.
    """
    pivots: List[int] = []
    for row in rows:
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            # back-substitute into earlier pivots
            low = row & -row
            pivots = [p ^ row if p & low else p for p in pivots]
            pivots.append(row)
    return sorted(pivots, reverse=True)


def solve(rows: Sequence[int], target: int) -> Optional[List[int]]:
    """Express ``target`` as a XOR of ``rows``; return row indices or None.

    Indices refer to positions in ``rows``.  Among solutions the one found by
    greedy elimination is returned (deterministic for fixed input order).
    """
    nrows = len(rows)
    # Augment each row with a combination marker above the value bits.
    width = max((r.bit_length() for r in list(rows) + [target]), default=0)
    aug = [(rows[i] | (1 << (width + i))) for i in range(nrows)]
    pivots: List[int] = []
    mask = (1 << width) - 1
    for row in aug:
        cur = row
        for p in pivots:
            low = (p & mask) & -(p & mask)
            if cur & low:
                cur ^= p
        if cur & mask:
            pivots.append(cur)
    acc = target
    combo = 0
    for p in pivots:
        low = (p & mask) & -(p & mask)
        if acc & low:
            acc ^= p & mask
            combo ^= p >> width
    if acc:
        return None
    return [i for i in range(nrows) if (combo >> i) & 1]
