"""Highest weights and Gel'fand-Tsetlin tableau bases.

Two interlacing families are supported.  In the classical family the last
entry of each even row may be negative (bounded by the entry above it in
absolute value).  In the nonclassical family every entry is half-odd and
the last entry of each even row is bounded below by 1/2.

Row k of a tableau holds floor(k/2) entries; a tableau stores rows
m_2 .. m_n bottom-up, with the top row equal to the highest weight.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .scalars import ONE_HALF, HalfInt

CLASSICAL = "classical"
NONCLASSICAL = "nonclassical"


@dataclass(frozen=True)
class HighestWeight:
    """Dominance-ordered weight tuple labelling one irreducible representation.

    n = 2 is admitted as the degenerate rank used by branching bases: a
    single signed entry in the classical family, a single entry >= 1/2 in
    the nonclassical one.
    """

    n: int
    kind: str
    entries: tuple[HalfInt, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"rank n must be >= 2, got {self.n}")
        if self.kind not in (CLASSICAL, NONCLASSICAL):
            raise ValueError(f"unknown kind {self.kind!r}")
        ent = tuple(HalfInt.of(e) for e in self.entries)
        if len(ent) != self.n // 2:
            raise ValueError(
                f"weight for n={self.n} needs {self.n // 2} entries, got {len(ent)}"
            )
        object.__setattr__(self, "entries", ent)


@dataclass(frozen=True)
class GTPattern:
    """One Gel'fand-Tsetlin tableau; ``rows[k - 2]`` is row k."""

    rows: tuple[tuple[HalfInt, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows) + 1

    def row(self, k: int) -> tuple[HalfInt, ...]:
        return self.rows[k - 2]

    @property
    def top(self) -> tuple[HalfInt, ...]:
        return self.rows[-1]

    def replace_row(self, k: int, new_row: tuple[HalfInt, ...]) -> "GTPattern":
        rows = list(self.rows)
        rows[k - 2] = tuple(new_row)
        return GTPattern(tuple(rows))


@dataclass(frozen=True)
class Basis:
    """Ordered, indexed list of the tableaux of one representation."""

    weight: HighestWeight
    patterns: tuple[GTPattern, ...]
    index: dict[GTPattern, int] = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.patterns)


def validate_weight(w: HighestWeight) -> bool:
    """True iff the entries satisfy the kind's parity and dominance chain."""
    ent = w.entries
    if w.kind == NONCLASSICAL:
        if any(e.is_integral for e in ent):
            return False
        if any(ent[i] < ent[i + 1] for i in range(len(ent) - 1)):
            return False
        return ent[-1] >= ONE_HALF
    # classical: uniform parity, then the parity-of-n dominance chain
    if len({e.twice % 2 for e in ent}) > 1:
        return False
    if w.n == 2:
        return True
    if any(ent[i] < ent[i + 1] for i in range(len(ent) - 1)):
        return False
    if w.n % 2 == 1:
        return ent[-1] >= 0
    # even n: the last entry is only bounded in absolute value
    if len(ent) >= 2 and ent[-2] < abs(ent[-1]):
        return False
    return True


def _interlaces(upper, lower, upper_k: int, kind: str) -> bool:
    """Betweenness between row ``upper_k`` and the row below it."""
    if upper_k % 2 == 1:
        # odd row over even row: equal lengths p, signed/floored last slot
        p = len(upper)
        for j in range(p - 1):
            if not (upper[j] >= lower[j] >= upper[j + 1]):
                return False
        if not upper[p - 1] >= lower[p - 1]:
            return False
        if kind == CLASSICAL:
            return lower[p - 1] >= -upper[p - 1]
        return lower[p - 1] >= ONE_HALF
    # even row (p entries) over odd row (p - 1 entries)
    p = len(upper)
    for j in range(p - 2):
        if not (upper[j] >= lower[j] >= upper[j + 1]):
            return False
    if p >= 2:
        if not upper[p - 2] >= lower[p - 2]:
            return False
        bound = abs(upper[p - 1]) if kind == CLASSICAL else upper[p - 1]
        if not lower[p - 2] >= bound:
            return False
    return True


def pattern_is_valid(pat: GTPattern, w: HighestWeight) -> bool:
    """True iff the tableau has the given top row and interlaces throughout."""
    if pat.n != w.n or pat.top != w.entries:
        return False
    for k in range(w.n, 2, -1):
        if not _interlaces(pat.row(k), pat.row(k - 1), k, w.kind):
            return False
    return True


def _slot_ranges(upper, upper_k: int, kind: str):
    """Inclusive (lo, hi) bounds for each slot of the row below ``upper_k``."""
    if upper_k % 2 == 1:
        p = len(upper)
        ranges = [(upper[j + 1], upper[j]) for j in range(p - 1)]
        lo = -upper[p - 1] if kind == CLASSICAL else ONE_HALF
        ranges.append((lo, upper[p - 1]))
        return ranges
    p = len(upper)
    ranges = [(upper[j + 1], upper[j]) for j in range(p - 2)]
    if p >= 2:
        lo = abs(upper[p - 1]) if kind == CLASSICAL else upper[p - 1]
        ranges.append((lo, upper[p - 2]))
    return ranges


def _range_values(lo: HalfInt, hi: HalfInt):
    return [HalfInt(t) for t in range(lo.twice, hi.twice + 1, 2)]


@lru_cache(maxsize=None)
def enumerate_basis(w: HighestWeight) -> Basis:
    """All tableaux with top row w, ordered lexicographically top-down.

    The order is fixed so that matrix artifacts are reproducible: rows are
    compared from row n down to row 2, each row left to right.
    """
    if not validate_weight(w):
        raise ValueError(f"invalid highest weight {w}")
    patterns: list[GTPattern] = []

    def descend(rows_above):
        k = w.n - len(rows_above)  # index of the row to generate next
        if k < 2:
            patterns.append(GTPattern(tuple(reversed(rows_above))))
            return
        ranges = _slot_ranges(rows_above[-1], k + 1, w.kind)
        for combo in itertools.product(*(_range_values(lo, hi) for lo, hi in ranges)):
            descend(rows_above + [tuple(combo)])

    descend([w.entries])
    index = {pat: i for i, pat in enumerate(patterns)}
    return Basis(weight=w, patterns=tuple(patterns), index=index)


def dimension(w: HighestWeight) -> int:
    return enumerate_basis(w).dim


def l_of_row(entries, k: int) -> tuple[HalfInt, ...]:
    """l-coordinates of a row of entries sitting at row index k.

    Odd rows k = 2p+1 use l_j = m_j + p - j + 1, even rows k = 2p use
    l_j = m_j + p - j (slots j counted from 1).
    """
    if k % 2 == 1:
        p = (k - 1) // 2
        return tuple(m + (p - j + 1) for j, m in enumerate(entries, start=1))
    p = k // 2
    return tuple(m + (p - j) for j, m in enumerate(entries, start=1))


def l_coords(pat: GTPattern, k: int) -> tuple[HalfInt, ...]:
    """l-coordinates of row k of a tableau."""
    return l_of_row(pat.row(k), k)


def shift(pat: GTPattern, k: int, j: int, delta: int, kind: str):
    """Tableau with m_{j,k} replaced by m_{j,k} +/- 1, or None if that
    leaves the lattice.

    The top row never shifts here (finite-dimensional representations);
    truncated families move their top row through the branching machinery.
    """
    n = pat.n
    if not 2 <= k <= n - 1:
        raise ValueError(f"row {k} not shiftable for n={n}")
    row = pat.row(k)
    if not 1 <= j <= len(row):
        raise ValueError(f"slot {j} out of range for row {k}")
    new_row = row[: j - 1] + (row[j - 1] + delta,) + row[j:]
    cand = pat.replace_row(k, new_row)
    if not _interlaces(cand.row(k + 1), new_row, k + 1, kind):
        return None
    if k > 2 and not _interlaces(new_row, cand.row(k - 1), k, kind):
        return None
    return cand
