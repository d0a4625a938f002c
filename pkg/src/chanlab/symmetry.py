"""Deciding whether a channel is symmetric.

A channel is symmetric when its output alphabet splits into classes such that
each class's column-submatrix is strongly symmetric: rows are permutations of
one another and columns are permutations of one another.

``find_symmetry_partition`` groups columns by their sorted multiset first (a
class can only contain columns with equal multisets) and then searches set
partitions inside each group.  ``brute_force_is_symmetric`` ignores the
grouping and tries every partition of the range; it exists to check the
detector.  All comparisons are exact, so float channels are rejected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .channel import MATERIALIZATION_CAP, Channel, DenseChannel, check_cap, materialize
from .errors import GroupTooLarge, RangeTooLargeForOracle, RequiresExactMode
from .prob import EXACT

MAX_GROUP = 12
MAX_ORACLE_RANGE = 8


def _require_exact(values) -> None:
    for v in values:
        if isinstance(v, float):
            raise RequiresExactMode("permutation checks need exact rational entries")


def is_strongly_symmetric(sub: Sequence[Sequence]) -> bool:
    rows = [tuple(r) for r in sub]
    if not rows or not rows[0]:
        return True
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("matrix is not rectangular")
    _require_exact(v for r in rows for v in r)
    first_row = sorted(rows[0])
    if any(sorted(r) != first_row for r in rows[1:]):
        return False
    cols = list(zip(*rows))
    first_col = sorted(cols[0])
    return all(sorted(c) == first_col for c in cols[1:])


def set_partitions(items: Sequence) -> Iterator[list[list]]:
    """Every set partition of ``items`` via restricted growth strings."""
    n = len(items)
    if n == 0:
        yield []
        return
    a = [0] * n

    def rec(i: int, m: int):
        if i == n:
            blocks = [[] for _ in range(m + 1)]
            for item, b in zip(items, a):
                blocks[b].append(item)
            yield blocks
            return
        for b in range(m + 2):
            a[i] = b
            yield from rec(i + 1, max(m, b))

    a[0] = 0
    yield from rec(1, 0)


@dataclass(frozen=True)
class ClassEvidence:
    labels: tuple[str, ...]
    row_multisets: tuple[tuple[Fraction, ...], ...]
    col_multisets: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class SymmetryWitness:
    classes: tuple[ClassEvidence, ...]

    symmetric = True

    def __bool__(self):
        return True

    @property
    def partition(self) -> list[list[str]]:
        return [list(c.labels) for c in self.classes]

    def verify(self, ch: Channel) -> bool:
        """Re-check the witness against ``ch`` from scratch."""
        dense = materialize(ch)
        labels = [y for c in self.classes for y in c.labels]
        if sorted(labels) != sorted(dense.range) or len(set(labels)) != len(labels):
            return False
        for c in self.classes:
            sub = _submatrix(dense, [dense.range.index(y) for y in c.labels])
            rows = [tuple(sorted(r)) for r in sub]
            cols = [tuple(sorted(col)) for col in zip(*sub)]
            if tuple(rows) != c.row_multisets or tuple(cols) != c.col_multisets:
                return False
            if len(set(rows)) != 1 or len(set(cols)) != 1:
                return False
        return True

    def certificate(self) -> str:
        lines = ["SYMMETRIC"]
        lines += ["class: " + " ".join(sorted(c.labels)) for c in self.classes]
        return "\n".join(lines)


@dataclass(frozen=True)
class NotSymmetric:
    failing_groups: tuple[tuple[str, ...], ...]

    symmetric = False

    def __bool__(self):
        return False

    def certificate(self) -> str:
        lines = ["NOT SYMMETRIC"]
        lines += ["group: " + " ".join(sorted(g)) for g in self.failing_groups]
        return "\n".join(lines)


def _submatrix(dense: DenseChannel, cols: Sequence[int]) -> list[list[Fraction]]:
    return [[r[j] for j in cols] for r in dense.matrix]


def _exact_dense(ch: Channel, cap: int) -> DenseChannel:
    if ch.mode != EXACT:
        raise RequiresExactMode("symmetry detection needs an exact-mode channel")
    check_cap(ch, cap)
    return materialize(ch, cap)


def _witness(dense: DenseChannel, blocks: list[list[int]]) -> SymmetryWitness:
    blocks = sorted((sorted(b) for b in blocks), key=lambda b: b[0])
    evidence = []
    for b in blocks:
        sub = _submatrix(dense, b)
        evidence.append(ClassEvidence(
            labels=tuple(dense.range[j] for j in b),
            row_multisets=tuple(tuple(sorted(r)) for r in sub),
            col_multisets=tuple(tuple(sorted(c)) for c in zip(*sub)),
        ))
    return SymmetryWitness(tuple(evidence))


def _search_group(dense: DenseChannel, group: list[int]) -> list[list[int]] | None:
    """Backtracking over set partitions of ``group``.

    The block holding the lowest unplaced column is chosen first, smaller
    blocks before larger ones and lexicographic within a size.
    """
    ok_cache: dict[tuple[int, ...], bool] = {}

    def ok(block: tuple[int, ...]) -> bool:
        if block not in ok_cache:
            ok_cache[block] = is_strongly_symmetric(_submatrix(dense, block))
        return ok_cache[block]

    def rec(remaining: list[int]) -> list[list[int]] | None:
        if not remaining:
            return []
        head, rest = remaining[0], remaining[1:]
        for size in range(len(remaining)):
            for others in itertools.combinations(rest, size):
                block = (head,) + others
                if not ok(block):
                    continue
                left = [j for j in rest if j not in others]
                tail = rec(left)
                if tail is not None:
                    return [list(block)] + tail
        return None

    return rec(sorted(group))


def column_groups(dense: DenseChannel) -> list[list[int]]:
    """Column indices grouped by sorted column multiset, in first-seen order."""
    groups: dict[tuple, list[int]] = {}
    for j in range(dense.range_size):
        key = tuple(sorted(r[j] for r in dense.matrix))
        groups.setdefault(key, []).append(j)
    return list(groups.values())


def find_symmetry_partition(ch: Channel, cap: int = MATERIALIZATION_CAP) -> SymmetryWitness | NotSymmetric:
    dense = _exact_dense(ch, cap)
    blocks, failing = [], []
    for group in column_groups(dense):
        if len(group) > MAX_GROUP:
            raise GroupTooLarge(f"column group of size {len(group)} exceeds {MAX_GROUP}")
        found = _search_group(dense, group)
        if found is None:
            failing.append(tuple(dense.range[j] for j in group))
        else:
            blocks.extend(found)
    if failing:
        return NotSymmetric(tuple(failing))
    return _witness(dense, blocks)


def brute_force_is_symmetric(ch: Channel) -> SymmetryWitness | NotSymmetric:
    if ch.range_size > MAX_ORACLE_RANGE:
        raise RangeTooLargeForOracle(f"range of size {ch.range_size} exceeds {MAX_ORACLE_RANGE}")
    dense = _exact_dense(ch, MATERIALIZATION_CAP)
    for blocks in set_partitions(list(range(dense.range_size))):
        if all(is_strongly_symmetric(_submatrix(dense, b)) for b in blocks):
            return _witness(dense, blocks)
    return NotSymmetric((tuple(dense.range),))


def is_symmetric(ch: Channel) -> bool:
    return bool(find_symmetry_partition(ch))
