"""Trivial-minor detection and the superregularity predicates.

A square minor is *trivial* when every Leibniz term of its determinant
hits a structural zero, i.e. the zero pattern of the submatrix admits no
perfect matching between rows and columns.  A matrix is superregular if
all non-trivial minors are nonzero, and full superregular if every minor
of every size is nonzero.
"""

from __future__ import annotations

import time
from itertools import combinations
from math import comb

from .matrix import Matrix, det
from .report import INFEASIBLE, VerificationReport

DEFAULT_SELECTION_BUDGET = 10**8


class ZeroPattern:
    """Boolean support grid: True where an entry is structurally nonzero."""

    def __init__(self, support: list[list[bool]]):
        self.rows = len(support)
        self.cols = len(support[0]) if self.rows else 0
        if any(len(r) != self.cols for r in support):
            raise ValueError("ragged support grid")
        self.support = [[bool(v) for v in row] for row in support]

    @classmethod
    def of(cls, m: Matrix) -> "ZeroPattern":
        return cls([[v != 0 for v in m.row(r)] for r in range(m.rows)])

    def __getitem__(self, rc):
        r, c = rc
        return self.support[r][c]


class BlockGrid:
    """Block layout of a sliding parity matrix T_j.

    Row blocks all have size k, column blocks size n-k; blocks (s, t)
    with s > t sit below the block diagonal and are structurally zero.
    """

    def __init__(self, row_block_sizes: list[int], col_block_sizes: list[int]):
        if len(row_block_sizes) != len(col_block_sizes):
            raise ValueError("row and column block counts differ")
        self.row_block_sizes = list(row_block_sizes)
        self.col_block_sizes = list(col_block_sizes)
        self.rows = sum(row_block_sizes)
        self.cols = sum(col_block_sizes)
        self._row_block = _index_to_block(row_block_sizes)
        self._col_block = _index_to_block(col_block_sizes)

    @classmethod
    def uniform(cls, k: int, nk: int, blocks: int) -> "BlockGrid":
        return cls([k] * blocks, [nk] * blocks)

    def row_block(self, r: int) -> int:
        return self._row_block[r]

    def col_block(self, c: int) -> int:
        return self._col_block[c]

    def diagonal_allowed(self, row_indices, col_indices) -> bool:
        """True iff every diagonal entry of the selection lies in a block
        (s, t) with s <= t."""
        return all(
            self._row_block[r] <= self._col_block[c]
            for r, c in zip(row_indices, col_indices)
        )


def _index_to_block(sizes) -> list[int]:
    out = []
    for b, s in enumerate(sizes):
        out.extend([b] * s)
    return out


# -- trivial minors ----------------------------------------------------------


def has_perfect_matching(adj: list[list[int]], n_right: int) -> bool:
    """Perfect matching on a bipartite graph via augmenting paths.

    adj[u] lists the right vertices adjacent to left vertex u.
    """
    match_right = [-1] * n_right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                if match_right[v] == -1 or augment(match_right[v], seen):
                    match_right[v] = u
                    return True
        return False

    for u in range(len(adj)):
        if not augment(u, [False] * n_right):
            return False
    return True


def is_trivial_minor(pattern: ZeroPattern, row_indices, col_indices) -> bool:
    """True iff no permutation selects all-nonzero entries of the submatrix."""
    ri, ci = list(row_indices), list(col_indices)
    if len(ri) != len(ci):
        raise ValueError("minor selection is not square")
    adj = [
        [j for j, c in enumerate(ci) if pattern[r, c]]
        for r in ri
    ]
    return not has_perfect_matching(adj, len(ci))


# -- selection enumeration ----------------------------------------------------


def count_square_selections(rows: int, cols: int) -> int:
    return sum(comb(rows, s) * comb(cols, s) for s in range(1, min(rows, cols) + 1))


def iter_square_selections(rows: int, cols: int):
    """Square (row, col) selections, size ascending then lexicographic."""
    for s in range(1, min(rows, cols) + 1):
        for ri in combinations(range(rows), s):
            for ci in combinations(range(cols), s):
                yield ri, ci


# -- predicates ---------------------------------------------------------------


def _check_minors(
    m: Matrix,
    *,
    skip_trivial: bool,
    grid: BlockGrid | None = None,
    budget: int = DEFAULT_SELECTION_BUDGET,
) -> VerificationReport:
    start = time.perf_counter()
    total = count_square_selections(m.rows, m.cols)
    if total > budget:
        return VerificationReport(
            INFEASIBLE,
            detail={"selection_count": total, "budget": budget},
            elapsed=time.perf_counter() - start,
        )
    pattern = ZeroPattern.of(m) if skip_trivial else None
    checked = 0
    for ri, ci in iter_square_selections(m.rows, m.cols):
        if grid is not None and not grid.diagonal_allowed(ri, ci):
            continue
        if skip_trivial and is_trivial_minor(pattern, ri, ci):
            continue
        checked += 1
        if det(m.submatrix(ri, ci)) == 0:
            return VerificationReport(
                False,
                witness={"rows": list(ri), "cols": list(ci)},
                checked_count=checked,
                elapsed=time.perf_counter() - start,
            )
    return VerificationReport(
        True, checked_count=checked, elapsed=time.perf_counter() - start
    )


def is_superregular(m: Matrix, budget: int = DEFAULT_SELECTION_BUDGET) -> VerificationReport:
    """All non-trivial minors (every size) nonzero."""
    return _check_minors(m, skip_trivial=True, budget=budget)


def is_full_superregular(m: Matrix, budget: int = DEFAULT_SELECTION_BUDGET) -> VerificationReport:
    """Every minor of every size nonzero (hence every entry nonzero)."""
    return _check_minors(m, skip_trivial=False, budget=budget)


def is_superregular_constrained(
    m: Matrix, grid: BlockGrid, budget: int = DEFAULT_SELECTION_BUDGET
) -> VerificationReport:
    """Every square submatrix whose diagonal stays in blocks (s, t) with
    s <= t is nonsingular.

    On block-upper-triangular matrices this agrees with plain
    superregularity: a zero on a qualifying diagonal forces zeros right
    and below, making the minor trivially zero either way.
    """
    if grid.rows != m.rows or grid.cols != m.cols:
        raise ValueError("block grid dimensions disagree with the matrix")
    return _check_minors(m, skip_trivial=False, grid=grid, budget=budget)


def count_nontrivial_minors(
    pattern: ZeroPattern,
    grid: BlockGrid | None = None,
    budget: int = DEFAULT_SELECTION_BUDGET,
    min_size: int = 1,
) -> int:
    """Number of square selections (grid-qualifying, when a grid is given)
    whose minor is non-trivial.  min_size=2 drops the 1x1 minors, matching
    the counting convention of published search tables."""
    total = count_square_selections(pattern.rows, pattern.cols)
    if total > budget:
        raise ValueError(f"selection count {total} exceeds budget {budget}")
    count = 0
    for ri, ci in iter_square_selections(pattern.rows, pattern.cols):
        if len(ri) < min_size:
            continue
        if grid is not None and not grid.diagonal_allowed(ri, ci):
            continue
        if not is_trivial_minor(pattern, ri, ci):
            count += 1
    return count
