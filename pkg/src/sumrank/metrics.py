"""Expansion to the base field, (sum-)rank weights, brute-force distances
and the Singleton-type bounds."""

from __future__ import annotations

from dataclasses import dataclass

from . import core
from .core import BudgetExceeded  # noqa: F401  (re-exported for callers)
from .field import Field
from .matrix import Matrix

DEFAULT_MESSAGE_BUDGET = 1 << 24


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class LengthPartition:
    parts: tuple

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise PartitionError(f"invalid length partition {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def blocks(self) -> int:
        return len(self.parts)

    def offsets(self):
        pos = 0
        for p in self.parts:
            yield pos, pos + p
            pos += p


@dataclass(frozen=True)
class SumRankProfile:
    per_block_ranks: tuple
    total: int


def expand(v, field: Field) -> Matrix:
    """Expand a vector over F_{q^M} into the M x n matrix of polynomial-basis
    coordinates over F_q (column i = digits of v[i])."""
    base = field.base()
    cols = [field.digits(code) for code in v]
    data = []
    for r in range(field.M):
        for col in cols:
            data.append(col[r])
    return Matrix(field.M, len(v), base, data)


def rank_weight(v, field: Field) -> int:
    return core.expand_rank(list(v), field.q, field.M)


def sum_rank_weight(v, partition: LengthPartition, field: Field) -> SumRankProfile:
    v = list(v)
    if partition.n != len(v):
        raise PartitionError(
            f"partition sums to {partition.n}, vector has length {len(v)}"
        )
    ranks = tuple(
        core.expand_rank(v[a:b], field.q, field.M) for a, b in partition.offsets()
    )
    return SumRankProfile(ranks, sum(ranks))


def sum_rank_distance(u, w, partition: LengthPartition, field: Field) -> int:
    diff = [field.sub(a, b) for a, b in zip(u, w)]
    return sum_rank_weight(diff, partition, field).total


def hamming_weight(v) -> int:
    return sum(1 for x in v if x)


def min_sum_rank_distance(
    generator: Matrix,
    partition: LengthPartition,
    budget: int = DEFAULT_MESSAGE_BUDGET,
    workers: int = 1,
) -> int:
    """Brute-force minimum sum-rank weight over all nonzero messages.

    Raises BudgetExceeded when q^(M k) - 1 messages are over budget.
    """
    field = generator.field
    if partition.n != generator.cols:
        raise PartitionError("partition does not sum to the code length")
    k = generator.rows
    total = field.order**k
    if total - 1 > budget:
        raise BudgetExceeded(total - 1, budget)
    if field.exp is None:
        raise ValueError("field too large for kernel tables")
    gen_rows = generator.to_rows()
    args = (gen_rows, list(partition.parts), field.q, field.M, field.order,
            field.exp, field.log)
    if workers > 1 and total > 4 * workers:
        return _parallel_min(args, total, budget, workers)
    best, _ = core.block_min_sum_rank(*args, budget)
    return best


def _parallel_min(args, total, budget, workers):
    import multiprocessing as mp

    bounds = [1 + (total - 1) * i // workers for i in range(workers)] + [total]
    jobs = [
        (args, budget, bounds[i], bounds[i + 1])
        for i in range(workers)
        if bounds[i] < bounds[i + 1]
    ]
    with mp.Pool(workers) as pool:
        results = pool.map(_min_chunk, jobs)
    return min(r for r in results if r is not None)


def _min_chunk(job):
    args, budget, start, stop = job
    best, _ = core.block_min_sum_rank(*args, budget, start, stop)
    return best


def column_sum_rank_distance(
    encoder, j: int, budget: int = DEFAULT_MESSAGE_BUDGET
) -> int:
    """j-th column sum-rank distance of a convolutional encoder, brute force
    with block-by-block pruning.  Raises BudgetExceeded when the pruned
    search still visits more nodes than the budget allows."""
    field = encoder.field
    if field.exp is None:
        raise ValueError("field too large for kernel tables")
    coeff_rows = [g.to_rows() for g in encoder.coeffs]
    dist, _ = core.conv_column_distance(
        coeff_rows,
        encoder.k,
        encoder.n,
        j,
        field.q,
        field.M,
        field.order,
        field.exp,
        field.log,
        budget,
        encoder.systematic,
    )
    return dist


def column_distance_bound(j: int, n: int, k: int) -> int:
    return (j + 1) * (n - k) + 1


def free_distance_bound(m: int, n: int, k: int) -> int:
    """Maximum possible free sum-rank distance of a memory-m systematic code;
    reported as a bound only."""
    return (n - k) * (m + 1) + 1


def singleton_bounds(n: int, k: int, M: int, partition: LengthPartition):
    """(refined rank bound, refined sum-rank bound, classical bound).

    The refined sum-rank bound requires equal block lengths; it is None
    for unequal partitions.
    """
    classical = n - k + 1
    # distances are integers, so the fractional bounds floor cleanly
    refined_rank = (n - k if M >= n else M * (n - k) // n) + 1
    if len(set(partition.parts)) == 1:
        ell = partition.blocks
        refined_sum_rank = (n - k if ell * M >= n else ell * M * (n - k) // n) + 1
    else:
        refined_sum_rank = None
    return refined_rank, refined_sum_rank, classical
