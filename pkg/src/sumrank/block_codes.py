"""Systematic block codes and the MDS / MRD / MSRD verifier ladder.

The transform-side checkers enumerate base-field transforms (upper
triangular nonsingular per block) and test full-size minors of the
transformed generator; the systematic-side checkers enumerate
(B, A~, C) tuples and test full superregularity of B P A~ + C.  A
Gabidulin constructor supplies positive MRD instances for the oracles.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations, product
from math import comb

from .field import Field
from .matrix import (
    Matrix,
    count_ut_nonsingular,
    det,
    enum_ut_nonsingular,
    minor,
)
from .metrics import LengthPartition
from .report import INFEASIBLE, VerificationReport
from .superregular import (
    DEFAULT_SELECTION_BUDGET,
    count_square_selections,
    is_full_superregular,
)

DEFAULT_TRANSFORM_BUDGET = 10**8
FILTER_RESAMPLE_COUNT = 1000


@dataclass
class SystematicBlockCode:
    """Partitions (n_i), (k_i) and parity part P = [P_1 ... P_l]."""

    length_partition: LengthPartition
    dim_partition: tuple
    parity: Matrix

    def __post_init__(self):
        self.dim_partition = tuple(int(k) for k in self.dim_partition)
        lp = self.length_partition.parts
        if len(self.dim_partition) != len(lp):
            raise ValueError("length and dimension partitions differ in block count")
        if any(not 0 <= k <= n for k, n in zip(self.dim_partition, lp)):
            raise ValueError("dimension partition outside [0, n_i]")
        if self.parity.rows != self.k or self.parity.cols != self.n - self.k:
            raise ValueError(
                f"parity must be {self.k}x{self.n - self.k}, "
                f"got {self.parity.rows}x{self.parity.cols}"
            )

    @property
    def n(self) -> int:
        return self.length_partition.n

    @property
    def k(self) -> int:
        return sum(self.dim_partition)

    @property
    def field(self) -> Field:
        return self.parity.field

    def parity_blocks(self) -> list[Matrix]:
        """P split column-wise into P_i of width n_i - k_i."""
        out = []
        pos = 0
        for n_i, k_i in zip(self.length_partition.parts, self.dim_partition):
            w = n_i - k_i
            out.append(self.parity.submatrix(range(self.k), range(pos, pos + w)))
            pos += w
        return out

    def to_json(self) -> dict:
        return {
            "field": self.field.descriptor(),
            "partition": list(self.length_partition.parts),
            "dims": list(self.dim_partition),
            "parity": self.parity.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SystematicBlockCode":
        parity = Matrix.from_json(obj["parity"])
        return cls(LengthPartition(obj["partition"]), tuple(obj["dims"]), parity)


def assemble_generator(code: SystematicBlockCode) -> Matrix:
    """G = [J_1 P_1 ... J_l P_l], with the k_i x k_i identity of J_i sitting
    in the i-th row block."""
    k, n = code.k, code.n
    f = code.field
    g = Matrix(k, n, f)
    pblocks = code.parity_blocks()
    col = 0
    row_off = 0
    for i, (n_i, k_i) in enumerate(
        zip(code.length_partition.parts, code.dim_partition)
    ):
        for t in range(k_i):
            g[row_off + t, col + t] = 1
        pb = pblocks[i]
        for r in range(k):
            for c in range(pb.cols):
                g[r, col + k_i + c] = pb[r, c]
        col += n_i
        row_off += k_i
    return g


def systematic_form(generator: Matrix) -> Matrix:
    """Parity part of the (unique) systematic encoder [I_k P] obtained by
    row reduction; requires the leading k x k block to be invertible."""
    from .matrix import inverse

    k = generator.rows
    lead = generator.submatrix(range(k), range(k))
    rest = generator.submatrix(range(k), range(k, generator.cols))
    return inverse(lead) @ rest


# -- transform-side checkers ---------------------------------------------------


def check_mds(p: Matrix, budget: int = DEFAULT_SELECTION_BUDGET) -> VerificationReport:
    """MDS iff the parity part is full superregular (classical criterion)."""
    return is_full_superregular(p, budget=budget)


def _full_minors_nonzero(g: Matrix) -> tuple:
    """First vanishing full-size minor of a k x n matrix, or None."""
    k = g.rows
    for ci in combinations(range(g.cols), k):
        if det(g.submatrix(range(k), ci)) == 0:
            return ci
    return None


def check_mrd_transforms(
    g: Matrix, q: int | None = None, budget: int = DEFAULT_TRANSFORM_BUDGET
) -> VerificationReport:
    """MRD check over all nonsingular upper-triangular U over F_q: every
    full-size minor of G U must be nonzero."""
    q = q if q is not None else g.field.q
    n = g.cols
    return check_msrd_transforms(g, LengthPartition([n]), q, budget)


def check_msrd_transforms(
    g: Matrix,
    partition: LengthPartition,
    q: int | None = None,
    budget: int = DEFAULT_TRANSFORM_BUDGET,
) -> VerificationReport:
    """MSRD check over all nonsingular block-diagonal A with upper-triangular
    blocks over F_q: every full-size minor of G A must be nonzero."""
    start = time.perf_counter()
    q = q if q is not None else g.field.q
    k, n = g.rows, g.cols
    if partition.n != n:
        raise ValueError("partition does not sum to the code length")
    a_count = 1
    for n_i in partition.parts:
        a_count *= count_ut_nonsingular(n_i, q)
    total = a_count * comb(n, k)
    if total > budget:
        return VerificationReport(
            INFEASIBLE,
            detail={"transform_count": a_count, "minors_per_transform": comb(n, k),
                    "budget": budget},
            elapsed=time.perf_counter() - start,
        )
    checked = 0
    for blocks in product(*[list(enum_ut_nonsingular(n_i, q))
                            for n_i in partition.parts]):
        a = _block_diag(blocks, q, n)
        ga = g @ a
        checked += 1
        bad = _full_minors_nonzero(ga)
        if bad is not None:
            return VerificationReport(
                False,
                witness={
                    "transform": [b.to_rows() for b in blocks],
                    "rows": list(range(k)),
                    "cols": list(bad),
                },
                checked_count=checked,
                elapsed=time.perf_counter() - start,
                detail={"transform_count": a_count},
            )
    return VerificationReport(
        True,
        checked_count=checked,
        elapsed=time.perf_counter() - start,
        detail={"transform_count": a_count},
    )


def _block_diag(blocks, q: int, n: int) -> Matrix:
    from .field import base_field

    f = base_field(q)
    a = Matrix(n, n, f)
    pos = 0
    for b in blocks:
        for r in range(b.rows):
            for c in range(b.cols):
                a[pos + r, pos + c] = b[r, c]
        pos += b.rows
    return a


# -- systematic-side checkers ---------------------------------------------------


def check_mrd_systematic(
    p: Matrix,
    q: int | None = None,
    mode: str = "exact",
    budget: int = DEFAULT_TRANSFORM_BUDGET,
    resamples: int = FILTER_RESAMPLE_COUNT,
    rng: random.Random | None = None,
) -> VerificationReport:
    """MRD iff B P A~ + C is full superregular for every nonsingular
    upper-triangular B (k x k), A~ ((n-k) x (n-k)) and every C over F_q."""
    k, nk = p.rows, p.cols
    code = SystematicBlockCode(
        LengthPartition([k + nk]), (k,), p
    )
    return check_msrd_systematic(
        code, mode=mode, budget=budget, resamples=resamples, rng=rng, q=q
    )


def check_msrd_systematic(
    code: SystematicBlockCode,
    mode: str = "exact",
    budget: int = DEFAULT_TRANSFORM_BUDGET,
    resamples: int = FILTER_RESAMPLE_COUNT,
    rng: random.Random | None = None,
    q: int | None = None,
) -> VerificationReport:
    """MSRD iff diag(B_i) P diag(A~_i) + diag(C_i) is full superregular for
    every block tuple over F_q.

    mode "exact" enumerates every C tuple.  mode "filter" first checks
    that all minors of B P A~ avoid the base field; pairs that pass skip
    C enumeration (plus a randomized C re-sample), pairs that fail fall
    back to exact C enumeration for that pair.
    """
    if mode not in ("exact", "filter"):
        raise ValueError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    field = code.field
    q = q if q is not None else field.q
    p = code.parity.lift(field)
    k = code.k
    ks = code.dim_partition
    nks = [n_i - k_i for n_i, k_i in zip(code.length_partition.parts, ks)]
    rng = rng or random.Random(0)

    b_count = 1
    for k_i in ks:
        b_count *= count_ut_nonsingular(k_i, q)
    a_count = 1
    for w in nks:
        a_count *= count_ut_nonsingular(w, q)
    c_count = q ** sum(k_i * w for k_i, w in zip(ks, nks))
    pair_count = b_count * a_count
    # budget unit: one minor evaluation
    sels = count_square_selections(k, sum(nks))
    total = pair_count * (c_count if mode == "exact" else resamples + 1) * sels
    if total > budget:
        return VerificationReport(
            INFEASIBLE,
            detail={"b_count": b_count, "a_count": a_count, "c_count": c_count,
                    "budget": budget},
            elapsed=time.perf_counter() - start,
        )

    checked = 0
    filtered_pairs = 0
    for b_blocks in product(*[list(enum_ut_nonsingular(k_i, q)) for k_i in ks]):
        b = _block_diag(b_blocks, q, k)
        bp = b @ p
        for a_blocks in product(*[list(enum_ut_nonsingular(w, q)) for w in nks]):
            a = _block_diag(a_blocks, q, sum(nks))
            bpa = bp @ a
            if mode == "filter":
                if _all_minors_outside_base(bpa, field, q):
                    filtered_pairs += 1
                    c_iter = _sample_c_tuples(ks, nks, q, resamples, rng)
                else:
                    c_iter = _enum_c_matrices(ks, nks, q)
            else:
                c_iter = _enum_c_matrices(ks, nks, q)
            for c in c_iter:
                checked += 1
                t = bpa.add(c)
                rep = is_full_superregular(t)
                if rep.verdict is False:
                    return VerificationReport(
                        False,
                        witness={
                            "B": [m.to_rows() for m in b_blocks],
                            "A": [m.to_rows() for m in a_blocks],
                            "C": c.to_rows(),
                            "rows": rep.witness["rows"],
                            "cols": rep.witness["cols"],
                        },
                        checked_count=checked,
                        elapsed=time.perf_counter() - start,
                        detail={"b_count": b_count, "a_count": a_count,
                                "c_count": c_count},
                    )
    return VerificationReport(
        True,
        checked_count=checked,
        elapsed=time.perf_counter() - start,
        detail={
            "b_count": b_count,
            "a_count": a_count,
            "c_count": c_count,
            "mode": mode,
            "filtered_pairs": filtered_pairs,
        },
    )


def _all_minors_outside_base(m: Matrix, field: Field, q: int) -> bool:
    """Base-field filter: every minor of every size lies outside F_q
    (in particular is nonzero)."""
    from .superregular import iter_square_selections

    for ri, ci in iter_square_selections(m.rows, m.cols):
        if field.is_in_base_field(det(m.submatrix(ri, ci))):
            return False
    return True


def _c_layout(ks, nks):
    """Row/col offsets of the diagonal C_i blocks inside the k x (n-k) frame."""
    out = []
    r = c = 0
    for k_i, w in zip(ks, nks):
        out.append((r, c, k_i, w))
        r += k_i
        c += w
    return out


def _enum_c_matrices(ks, nks, q: int):
    from .field import base_field

    f = base_field(q)
    layout = _c_layout(ks, nks)
    cells = [(r0 + r, c0 + c) for r0, c0, k_i, w in layout
             for r in range(k_i) for c in range(w)]
    k, nk = sum(ks), sum(nks)
    for vals in product(range(q), repeat=len(cells)):
        m = Matrix(k, nk, f)
        for (r, c), v in zip(cells, vals):
            m[r, c] = v
        yield m


def _sample_c_tuples(ks, nks, q: int, count: int, rng: random.Random):
    from .field import base_field

    f = base_field(q)
    layout = _c_layout(ks, nks)
    cells = [(r0 + r, c0 + c) for r0, c0, k_i, w in layout
             for r in range(k_i) for c in range(w)]
    k, nk = sum(ks), sum(nks)
    if q ** len(cells) <= count:
        yield from _enum_c_matrices(ks, nks, q)
        return
    for _ in range(count):
        m = Matrix(k, nk, f)
        for r, c in cells:
            m[r, c] = rng.randrange(q)
        yield m


# -- constructors -----------------------------------------------------------


def construct_gabidulin(n: int, k: int, field: Field) -> Matrix:
    """Moore-matrix generator with evaluation points 1, a, ..., a^(n-1):
    entry (i, j) = (a^j)^(q^i).  Requires M >= n; the code is MRD."""
    if field.M < n:
        raise ValueError(f"Gabidulin code needs M >= n (M={field.M}, n={n})")
    if not 1 <= k <= n:
        raise ValueError(f"invalid dimension k={k} for length n={n}")
    g = Matrix(k, n, field)
    for j in range(n):
        pt = field.alpha_pow(j)
        for i in range(k):
            g[i, j] = field.frobenius(pt, i)
    return g


def recheck_witness(code: SystematicBlockCode, witness: dict) -> bool:
    """Re-evaluate a systematic-side witness: rebuild B P A~ + C and confirm
    the witnessed minor is zero."""
    field = code.field
    base = field.base()
    b = _stack_diag(witness["B"], base)
    a = _stack_diag(witness["A"], base)
    c = Matrix.from_rows(witness["C"], base)
    t = (b @ code.parity.lift(field) @ a).add(c)
    return minor(t, witness["rows"], witness["cols"]) == 0


def recheck_transform_witness(
    g: Matrix, partition: LengthPartition, witness: dict
) -> bool:
    """Re-evaluate a transform-side witness: rebuild G A and confirm the
    witnessed full-size minor is zero."""
    base = g.field.base()
    a = _stack_diag(witness["transform"], base)
    ga = g @ a
    return minor(ga, witness["rows"], witness["cols"]) == 0


def _stack_diag(blocks_rows, f) -> Matrix:
    blocks = [Matrix.from_rows(b, f) if b else Matrix(0, 0, f) for b in blocks_rows]
    size = sum(b.rows for b in blocks)
    m = Matrix(size, size, f)
    pos = 0
    for b in blocks:
        for r in range(b.rows):
            for c in range(b.cols):
                m[pos + r, pos + c] = b[r, c]
        pos += b.rows
    return m


def load_code(obj_or_path) -> SystematicBlockCode:
    import json
    from pathlib import Path

    if isinstance(obj_or_path, dict):
        return SystematicBlockCode.from_json(obj_or_path)
    return SystematicBlockCode.from_json(json.loads(Path(obj_or_path).read_text()))
