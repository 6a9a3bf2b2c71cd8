"""Pure-Python kernels for the exhaustive-enumeration hot loops.

Same API as the compiled twin in ``_core_c``; ``core`` picks one at
import time.  Everything here works for any prime q; the compiled
version additionally requires the field's log/antilog tables.
"""

from __future__ import annotations


class BudgetExceeded(Exception):
    """Raised when an enumeration would pass its configured budget."""

    def __init__(self, enumerated: int, budget: int):
        super().__init__(f"enumeration budget exceeded ({enumerated} > {budget})")
        self.enumerated = enumerated
        self.budget = budget


IMPLEMENTATION = "python"


def expand_rank(codes, q: int, M: int) -> int:
    """Rank over F_q of the M x len matrix whose columns are the base-q
    digit expansions of the given element codes."""
    if q == 2:
        basis = [0] * M
        r = 0
        for c in codes:
            while c:
                top = c.bit_length() - 1
                if basis[top]:
                    c ^= basis[top]
                else:
                    basis[top] = c
                    r += 1
                    break
        return r
    # eliminate on the transpose: each expansion is one row of length M
    rows = []
    for c in codes:
        digs = []
        for _ in range(M):
            c, d = divmod(c, q)
            digs.append(d)
        rows.append(digs)
    rank = 0
    pivots = []
    for row in rows:
        for pcol, prow in pivots:
            f = row[pcol]
            if f:
                for i in range(M):
                    row[i] = (row[i] - f * prow[i]) % q
        lead = next((i for i, v in enumerate(row) if v), None)
        if lead is None:
            continue
        inv = pow(row[lead], q - 2, q)
        row = [(v * inv) % q for v in row]
        pivots.append((lead, row))
        rank += 1
    return rank


def _vec_matmul(u, mat_rows, q: int, order: int, exp, log, M: int):
    """u (len k) times matrix given as k rows of n codes; returns n codes."""
    n = len(mat_rows[0])
    out = [0] * n
    for r, uv in enumerate(u):
        if uv == 0:
            continue
        row = mat_rows[r]
        lu = log[uv]
        if q == 2:
            for j in range(n):
                m = row[j]
                if m:
                    out[j] ^= exp[(lu + log[m]) % (order - 1)]
        else:
            for j in range(n):
                m = row[j]
                if m:
                    out[j] = _add(out[j], exp[(lu + log[m]) % (order - 1)], q, M)
    return out


def _add(a: int, b: int, q: int, M: int) -> int:
    if q == 2:
        return a ^ b
    out = 0
    p = 1
    for _ in range(M):
        da = (a // p) % q
        db = (b // p) % q
        out += ((da + db) % q) * p
        p *= q
    return out


def _decode_message(idx: int, k: int, order: int):
    u = []
    for _ in range(k):
        idx, d = divmod(idx, order)
        u.append(d)
    return u


def block_min_sum_rank(
    gen_rows,
    parts,
    q: int,
    M: int,
    order: int,
    exp,
    log,
    budget: int,
    start: int = 1,
    stop: int | None = None,
):
    """Minimum sum-rank weight over messages u with index in [start, stop),
    index 0 (the zero message) excluded.  Returns (min, enumerated)."""
    k = len(gen_rows)
    total = order**k
    if stop is None:
        stop = total
    span = max(0, stop - start) - (1 if start == 0 else 0)
    if span > budget:
        raise BudgetExceeded(span, budget)
    offsets = []
    pos = 0
    for p in parts:
        offsets.append((pos, pos + p))
        pos += p
    best = None
    enumerated = 0
    for idx in range(start, stop):
        if idx == 0:
            continue
        enumerated += 1
        u = _decode_message(idx, k, order)
        v = _vec_matmul(u, gen_rows, q, order, exp, log, M)
        w = 0
        for a, b in offsets:
            w += expand_rank(v[a:b], q, M)
            if best is not None and w >= best:
                break
        if best is None or w < best:
            best = w
    return best, enumerated


def conv_column_distance(
    coeff_rows,
    k: int,
    n: int,
    j: int,
    q: int,
    M: int,
    order: int,
    exp,
    log,
    budget: int,
    systematic: bool,
):
    """j-th column sum-rank distance by pruned depth-first search.

    coeff_rows: list of m+1 coefficient matrices, each as k rows of n
    codes.  Enumerates u_0 != 0 and u_1..u_j over F_{q^M}^k, accumulating
    per-block expansion ranks, abandoning a branch once the partial sum
    reaches the best total found so far.  When the encoder is systematic
    a branch one unit under the best is settled by checking the unique
    all-zero-rank extension instead of enumerating it.

    Returns (distance, enumerated_nodes).
    """
    m = len(coeff_rows) - 1
    qmk = order**k
    best = [n * (j + 1) + 1]  # strictly above any achievable weight
    enumerated = [0]

    def carry_for(history, t):
        """sum over i >= 1 of u_{t-i} G_i, from fixed history blocks."""
        acc = [0] * n
        for i in range(1, min(t, m) + 1):
            u = history[t - i]
            if any(u):
                term = _vec_matmul(u, coeff_rows[i], q, order, exp, log, M)
                acc = [_add(a, b, q, M) for a, b in zip(acc, term)]
        return acc

    def zero_extension_weightless(history, t):
        """True iff u_t..u_j = 0 makes every remaining block vanish."""
        hist = list(history)
        for i in range(t, j + 1):
            hist.append([0] * k)
            if any(carry_for(hist, i)):
                return False
        return True

    def rec(t, s, history):
        if s >= best[0]:
            return
        if t > j:
            best[0] = s
            return
        if systematic and t > 0 and s == best[0] - 1:
            if zero_extension_weightless(history, t):
                best[0] = s
            return
        carry = carry_for(history, t)
        for idx in range(qmk):
            if t == 0 and idx == 0:
                continue
            enumerated[0] += 1
            if enumerated[0] > budget:
                raise BudgetExceeded(enumerated[0], budget)
            u = _decode_message(idx, k, order)
            if idx == 0:
                v = carry
            else:
                v = _vec_matmul(u, coeff_rows[0], q, order, exp, log, M)
                v = [_add(a, b, q, M) for a, b in zip(v, carry)]
            r = expand_rank(v, q, M)
            if s + r < best[0]:
                rec(t + 1, s + r, history + [u])

    rec(0, 0, [])
    return best[0], enumerated[0]
