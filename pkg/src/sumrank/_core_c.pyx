# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the exhaustive-enumeration hot loops.

Same API as the pure twin in ``_core_py``; ``core`` picks one at import
time.  Element codes fit comfortably in 64 bits (fields are capped well
below 2^63)."""

from libc.stdlib cimport free, malloc

from ._core_py import BudgetExceeded

IMPLEMENTATION = "c"


cdef long long _add_code(long long a, long long b, int q, int M) noexcept nogil:
    cdef long long out, p, da, db
    cdef int i
    if q == 2:
        return a ^ b
    out = 0
    p = 1
    for i in range(M):
        da = (a // p) % q
        db = (b // p) % q
        out += ((da + db) % q) * p
        p *= q
    return out


cdef int _mod_inverse(int a, int q) noexcept nogil:
    cdef int j
    for j in range(1, q):
        if (a * j) % q == 1:
            return j
    return 0


cdef int _expand_rank_c(long long* codes, int cnt, int q, int M) noexcept nogil:
    """Rank over F_q of the M x cnt digit-expansion matrix."""
    cdef long long basis[64]
    cdef long long c
    cdef int r = 0, i, j, t, top, lead, f, inv
    cdef int* rows
    cdef int* piv
    cdef int* pivcol
    if q == 2:
        for i in range(M):
            basis[i] = 0
        for i in range(cnt):
            c = codes[i]
            while c:
                top = 63
                while not (c >> top) & 1:
                    top -= 1
                if basis[top]:
                    c ^= basis[top]
                else:
                    basis[top] = c
                    r += 1
                    break
        return r
    rows = <int*> malloc(cnt * M * sizeof(int))
    piv = <int*> malloc(cnt * M * sizeof(int))
    pivcol = <int*> malloc(cnt * sizeof(int))
    for i in range(cnt):
        c = codes[i]
        for j in range(M):
            rows[i * M + j] = c % q
            c //= q
    for i in range(cnt):
        for t in range(r):
            f = rows[i * M + pivcol[t]]
            if f:
                for j in range(M):
                    rows[i * M + j] = (rows[i * M + j] - f * piv[t * M + j]) % q
                    if rows[i * M + j] < 0:
                        rows[i * M + j] += q
        lead = -1
        for j in range(M):
            if rows[i * M + j]:
                lead = j
                break
        if lead < 0:
            continue
        inv = _mod_inverse(rows[i * M + lead], q)
        for j in range(M):
            piv[r * M + j] = (rows[i * M + j] * inv) % q
        pivcol[r] = lead
        r += 1
    free(rows)
    free(piv)
    free(pivcol)
    return r


def expand_rank(codes, int q, int M):
    cdef int cnt = len(codes)
    cdef long long* buf = <long long*> malloc(max(cnt, 1) * sizeof(long long))
    cdef int i
    try:
        for i in range(cnt):
            buf[i] = codes[i]
        return _expand_rank_c(buf, cnt, q, M)
    finally:
        free(buf)


cdef void _vec_matmul_c(
    long long* u, long long* gen, int k, int n, int q, int M,
    long long order, long long* exp_t, long long* log_t, long long* out,
) noexcept nogil:
    cdef int r, j
    cdef long long lu, mv, prod
    for j in range(n):
        out[j] = 0
    for r in range(k):
        if u[r] == 0:
            continue
        lu = log_t[u[r]]
        for j in range(n):
            mv = gen[r * n + j]
            if mv:
                prod = exp_t[(lu + log_t[mv]) % (order - 1)]
                out[j] = _add_code(out[j], prod, q, M)


cdef long long* _to_ll(values) except NULL:
    cdef int cnt = len(values)
    cdef long long* buf = <long long*> malloc(max(cnt, 1) * sizeof(long long))
    cdef int i
    if buf == NULL:
        raise MemoryError()
    for i in range(cnt):
        buf[i] = values[i]
    return buf


def block_min_sum_rank(
    gen_rows, parts, int q, int M, long long order, exp, log,
    long long budget, long long start=1, stop=None,
):
    cdef int k = len(gen_rows)
    cdef int n = len(gen_rows[0])
    cdef long long total = order ** k
    cdef long long stop_i = total if stop is None else <long long> stop
    cdef long long span = stop_i - start
    if span < 0:
        span = 0
    if start == 0:
        span -= 1
    if span > budget:
        raise BudgetExceeded(span, budget)

    cdef long long* gen = _to_ll([code for row in gen_rows for code in row])
    cdef long long* exp_t = _to_ll(exp)
    cdef long long* log_t = _to_ll(log)
    cdef long long* u = <long long*> malloc(k * sizeof(long long))
    cdef long long* v = <long long*> malloc(n * sizeof(long long))
    cdef int nparts = len(parts)
    cdef int* p_arr = <int*> malloc(nparts * sizeof(int))
    cdef int i, pi, a
    for i in range(nparts):
        p_arr[i] = parts[i]

    cdef long long best = -1, idx, rem, enumerated = 0
    cdef long long w
    try:
        with nogil:
            for idx in range(start, stop_i):
                if idx == 0:
                    continue
                enumerated += 1
                rem = idx
                for i in range(k):
                    u[i] = rem % order
                    rem //= order
                _vec_matmul_c(u, gen, k, n, q, M, order, exp_t, log_t, v)
                w = 0
                a = 0
                for pi in range(nparts):
                    w += _expand_rank_c(v + a, p_arr[pi], q, M)
                    a += p_arr[pi]
                    if best >= 0 and w >= best:
                        break
                if best < 0 or w < best:
                    best = w
        return (None if best < 0 else best), enumerated
    finally:
        free(gen)
        free(exp_t)
        free(log_t)
        free(u)
        free(v)
        free(p_arr)


cdef struct ConvCtx:
    long long* coeffs      # (m+1) * k * n codes
    int k
    int n
    int j
    int m
    int q
    int M
    long long order
    long long qmk
    long long* exp_t
    long long* log_t
    long long budget
    long long enumerated
    long long best
    int systematic
    long long* hist        # (j+1) * k message blocks
    long long* scratch     # (j+2) * n work vectors


cdef void _carry_for(ConvCtx* ctx, int t, long long* acc) noexcept nogil:
    """Sum over i >= 1 of u_{t-i} G_i, from fixed history blocks."""
    cdef int i, c, top
    cdef long long* term
    cdef bint nz
    top = t if t < ctx.m else ctx.m
    term = ctx.scratch + (ctx.j + 1) * ctx.n
    for c in range(ctx.n):
        acc[c] = 0
    for i in range(1, top + 1):
        nz = False
        for c in range(ctx.k):
            if ctx.hist[(t - i) * ctx.k + c]:
                nz = True
                break
        if not nz:
            continue
        _vec_matmul_c(
            ctx.hist + (t - i) * ctx.k, ctx.coeffs + i * ctx.k * ctx.n,
            ctx.k, ctx.n, ctx.q, ctx.M, ctx.order, ctx.exp_t, ctx.log_t, term,
        )
        for c in range(ctx.n):
            acc[c] = _add_code(acc[c], term[c], ctx.q, ctx.M)


cdef bint _zero_extension_weightless(ConvCtx* ctx, int t) noexcept nogil:
    """True iff u_t..u_j = 0 makes every remaining block vanish."""
    cdef int i, c
    # private region past the per-level slots, so callers' carries survive
    cdef long long* acc = ctx.scratch + (ctx.j + 2) * ctx.n
    for i in range(t, ctx.j + 1):
        for c in range(ctx.k):
            ctx.hist[i * ctx.k + c] = 0
    for i in range(t, ctx.j + 1):
        _carry_for(ctx, i, acc)
        for c in range(ctx.n):
            if acc[c]:
                return False
    return True


cdef int _rec(ConvCtx* ctx, int t, long long s) except -2:
    cdef long long idx, rem, r
    cdef int i, c
    cdef long long* carry
    cdef long long* v
    if s >= ctx.best:
        return 0
    if t > ctx.j:
        ctx.best = s
        return 0
    if ctx.systematic and t > 0 and s == ctx.best - 1:
        if _zero_extension_weightless(ctx, t):
            ctx.best = s
        return 0
    carry = ctx.scratch + t * ctx.n
    v = ctx.scratch + (ctx.j + 1) * ctx.n
    _carry_for(ctx, t, carry)
    for idx in range(ctx.qmk):
        if t == 0 and idx == 0:
            continue
        ctx.enumerated += 1
        if ctx.enumerated > ctx.budget:
            raise BudgetExceeded(ctx.enumerated, ctx.budget)
        rem = idx
        for i in range(ctx.k):
            ctx.hist[t * ctx.k + i] = rem % ctx.order
            rem //= ctx.order
        if idx == 0:
            for c in range(ctx.n):
                v[c] = carry[c]
        else:
            _vec_matmul_c(
                ctx.hist + t * ctx.k, ctx.coeffs, ctx.k, ctx.n,
                ctx.q, ctx.M, ctx.order, ctx.exp_t, ctx.log_t, v,
            )
            for c in range(ctx.n):
                v[c] = _add_code(v[c], carry[c], ctx.q, ctx.M)
        r = _expand_rank_c(v, ctx.n, ctx.q, ctx.M)
        if s + r < ctx.best:
            _rec(ctx, t + 1, s + r)
    return 0


def conv_column_distance(
    coeff_rows, int k, int n, int j, int q, int M, long long order,
    exp, log, long long budget, bint systematic,
):
    cdef ConvCtx ctx
    cdef int m = len(coeff_rows) - 1
    flat = [v for g in coeff_rows for row in g for v in row]
    ctx.coeffs = _to_ll(flat)
    ctx.exp_t = _to_ll(exp)
    ctx.log_t = _to_ll(log)
    ctx.k = k
    ctx.n = n
    ctx.j = j
    ctx.m = m
    ctx.q = q
    ctx.M = M
    ctx.order = order
    ctx.qmk = order ** k
    ctx.budget = budget
    ctx.enumerated = 0
    ctx.best = n * (j + 1) + 1  # strictly above any achievable weight
    ctx.systematic = 1 if systematic else 0
    ctx.hist = <long long*> malloc((j + 1) * k * sizeof(long long))
    ctx.scratch = <long long*> malloc((j + 3) * n * sizeof(long long))
    try:
        _rec(&ctx, 0, 0)
        return ctx.best, ctx.enumerated
    finally:
        free(ctx.coeffs)
        free(ctx.exp_t)
        free(ctx.log_t)
        free(ctx.hist)
        free(ctx.scratch)
