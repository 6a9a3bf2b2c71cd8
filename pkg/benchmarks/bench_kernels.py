"""Benchmark the compiled extension kernels against the pure-Python
fallback on the three hot loops.

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import argparse
import random
import time

from sumrank import _core_py
from sumrank.conv_codes import construct_frobenius
from sumrank.field import field

try:
    from sumrank import _core_c
except ImportError:
    _core_c = None


def _time(fn, repeat: int) -> float:
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def bench_expand_rank(mod, f, vectors):
    def run():
        for v in vectors:
            mod.expand_rank(v, f.q, f.M)

    return run


def bench_min_distance(mod, f, gen_rows, parts):
    args = (gen_rows, parts, f.q, f.M, f.order, f.exp, f.log, 10**9)

    def run():
        mod.block_min_sum_rank(*args)

    return run


def bench_column_distance(mod, f, coeff_rows, k, n, j):
    def run():
        mod.conv_column_distance(
            coeff_rows, k, n, j, f.q, f.M, f.order, f.exp, f.log, 10**9, True
        )

    return run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3,
                    help="timing repetitions, best of (default 3)")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    if _core_c is None:
        print("compiled extension not available; showing pure Python only")
    rng = random.Random(args.seed)

    cases = []

    f8 = field(2, 3)
    vectors = [[rng.randrange(8) for _ in range(6)] for _ in range(20000)]
    cases.append(("expand_rank 20000x len-6 over F_8",
                  lambda mod: bench_expand_rank(mod, f8, vectors)))

    f16 = field(2, 4)
    gen_rows = [[rng.randrange(16) for _ in range(6)] for _ in range(3)]
    cases.append(("block_min_sum_rank [6,3] over F_16, blocks (3,3)",
                  lambda mod: bench_min_distance(mod, f16, gen_rows, [3, 3])))

    f128 = field(2, 7)
    enc = construct_frobenius(3, 2, 2, f128, f128.alpha_pow(3))
    coeff_rows = [g.to_rows() for g in enc.coeffs]
    cases.append(("conv_column_distance [3,2,2] over F_128, j=2",
                  lambda mod: bench_column_distance(
                      mod, f128, coeff_rows, 2, 3, 2)))

    header = f"{'case':<50} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make in cases:
        py = _time(make(_core_py), args.repeat)
        if _core_c is not None:
            cc = _time(make(_core_c), args.repeat)
            print(f"{name:<50} {py:>9.3f}s {cc:>9.3f}s {py / cc:>7.1f}x")
        else:
            print(f"{name:<50} {py:>9.3f}s {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
