"""Benchmark the LCS scoring kernel: compiled extension vs pure Python.

The longest-common-subsequence dynamic programme dominates ROUGE-L runtime
on long texts, which is why it is the one compiled hot spot. Run with:

    python benchmarks/bench_lcs.py
"""

from __future__ import annotations

import random
import time

from delibsum.metrics import _kernels_py

try:
    from delibsum.metrics import _kernels  # compiled

    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False

SIZES = [(50, 50), (200, 200), (500, 500), (1_000, 1_000), (2_000, 2_000)]
VOCAB = 500


def token_ids(rng: random.Random, n: int) -> list[int]:
    return [rng.randrange(VOCAB) for _ in range(n)]


def bench(fn, a, b, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(a, b)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    rng = random.Random(0)
    header = f"{'size':>12} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for m, n in SIZES:
        a = token_ids(rng, m)
        b = token_ids(rng, n)
        repeats = 3 if m >= 1_000 else 10
        py = bench(_kernels_py.lcs_len_ids, a, b, repeats)
        if HAVE_COMPILED:
            cy = bench(_kernels.lcs_len_ids, a, b, repeats)
            assert _kernels.lcs_len_ids(a, b) == _kernels_py.lcs_len_ids(a, b)
            print(f"{m}x{n:>7} {py * 1e3:>10.2f}ms {cy * 1e3:>10.2f}ms {py / cy:>8.1f}x")
        else:
            print(f"{m}x{n:>7} {py * 1e3:>10.2f}ms {'n/a':>12} {'n/a':>9}")
    if not HAVE_COMPILED:
        print("\ncompiled kernel not built; install with `pip install -e .`")


if __name__ == "__main__":
    main()
