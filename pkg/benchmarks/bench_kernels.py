"""Compare the numba kernels against the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py [--sizes 60,120,240] [--density 0.2]

The first numba call includes JIT compilation; it is timed separately so
the steady-state numbers are honest.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from gevi._kernels import numba_backend, python_backend


def random_csr(rng: random.Random, n: int, density: float):
    adj = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                adj[i].append(j)
                adj[j].append(i)
    indptr = np.zeros(n + 1, dtype=np.int64)
    flat: list[int] = []
    for i, nbrs in enumerate(adj):
        flat.extend(sorted(nbrs))
        indptr[i + 1] = len(flat)
    return indptr, np.array(flat, dtype=np.int64)


def timed(fn, *args, repeat: int = 3) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="60,120,240",
                        help="comma-separated vertex counts")
    parser.add_argument("--density", type=float, default=0.2)
    parser.add_argument("--k", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = random.Random(1)

    warm = random_csr(rng, 30, 0.3)
    start = time.perf_counter()
    numba_backend.enumerate_k_cliques_ids(*warm, 30, args.k)
    numba_backend.count_inversions(np.arange(100)[::-1])
    print(f"numba compile+first call: {time.perf_counter() - start:.2f}s\n")

    print(f"k-clique enumeration (k={args.k}, density={args.density})")
    print(f"{'n':>6} {'cliques':>9} {'numba':>10} {'python':>10} {'speedup':>8}")
    for n in sizes:
        indptr, indices = random_csr(rng, n, args.density)
        rows = numba_backend.enumerate_k_cliques_ids(indptr, indices, n, args.k)
        t_nb = timed(numba_backend.enumerate_k_cliques_ids, indptr, indices, n, args.k)
        t_py = timed(python_backend.enumerate_k_cliques_ids, indptr, indices, n, args.k)
        print(f"{n:>6} {len(rows):>9} {t_nb:>9.4f}s {t_py:>9.4f}s {t_py / t_nb:>7.1f}x")

    # the fallback is quadratic (chunked numpy); keep its sizes modest
    print("\ninversion counting (numba: merge sort, python: chunked pairwise)")
    print(f"{'n':>8} {'numba':>10} {'python':>10} {'speedup':>8}")
    for n in (2_000, 10_000, 40_000):
        seq = np.array([rng.randrange(n) for _ in range(n)], dtype=np.int64)
        assert numba_backend.count_inversions(seq) == python_backend.count_inversions(seq)
        t_nb = timed(numba_backend.count_inversions, seq)
        t_py = timed(python_backend.count_inversions, seq, repeat=2)
        print(f"{n:>8} {t_nb:>9.4f}s {t_py:>9.4f}s {t_py / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
