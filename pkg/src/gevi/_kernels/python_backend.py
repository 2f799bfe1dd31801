"""Fallback kernels without numba: numpy vectorization plus plain python.

Same contracts as numba_backend; kept in lockstep by tests/test_kernels.py.
"""

import numpy as np


def enumerate_k_cliques_ids(indptr, indices, n, k):
    """All k-cliques of a CSR graph as an (m, k) int64 array, rows ascending."""
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    above = [indices[indptr[v] : indptr[v + 1]] for v in range(n)]
    above = [nbrs[nbrs > v] for v, nbrs in enumerate(above)]
    adj = [set(indices[indptr[v] : indptr[v + 1]].tolist()) for v in range(n)]

    out = []

    def extend(stack, cand):
        if len(stack) == k - 1:
            for u in cand:
                out.append(stack + [u])
            return
        for i, u in enumerate(cand):
            nxt = [w for w in cand[i + 1 :] if w in adj[u]]
            if nxt:
                extend(stack + [u], nxt)

    for v in range(n):
        cand = above[v].tolist()
        if cand:
            extend([v], cand)
    if not out:
        return np.empty((0, k), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def count_inversions(seq):
    """Number of pairs i < j with seq[i] > seq[j] (strict)."""
    a = np.asarray(seq, dtype=np.int64)
    m = a.size
    if m < 2:
        return 0
    total = 0
    # chunk the O(m^2) comparison matrix to bound memory
    chunk = max(1, (1 << 22) // max(m, 1))
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        block = a[lo:hi, None] > a[None, :]
        cols = np.arange(m)[None, :]
        rows = np.arange(lo, hi)[:, None]
        total += int(np.count_nonzero(block & (cols > rows)))
    return total
