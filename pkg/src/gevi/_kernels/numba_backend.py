"""Numba-compiled kernels: k-clique enumeration and inversion counting.

Inputs are CSR adjacency arrays (int64, neighbor lists sorted ascending)
and int64 position sequences.  Signatures mirror python_backend exactly.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _kcliques_csr(indptr, indices, n, k):
    # Enumerates every increasing vertex tuple v0 < v1 < ... < v_{k-1}
    # whose members are pairwise adjacent.  DFS with per-depth candidate
    # buffers; cand[d] holds vertices adjacent to all of stack[0..d],
    # each greater than stack[d].
    max_deg = 0
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        if d > max_deg:
            max_deg = d

    cap = 1024
    out = np.empty((cap, k), np.int64)
    count = 0
    if max_deg + 1 < k:
        return out[:0]

    stack = np.empty(k, np.int64)
    cand = np.empty((k - 1, max_deg), np.int64)
    cand_n = np.zeros(k - 1, np.int64)
    cand_pos = np.zeros(k - 1, np.int64)

    for v in range(n):
        m = 0
        for e in range(indptr[v], indptr[v + 1]):
            u = indices[e]
            if u > v:
                cand[0, m] = u
                m += 1
        if m == 0:
            continue
        stack[0] = v
        cand_n[0] = m
        cand_pos[0] = 0
        d = 0
        while d >= 0:
            if d == k - 2:
                # every remaining candidate completes one clique
                for i in range(cand_n[d]):
                    if count == cap:
                        cap *= 2
                        grown = np.empty((cap, k), np.int64)
                        grown[:count] = out[:count]
                        out = grown
                    for j in range(k - 1):
                        out[count, j] = stack[j]
                    out[count, k - 1] = cand[d, i]
                    count += 1
                d -= 1
                continue
            if cand_pos[d] >= cand_n[d]:
                d -= 1
                continue
            u = cand[d, cand_pos[d]]
            cand_pos[d] += 1
            # next candidates: intersection of cand[d] past u with
            # neighbors of u above u (both sorted ascending)
            a = cand_pos[d]
            b = indptr[u]
            b_end = indptr[u + 1]
            m = 0
            while a < cand_n[d] and b < b_end:
                x = cand[d, a]
                y = indices[b]
                if y <= u:
                    b += 1
                elif x < y:
                    a += 1
                elif y < x:
                    b += 1
                else:
                    cand[d + 1, m] = x
                    m += 1
                    a += 1
                    b += 1
            if m == 0:
                continue
            stack[d + 1] = u
            d += 1
            cand_n[d] = m
            cand_pos[d] = 0

    return out[:count]


def enumerate_k_cliques_ids(indptr, indices, n, k):
    """All k-cliques of a CSR graph as an (m, k) int64 array, rows ascending."""
    return _kcliques_csr(
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(indices, dtype=np.int64),
        np.int64(n),
        np.int64(k),
    )


@njit(cache=True)
def _merge_count(a, buf, lo, hi):
    if hi - lo < 2:
        return 0
    mid = (lo + hi) // 2
    inv = _merge_count(a, buf, lo, mid) + _merge_count(a, buf, mid, hi)
    i = lo
    j = mid
    for t in range(lo, hi):
        if i < mid and (j >= hi or a[i] <= a[j]):
            buf[t] = a[i]
            i += 1
        else:
            inv += mid - i
            buf[t] = a[j]
            j += 1
    for t in range(lo, hi):
        a[t] = buf[t]
    return inv


def count_inversions(seq):
    """Number of pairs i < j with seq[i] > seq[j] (strict)."""
    a = np.array(seq, dtype=np.int64)
    buf = np.empty_like(a)
    return int(_merge_count(a, buf, 0, a.size))
