# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of :mod:`graphprod._pykernels` (same signatures, same output)."""
from libc.stdlib cimport malloc, free


def reduce_cyclic(adj, moduli, vids, vals):
    cdef Py_ssize_t n = len(vids), nv = len(adj)
    cdef Py_ssize_t i, k, j, pos, best, top = 0
    cdef unsigned long long *amask = <unsigned long long *> malloc(nv * sizeof(unsigned long long))
    cdef long long *mods = <long long *> malloc(nv * sizeof(long long))
    cdef int *sv = <int *> malloc((n + 1) * sizeof(int))
    cdef long long *sx = <long long *> malloc((n + 1) * sizeof(long long))
    cdef int v, u, tv
    cdef long long x, y, m, tx
    cdef unsigned long long seen
    cdef bint merged
    if not amask or not mods or not sv or not sx:
        free(amask); free(mods); free(sv); free(sx)
        raise MemoryError()
    try:
        for i in range(nv):
            amask[i] = adj[i]
            mods[i] = moduli[i]
        for i in range(n):
            v = vids[i]
            x = vals[i]
            m = mods[v]
            if m:
                x %= m
                if x < 0:
                    x += m
            if x == 0:
                continue
            k = top - 1
            merged = False
            while k >= 0:
                u = sv[k]
                if u == v:
                    y = sx[k] + x
                    if m:
                        y %= m
                    if y == 0:
                        for j in range(k, top - 1):
                            sv[j] = sv[j + 1]
                            sx[j] = sx[j + 1]
                        top -= 1
                    else:
                        sx[k] = y
                    merged = True
                    break
                if not ((amask[v] >> u) & 1):
                    break
                k -= 1
            if not merged:
                sv[top] = v
                sx[top] = x
                top += 1
        for pos in range(top):
            best = -1
            seen = 0
            for j in range(pos, top):
                u = sv[j]
                if (seen & ~amask[u]) == 0 and (best < 0 or u < sv[best]):
                    best = j
                seen |= (<unsigned long long> 1) << u
            if best != pos:
                tv = sv[best]
                tx = sx[best]
                for j in range(best, pos, -1):
                    sv[j] = sv[j - 1]
                    sx[j] = sx[j - 1]
                sv[pos] = tv
                sx[pos] = tx
        return [sv[i] for i in range(top)], [sx[i] for i in range(top)]
    finally:
        free(amask); free(mods); free(sv); free(sx)
