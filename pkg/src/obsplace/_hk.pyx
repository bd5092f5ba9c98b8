# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Hopcroft-Karp kernel.

Mirrors obsplace._hk_py.hk_augment exactly (same scan order, same result);
see that module for the algorithm description.
"""

import numpy as np

cdef int _INF = -1


def hk_augment(int n_left,
               int[::1] base_indptr, int[::1] base_indices,
               int[::1] ext_indptr, int[::1] ext_indices,
               int[::1] pair_left, int[::1] pair_right):
    """Augment the matching in place; return the number of new pairs."""
    cdef int nb = base_indptr.shape[0] - 1
    cdef int n_right = nb + ext_indptr.shape[0] - 1
    if pair_right.shape[0] != n_right:
        raise ValueError("pair_right length does not match row count")

    cdef int[::1] dist = np.empty(n_right, dtype=np.int32)
    cdef int[::1] start = np.empty(n_right, dtype=np.int32)
    cdef int[::1] end = np.empty(n_right, dtype=np.int32)
    cdef int[::1] it = np.empty(n_right, dtype=np.int32)
    cdef int[::1] queue = np.empty(n_right, dtype=np.int32)
    cdef int[::1] rstack = np.empty(n_right + 1, dtype=np.int32)
    cdef int[::1] ustack = np.empty(n_right + 1, dtype=np.int32)

    cdef int r, r0, r2, u, pos, i, top
    cdef int qhead, qtail, dist_nil, total
    cdef bint descended

    for r in range(n_right):
        if r < nb:
            start[r] = base_indptr[r]
            end[r] = base_indptr[r + 1]
        else:
            start[r] = ext_indptr[r - nb]
            end[r] = ext_indptr[r - nb + 1]

    total = 0
    while True:
        qhead = 0
        qtail = 0
        for r in range(n_right):
            if pair_right[r] == -1:
                dist[r] = 0
                queue[qtail] = r
                qtail += 1
            else:
                dist[r] = _INF
        dist_nil = _INF
        while qhead < qtail:
            r = queue[qhead]
            qhead += 1
            if dist_nil != _INF and dist[r] + 1 >= dist_nil:
                continue
            for pos in range(start[r], end[r]):
                u = base_indices[pos] if r < nb else ext_indices[pos]
                r2 = pair_left[u]
                if r2 == -1:
                    if dist_nil == _INF:
                        dist_nil = dist[r] + 1
                elif dist[r2] == _INF:
                    dist[r2] = dist[r] + 1
                    queue[qtail] = r2
                    qtail += 1
        if dist_nil == _INF:
            return total

        for r in range(n_right):
            it[r] = start[r]
        for r0 in range(n_right):
            if pair_right[r0] != -1:
                continue
            top = 0
            rstack[0] = r0
            while top >= 0:
                r = rstack[top]
                descended = False
                while it[r] < end[r]:
                    u = base_indices[it[r]] if r < nb else ext_indices[it[r]]
                    it[r] += 1
                    r2 = pair_left[u]
                    if r2 == -1:
                        if dist[r] + 1 == dist_nil:
                            ustack[top] = u
                            for i in range(top, -1, -1):
                                pair_left[ustack[i]] = rstack[i]
                                pair_right[rstack[i]] = ustack[i]
                            total += 1
                            top = -1
                            descended = True
                            break
                    elif dist[r2] == dist[r] + 1:
                        ustack[top] = u
                        top += 1
                        rstack[top] = r2
                        descended = True
                        break
                if not descended:
                    dist[r] = _INF
                    top -= 1
