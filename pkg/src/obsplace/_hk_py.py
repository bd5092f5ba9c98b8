"""Pure-Python Hopcroft-Karp kernel (fallback for the compiled extension).

The kernel augments an existing matching until no augmenting path remains,
using layered (phase-based) search.  Right-vertex adjacency is given as two
CSR blocks: a base block (rows 0..nb-1) and an extension block appended
after it, so callers can grow the right side without rebuilding arrays.

Scan order is fixed (free right vertices ascending, neighbours ascending),
which makes the resulting pairing deterministic.
"""

from collections import deque

_INF = -1


def hk_augment(n_left, base_indptr, base_indices, ext_indptr, ext_indices,
               pair_left, pair_right):
    """Augment (pair_left, pair_right) in place; return the number of new pairs.

    pair_left maps left vertex -> right vertex or -1; pair_right the reverse.
    len(pair_right) must equal the total row count of the two CSR blocks.
    """
    bip = list(base_indptr)
    bidx = list(base_indices)
    eip = list(ext_indptr)
    eidx = list(ext_indices)
    nb = len(bip) - 1
    n_right = nb + len(eip) - 1
    if len(pair_right) != n_right:
        raise ValueError("pair_right length does not match row count")

    dist = [_INF] * n_right
    start = [0] * n_right
    end = [0] * n_right
    for r in range(n_right):
        if r < nb:
            start[r], end[r] = bip[r], bip[r + 1]
        else:
            start[r], end[r] = eip[r - nb], eip[r - nb + 1]

    def row(r, pos):
        return bidx[pos] if r < nb else eidx[pos]

    it = [0] * n_right
    rstack = [0] * (n_right + 1)
    ustack = [0] * (n_right + 1)
    total = 0
    while True:
        # BFS phase: layer right vertices by alternating distance.
        for r in range(n_right):
            dist[r] = _INF
        queue = deque()
        for r in range(n_right):
            if pair_right[r] == -1:
                dist[r] = 0
                queue.append(r)
        dist_nil = _INF
        while queue:
            r = queue.popleft()
            if dist_nil != _INF and dist[r] + 1 >= dist_nil:
                continue
            for pos in range(start[r], end[r]):
                u = row(r, pos)
                r2 = pair_left[u]
                if r2 == -1:
                    if dist_nil == _INF:
                        dist_nil = dist[r] + 1
                elif dist[r2] == _INF:
                    dist[r2] = dist[r] + 1
                    queue.append(r2)
        if dist_nil == _INF:
            return total

        # DFS phase with per-phase edge iterators (current-arc).
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
                    u = row(r, it[r])
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
                            descended = True  # terminate outer loop
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
