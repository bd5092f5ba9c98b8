"""Independent ground-truth engines.

Everything here is deliberately separate from the production code paths:
exhaustive matching and contraction checks, exhaustive-subset optima for
the two placement problems, and exact observability-index computation for
random numerical realizations over a large prime field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .outsets import xi_via_graph
from .patterns import BipartiteGraph, StructuredSystem, SystemDigraph, build_digraph
from .placement import index_bounded_by

DEFAULT_PRIME = 2**31 - 1
SUBSET_CAP = 20
CONTRACTION_CAP = 16


class CapExceeded(ValueError):
    """An exhaustive routine was asked to exceed its configured size cap."""


def brute_force_max_matching(graph: BipartiteGraph) -> int:
    """Maximum matching size by branching over right vertices (match or skip).

    Memoized on (right vertex, used-left bitmask) so dense instances stay
    tractable.
    """
    rows = graph.right_adjacency()
    memo: dict[tuple[int, int], int] = {}

    def best(r: int, used: int) -> int:
        if r == len(rows):
            return 0
        key = (r, used)
        hit = memo.get(key)
        if hit is not None:
            return hit
        top = best(r + 1, used)
        for u in rows[r]:
            if not (used >> u) & 1:
                cand = 1 + best(r + 1, used | (1 << u))
                if cand > top:
                    top = cand
        memo[key] = top
        return top

    return best(0, 0)


def has_augmenting_path(graph: BipartiteGraph, pairs) -> bool:
    """Alternating-path search independent of the matching kernel.

    True iff some free left vertex reaches a free right vertex along a path
    alternating unmatched/matched edges.
    """
    pair_left = {u: r for (u, r) in pairs}
    pair_right = {r: u for (u, r) in pairs}
    left_adj: dict[int, list[int]] = {u: [] for u in range(graph.left_count)}
    for (u, r) in graph.edges:
        left_adj[u].append(r)
    for start in range(graph.left_count):
        if start in pair_left:
            continue
        frontier = [start]
        seen_left = {start}
        while frontier:
            nxt = []
            for u in frontier:
                for r in left_adj[u]:
                    if r not in pair_right:
                        return True
                    u2 = pair_right[r]
                    if u2 not in seen_left:
                        seen_left.add(u2)
                        nxt.append(u2)
            frontier = nxt
    return False


def exhaustive_contraction_check(digraph: SystemDigraph, cap: int = CONTRACTION_CAP) -> bool:
    """Direct evaluation of |N+(S)| >= |S| over all state-vertex subsets."""
    d = digraph.state_count
    if d > cap:
        raise CapExceeded(f"state count {d} exceeds contraction cap {cap}")
    out_masks = [
        digraph.succ_masks[v] | (digraph.output_out_masks[v] << d)
        for v in range(d)
    ]
    for subset in range(1, 1 << d):
        neigh = 0
        size = 0
        m = subset
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            neigh |= out_masks[v]
            size += 1
        if neigh.bit_count() < size:
            return False
    return True


@dataclass(frozen=True)
class NumericRealization:
    """Field-valued realization of a pattern pair: nonzero exactly on the stars."""

    a_values: np.ndarray
    c_values: np.ndarray
    prime: int
    seed: int


def random_realization(system: StructuredSystem, seed: int,
                       prime: int = DEFAULT_PRIME) -> NumericRealization:
    """Star entries drawn uniformly from the nonzero field elements."""
    rng = np.random.default_rng(seed)
    d, p = system.d, system.p
    a = np.zeros((d, d), dtype=np.int64)
    for (i, j) in sorted(system.a.entries):
        a[i, j] = rng.integers(1, prime)
    c = np.zeros((p, d), dtype=np.int64)
    for (i, j) in sorted(system.c.entries):
        c[i, j] = rng.integers(1, prime)
    return NumericRealization(a, c, prime, seed)


def _rank_accumulate(pivots: dict[int, np.ndarray], rows: np.ndarray, prime: int) -> None:
    """Fold rows into an echelon basis mod prime, keyed by pivot column.

    Each stored row is normalized to a leading 1 at its pivot column and is
    zero left of it, so repeated leading-column elimination terminates.
    """
    for row in rows:
        row = np.asarray(row % prime, dtype=np.int64)
        while True:
            nz = np.flatnonzero(row)
            if len(nz) == 0:
                break
            lead = int(nz[0])
            pivot = pivots.get(lead)
            if pivot is None:
                inv = pow(int(row[lead]), prime - 2, prime)
                pivots[lead] = (row * inv) % prime
                break
            row = (row - int(row[lead]) * pivot) % prime


def observability_blocks(real: NumericRealization, steps: int):
    """Yield C, CA, ..., CA^(steps-1) over the field, block by block."""
    # Arbitrary-precision accumulation: products of two field elements summed
    # over a row would overflow int64.
    a = real.a_values.astype(object)
    block = (real.c_values % real.prime).astype(object)
    yield block
    for _ in range(steps - 1):
        block = (block @ a) % real.prime
        yield block


def numeric_observability_index(real: NumericRealization):
    """Smallest k with full field rank of the k-step observability matrix, else None."""
    d = real.a_values.shape[0]
    pivots: dict[int, np.ndarray] = {}
    for k, block in enumerate(observability_blocks(real, d), start=1):
        _rank_accumulate(pivots, block, real.prime)
        if len(pivots) == d:
            return k
    return None


def _check_subset_cap(p: int, cap: int) -> None:
    if p > cap:
        raise CapExceeded(f"output count {p} exceeds enumeration cap {cap}")


def brute_force_min_sensors(system: StructuredSystem, horizon: int,
                            forbidden=frozenset(), cap: int = SUBSET_CAP):
    """Smallest output subset with index bounded by the horizon, or None.

    Enumerates in cardinality-then-lexicographic order, so results are
    deterministic.
    """
    _check_subset_cap(system.p, cap)
    allowed = sorted(set(range(system.p)) - set(forbidden))
    for size in range(1, len(allowed) + 1):
        for combo in itertools.combinations(allowed, size):
            if index_bounded_by(system, combo, horizon):
                return frozenset(combo)
    return None


def brute_force_max_coverage(system: StructuredSystem, budget: int,
                             cap: int = SUBSET_CAP):
    """Optimal coverage subset of size <= budget: returns (subset, xi_prime)."""
    _check_subset_cap(system.p, cap)
    if not (1 <= budget <= system.p):
        raise ValueError(f"budget {budget} outside [1, {system.p}]")
    digraph = build_digraph(system)
    best_set: frozenset[int] = frozenset()
    best_val = 0
    for size in range(1, budget + 1):
        for combo in itertools.combinations(range(system.p), size):
            val = xi_via_graph(digraph, combo, system.d)
            if val > best_val:
                best_val = val
                best_set = frozenset(combo)
    return best_set, best_val
