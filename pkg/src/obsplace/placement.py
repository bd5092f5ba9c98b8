"""Observability-index decisions and the greedy sensor-placement algorithms.

Covers: the matching characterisation of "index bounded by a horizon", the
structural observability index, minimal sensor placement under an index
bound (with an optional forbidden output set), and cardinality-constrained
coverage maximisation.
"""

from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .matching import MatchingState, maximum_matching, rows_to_csr
from .outsets import _mask_to_indices, candidate_csr, xi
from .patterns import (
    StructuredSystem,
    SystemDigraph,
    build_digraph,
    build_state_bipartite,
    is_contraction_free,
    restrict_outputs,
    states_reaching_outputs,
)

# Above this state count, greedy iterations use lazy gain re-evaluation.
LAZY_THRESHOLD = 100


@dataclass(frozen=True)
class PlacementResult:
    """Outcome of a greedy placement run."""

    selected: tuple[int, ...]
    gains: tuple[int, ...]
    final_xi: int
    horizon: int
    bound_factor: float
    feasible: bool
    unmatched_states: tuple[int, ...] = ()


def index_bounded_by(system: StructuredSystem, outputs, horizon: int) -> bool:
    """True iff the structural observability index with these outputs is <= horizon.

    Matching characterisation: a matching saturating the state side exists
    in the placement graph, and the output-restricted digraph has no
    contraction.
    """
    outs = tuple(sorted(outputs))
    if not outs:
        return system.d == 0
    digraph = build_digraph(system)
    if xi(digraph, outs, horizon) != system.d:
        return False
    return is_contraction_free(restrict_outputs(system, outs))


def structural_observability_index(system: StructuredSystem, outputs=None):
    """Smallest horizon with index_bounded_by true, or None when unobservable.

    Searches the horizon upward from 1, growing the output-set family and
    the matching incrementally.
    """
    d = system.d
    outs = tuple(sorted(outputs)) if outputs is not None else tuple(range(system.p))
    if not outs:
        return None
    restricted = restrict_outputs(system, outs)
    full = (1 << d) - 1
    if states_reaching_outputs(restricted) != full:
        return None
    if not is_contraction_free(restricted):
        return None
    pred = restricted.pred_masks
    current = [restricted.output_in_masks[i] for i in outs]
    state = MatchingState(d)
    for ell in range(1, d + 1):
        if ell > 1:
            for idx, mask in enumerate(current):
                nxt = 0
                m = mask
                while m:
                    v = (m & -m).bit_length() - 1
                    m &= m - 1
                    nxt |= pred[v]
                current[idx] = nxt
        rows = [_mask_to_indices(m, d) for m in current]
        state.add_rows(*rows_to_csr(rows))
        if state.size == d:
            return ell
    return None


def _greedy_select(digraph: SystemDigraph, candidates, horizon: int,
                   target_size=None, max_picks=None):
    """Shared greedy loop: argmax marginal gain, ties to the lowest index.

    Stops when the matching reaches target_size, the pick budget runs out,
    or the best gain is zero (by submodularity no later pick can help).
    Returns (selected, gains, matching_state).
    """
    d = digraph.state_count
    state = MatchingState(d)

    def cand(s):
        return candidate_csr(digraph, s, horizon)

    remaining = sorted(candidates)
    selected: list[int] = []
    gains: list[int] = []
    lazy = d >= LAZY_THRESHOLD
    heap: list[tuple[int, int, int]] = []
    if lazy:
        # Seed with optimistic bounds (gain <= rows and <= distinct members);
        # exact gains are only computed when a candidate surfaces.
        for s in remaining:
            indptr, indices = cand(s)
            bound = min(len(indptr) - 1, len(np.unique(indices)))
            heap.append((-bound, s, -1))
        heapq.heapify(heap)

    while remaining:
        if target_size is not None and state.size >= target_size:
            break
        if max_picks is not None and len(selected) >= max_picks:
            break
        if state.size >= d:
            break
        if lazy:
            stamp = len(selected)
            while True:
                neg, s, seen = heapq.heappop(heap)
                if seen == stamp:
                    best_gain, best = -neg, s
                    break
                heapq.heappush(heap, (-state.trial(*cand(s)), s, stamp))
        else:
            best_gain, best = -1, -1
            for s in remaining:
                g = state.trial(*cand(s))
                if g > best_gain:
                    best_gain, best = g, s
        if best_gain <= 0:
            break
        committed = state.add_rows(*cand(best))
        selected.append(best)
        gains.append(committed)
        remaining.remove(best)

    return selected, gains, state


def _warn_if_no_perfect_state_matching(system: StructuredSystem) -> None:
    graph = build_state_bipartite(system)
    if len(maximum_matching(graph)) != system.d:
        warnings.warn(
            "state pattern has no perfect matching in its bipartite "
            "representation; contraction-freeness is checked explicitly",
            stacklevel=3,
        )


def min_sensor_greedy(system: StructuredSystem, horizon: int,
                      forbidden=frozenset()) -> PlacementResult:
    """Greedy minimal sensor placement under an index bound.

    Feasibility is decided up front: the full allowed output set must
    already saturate all states at this horizon.
    """
    d, p = system.d, system.p
    if not (1 <= horizon <= d):
        raise ValueError(f"horizon {horizon} outside [1, {d}]")
    forbidden = frozenset(forbidden)
    for f in forbidden:
        if not (0 <= f < p):
            raise ValueError(f"forbidden output index {f} out of range")
    allowed = sorted(set(range(p)) - forbidden)
    bound = 1.0 + math.log(d) if d > 0 else 1.0
    digraph = build_digraph(system)

    _warn_if_no_perfect_state_matching(system)

    # Up-front feasibility: Xi over the whole allowed set (stop once saturated).
    probe = MatchingState(d)
    for s in allowed:
        probe.add_rows(*candidate_csr(digraph, s, horizon))
        if probe.size == d:
            break
    if probe.size < d:
        unmatched = tuple(int(u) for u in np.flatnonzero(probe.pair_left == -1))
        return PlacementResult((), (), 0, horizon, bound, False, unmatched)

    selected, gains, state = _greedy_select(
        digraph, allowed, horizon, target_size=d
    )
    feasible = state.size == d and is_contraction_free(
        restrict_outputs(system, selected)
    )
    unmatched = tuple(int(u) for u in np.flatnonzero(state.pair_left == -1))
    return PlacementResult(
        tuple(selected), tuple(gains), state.size, horizon, bound,
        feasible, unmatched if not feasible else (),
    )


def max_coverage_greedy(system: StructuredSystem, budget: int) -> PlacementResult:
    """Greedy cardinality-constrained coverage maximisation (horizon fixed to d)."""
    d, p = system.d, system.p
    if not (1 <= budget <= p):
        raise ValueError(f"budget {budget} outside [1, {p}]")
    digraph = build_digraph(system)
    selected, gains, state = _greedy_select(
        digraph, range(p), d, max_picks=budget
    )
    return PlacementResult(
        tuple(selected), tuple(gains), state.size, d, 1.0 - 1.0 / math.e, True
    )
