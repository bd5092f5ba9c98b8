"""Output-sets and the placement bipartite graph.

An output-set at step k is the set of state vertices with a directed walk
of length exactly k (vertex repetition allowed) ending at the output.
Sets are held as bitmasks of width d; the backward step is then a union
of predecessor masks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matching import MatchingState, maximum_matching, rows_to_csr
from .patterns import BipartiteGraph, SystemDigraph


def _mask_to_indices(mask: int, d: int) -> np.ndarray:
    nbytes = (d + 7) // 8
    bits = np.unpackbits(
        np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8),
        bitorder="little",
    )
    return np.flatnonzero(bits[:d]).astype(np.int32)


@dataclass(frozen=True)
class OutputSetFamily:
    """Output-sets for selected outputs over steps 1..horizon.

    masks[(i, k)] is the bitmask of state vertices with a length-k walk to
    output i; sets() exposes the same data as frozensets.
    """

    state_count: int
    horizon: int
    outputs: tuple[int, ...]
    masks: dict[tuple[int, int], int]

    def sets(self) -> dict[tuple[int, int], frozenset[int]]:
        d = self.state_count
        return {
            key: frozenset(int(v) for v in _mask_to_indices(mask, d))
            for key, mask in self.masks.items()
        }

    def right_keys(self) -> list[tuple[int, int]]:
        """Right-vertex order of the placement graph: by output, then step."""
        return [(i, k) for i in self.outputs for k in range(1, self.horizon + 1)]


def output_set_masks(digraph: SystemDigraph, output: int, horizon: int) -> list[int]:
    """Bitmasks of the output-sets of one output for steps 1..horizon."""
    pred = digraph.pred_masks
    mask = digraph.output_in_masks[output]
    out = [mask]
    for _ in range(horizon - 1):
        nxt = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= pred[v]
        out.append(nxt)
        mask = nxt
    return out


def compute_output_sets(digraph: SystemDigraph, outputs, horizon: int) -> OutputSetFamily:
    """Backward iteration of output-sets for each selected output."""
    d = digraph.state_count
    if horizon < 1:
        raise ValueError(f"horizon {horizon} must be at least 1")
    outs = tuple(sorted(outputs))
    if not outs:
        raise ValueError("output subset must be nonempty")
    for i in outs:
        if not (0 <= i < digraph.output_count):
            raise ValueError(f"output index {i} out of range")
    masks: dict[tuple[int, int], int] = {}
    for i in outs:
        for k, mask in enumerate(output_set_masks(digraph, i, horizon), start=1):
            masks[(i, k)] = mask
    return OutputSetFamily(d, horizon, outs, masks)


def build_placement_bipartite(state_count: int, family: OutputSetFamily) -> BipartiteGraph:
    """Left = state vertices, right = one vertex per (output, step), edge per membership.

    Empty output-sets keep their right vertex (degree zero) so right-vertex
    identity is stable under incremental growth.
    """
    keys = family.right_keys()
    edges = set()
    for r, key in enumerate(keys):
        for u in _mask_to_indices(family.masks[key], state_count):
            edges.add((int(u), r))
    return BipartiteGraph(
        left_labels=tuple(range(state_count)),
        right_labels=tuple(keys),
        edges=frozenset(edges),
    )


def family_rows(family: OutputSetFamily) -> list[np.ndarray]:
    """Per right vertex (family order), the array of member state vertices."""
    d = family.state_count
    return [_mask_to_indices(family.masks[key], d) for key in family.right_keys()]


def _output_walk_csr(digraph: SystemDigraph, output: int):
    """CSR of one output's walk rows up to its fixed point (cached on the digraph).

    The backward iteration is stationary once an output-set repeats, so
    rows past the stored ones are copies of the last row.  At most
    state_count rows are ever needed.
    """
    cache = digraph.__dict__.setdefault("_walk_csr_cache", {})
    hit = cache.get(output)
    if hit is not None:
        return hit
    d = digraph.state_count
    pred = digraph.pred_masks
    mask = digraph.output_in_masks[output]
    masks = [mask]
    for _ in range(d - 1):
        nxt = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nxt |= pred[v]
        if nxt == mask:
            break
        masks.append(nxt)
        mask = nxt
    rows = [_mask_to_indices(m, d) for m in masks]
    entry = rows_to_csr(rows)
    cache[output] = entry
    return entry


def candidate_csr(digraph: SystemDigraph, output: int, horizon: int) -> tuple[np.ndarray, np.ndarray]:
    """CSR rows for one output's steps 1..horizon, tiling the fixed-point tail."""
    indptr, indices = _output_walk_csr(digraph, output)
    stored = len(indptr) - 1
    if horizon <= stored:
        return indptr[: horizon + 1], indices[: indptr[horizon]]
    tail = horizon - stored
    last = indices[indptr[stored - 1]: indptr[stored]]
    width = len(last)
    full_indices = np.concatenate([indices, np.tile(last, tail)])
    full_indptr = np.concatenate([
        indptr,
        indptr[stored] + width * np.arange(1, tail + 1, dtype=np.int32),
    ]).astype(np.int32)
    return full_indptr, full_indices


def xi(digraph: SystemDigraph, outputs, horizon: int) -> int:
    """Size of a maximum matching in the placement bipartite graph.

    Empty output subsets are allowed and give 0.
    """
    outs = tuple(sorted(outputs))
    d = digraph.state_count
    if horizon < 1:
        raise ValueError(f"horizon {horizon} must be at least 1")
    if not outs:
        return 0
    state = MatchingState(d)
    for i in outs:
        indptr, indices = candidate_csr(digraph, i, horizon)
        state.add_rows(indptr, indices)
    return state.size


def xi_via_graph(digraph: SystemDigraph, outputs, horizon: int) -> int:
    """xi computed through the explicit BipartiteGraph (no tail collapsing)."""
    outs = tuple(sorted(outputs))
    if not outs:
        return 0
    family = compute_output_sets(digraph, outs, horizon)
    graph = build_placement_bipartite(digraph.state_count, family)
    return len(maximum_matching(graph))
