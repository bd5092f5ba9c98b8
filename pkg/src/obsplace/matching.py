"""Maximum bipartite matching: public API over the compiled/pure kernels.

The compiled kernel (obsplace._hk, Cython) is used when importable unless
the environment variable OBSPLACE_PURE_PYTHON is set to a non-empty value;
otherwise the pure-Python twin obsplace._hk_py takes over.  Both produce
identical pairings for identical inputs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import _hk_py
from .patterns import BipartiteGraph

if os.environ.get("OBSPLACE_PURE_PYTHON"):
    _impl = _hk_py
    BACKEND = "python"
else:
    try:
        from . import _hk as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _hk_py
        BACKEND = "python"

_EMPTY_IPTR = np.zeros(1, dtype=np.int32)
_EMPTY_IDX = np.zeros(0, dtype=np.int32)


def set_backend(name: str) -> None:
    """Switch kernels at runtime ('compiled' or 'python'); for benchmarks/tests."""
    global _impl, BACKEND
    if name == "python":
        _impl, BACKEND = _hk_py, "python"
    elif name == "compiled":
        from . import _hk

        _impl, BACKEND = _hk, "compiled"
    else:
        raise ValueError(f"unknown backend {name!r}")


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edge set of a bipartite graph, as (left, right) index pairs."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        lefts = [u for (u, _) in self.pairs]
        rights = [v for (_, v) in self.pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("matching pairs share a vertex")

    def __len__(self) -> int:
        return len(self.pairs)


def rows_to_csr(rows) -> tuple[np.ndarray, np.ndarray]:
    """Concatenate per-right-vertex neighbour lists into (indptr, indices)."""
    indptr = np.zeros(len(rows) + 1, dtype=np.int32)
    for i, row in enumerate(rows):
        indptr[i + 1] = indptr[i] + len(row)
    chunks = [np.asarray(r, dtype=np.int32) for r in rows if len(r)]
    indices = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.int32)
    return indptr, indices


def maximum_matching(graph: BipartiteGraph) -> Matching:
    """Deterministic maximum matching via the layered augmenting kernel."""
    rows = graph.right_adjacency()
    indptr, indices = rows_to_csr(rows)
    pair_left = np.full(graph.left_count, -1, dtype=np.int32)
    pair_right = np.full(graph.right_count, -1, dtype=np.int32)
    _impl.hk_augment(graph.left_count, indptr, indices,
                     _EMPTY_IPTR, _EMPTY_IDX, pair_left, pair_right)
    pairs = frozenset(
        (int(u), int(r)) for r, u in enumerate(pair_right) if u != -1
    )
    return Matching(pairs)


def matching_saturates(matching: Matching, side: str, vertices) -> bool:
    """True iff every vertex of the set is matched on the given side."""
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    pos = 0 if side == "left" else 1
    matched = {pair[pos] for pair in matching.pairs}
    return set(vertices) <= matched


class MatchingState:
    """Warm-startable matching over a growing right side.

    The caller owns the state: right vertices are appended in batches and
    the matching is re-augmented incrementally (a maximum matching of the
    grown graph always extends the previous one).  trial() evaluates the
    gain of a batch without committing it.
    """

    def __init__(self, n_left: int, capacity: int = 64):
        self.n_left = n_left
        self.n_right = 0
        self._indptr = np.zeros(capacity + 1, dtype=np.int32)
        self._indices = np.zeros(capacity * 4, dtype=np.int32)
        self.pair_left = np.full(n_left, -1, dtype=np.int32)
        self._pair_right = np.full(capacity, -1, dtype=np.int32)
        self.size = 0

    @property
    def pair_right(self) -> np.ndarray:
        return self._pair_right[: self.n_right]

    def _base_views(self):
        return (self._indptr[: self.n_right + 1],
                self._indices[: self._indptr[self.n_right]])

    def _grow(self, extra_rows: int, extra_nnz: int):
        need_rows = self.n_right + extra_rows
        if need_rows + 1 > len(self._indptr):
            cap = max(need_rows + 1, 2 * len(self._indptr))
            self._indptr = np.resize(self._indptr, cap)
            self._pair_right = np.resize(self._pair_right, cap)
        need_nnz = int(self._indptr[self.n_right]) + extra_nnz
        if need_nnz > len(self._indices):
            self._indices = np.resize(self._indices, max(need_nnz, 2 * len(self._indices)))

    def add_rows(self, ext_indptr: np.ndarray, ext_indices: np.ndarray) -> int:
        """Append right vertices and augment; returns the matching-size gain."""
        ext_indptr = np.asarray(ext_indptr, dtype=np.int32)
        ext_indices = np.asarray(ext_indices, dtype=np.int32)
        extra = len(ext_indptr) - 1
        self._grow(extra, len(ext_indices))
        base = int(self._indptr[self.n_right])
        self._indices[base:base + len(ext_indices)] = ext_indices
        self._indptr[self.n_right + 1: self.n_right + 1 + extra] = base + ext_indptr[1:]
        self._pair_right[self.n_right: self.n_right + extra] = -1
        self.n_right += extra
        indptr, indices = self._base_views()
        gain = _impl.hk_augment(self.n_left, indptr, indices,
                                _EMPTY_IPTR, _EMPTY_IDX,
                                self.pair_left, self._pair_right[: self.n_right])
        self.size += gain
        return gain

    def trial(self, ext_indptr: np.ndarray, ext_indices: np.ndarray) -> int:
        """Gain if the given right vertices were appended; state is unchanged."""
        saved_left = self.pair_left.copy()
        extra = len(ext_indptr) - 1
        pair_right = np.full(self.n_right + extra, -1, dtype=np.int32)
        pair_right[: self.n_right] = self._pair_right[: self.n_right]
        indptr, indices = self._base_views()
        gain = _impl.hk_augment(self.n_left, indptr, indices,
                                np.ascontiguousarray(ext_indptr, dtype=np.int32),
                                np.ascontiguousarray(ext_indices, dtype=np.int32),
                                self.pair_left, pair_right)
        self.pair_left[:] = saved_left
        return gain
