"""Shared random-instance generators and reference data for the test suite."""

from __future__ import annotations

import numpy as np

from obsplace import BipartiteGraph, SparsityPattern, StructuredSystem

# Six-state, two-output reference system used throughout the suite.
# A-pattern entry (i, j) means state j feeds state i.
REF_A_ENTRIES = frozenset(
    {(0, 4), (1, 0), (2, 0), (3, 2), (3, 3), (4, 2), (4, 3), (5, 1)}
)
REF_C_ENTRIES = frozenset({(0, 1), (0, 5), (1, 4)})

# Expected output-sets for the reference system at horizon 3,
# keyed by (output index, step), all 0-based.
REF_OUTPUT_SETS = {
    (0, 1): frozenset({1, 5}),
    (0, 2): frozenset({0, 1}),
    (0, 3): frozenset({0, 4}),
    (1, 1): frozenset({4}),
    (1, 2): frozenset({2, 3}),
    (1, 3): frozenset({0, 2, 3}),
}

# Five-vertex cycle-with-chords digraph whose bipartite representation has
# seven edges and a perfect matching: edges v1->v2, v2->v1, v2->v3, v3->v4,
# v4->v5, v5->v1, v5->v3 (1-based), as A-pattern entries (i, j) <=> vj->vi.
CYCLE5_A_ENTRIES = frozenset(
    {(1, 0), (0, 1), (2, 1), (3, 2), (4, 3), (0, 4), (2, 4)}
)


def reference_system() -> StructuredSystem:
    return StructuredSystem(
        SparsityPattern(6, 6, REF_A_ENTRIES),
        SparsityPattern(2, 6, REF_C_ENTRIES),
    )


def random_bipartite(rng: np.random.Generator, max_left: int = 12,
                     max_right: int = 12) -> BipartiteGraph:
    """Random bipartite graph with up to max_left + max_right vertices."""
    nl = int(rng.integers(1, max_left + 1))
    nr = int(rng.integers(1, max_right + 1))
    density = float(rng.uniform(0.05, 0.6))
    edges = frozenset(
        (u, v)
        for u in range(nl)
        for v in range(nr)
        if rng.random() < density
    )
    return BipartiteGraph(
        left_labels=tuple(range(nl)),
        right_labels=tuple(range(nr)),
        edges=edges,
    )


def random_system(rng: np.random.Generator, max_d: int = 8, max_p: int = 6,
                  self_loops: bool = False) -> StructuredSystem:
    """Random structured system; self_loops forces all diagonal A entries."""
    d = int(rng.integers(1, max_d + 1))
    p = int(rng.integers(1, max_p + 1))
    a_density = float(rng.uniform(0.1, 0.5))
    a_entries = {
        (i, j) for i in range(d) for j in range(d) if rng.random() < a_density
    }
    if self_loops:
        a_entries |= {(i, i) for i in range(d)}
    c_density = float(rng.uniform(0.1, 0.6))
    c_entries = {
        (i, j) for i in range(p) for j in range(d) if rng.random() < c_density
    }
    return StructuredSystem(
        SparsityPattern(d, d, frozenset(a_entries)),
        SparsityPattern(p, d, frozenset(c_entries)),
    )
