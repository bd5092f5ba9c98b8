"""Sparsity patterns, the system digraph, and structural preconditions.

Everything here is purely combinatorial: a matrix is represented only by
the set of positions of its structurally nonzero entries.  All types are
immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property


class InputError(ValueError):
    """Raised for malformed or inconsistent input data."""


@dataclass(frozen=True)
class SparsityPattern:
    """Zero/nonzero structure of a matrix: a set of (row, col) positions."""

    rows: int
    cols: int
    entries: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "entries", frozenset(self.entries))
        if self.rows < 0 or self.cols < 0:
            raise InputError(f"negative dimensions {self.rows}x{self.cols}")
        for (i, j) in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise InputError(
                    f"entry ({i}, {j}) outside {self.rows}x{self.cols} pattern"
                )

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @staticmethod
    def identity(n: int) -> "SparsityPattern":
        return SparsityPattern(n, n, frozenset((i, i) for i in range(n)))

    @staticmethod
    def full(rows: int, cols: int) -> "SparsityPattern":
        return SparsityPattern(
            rows, cols, frozenset((i, j) for i in range(rows) for j in range(cols))
        )


@dataclass(frozen=True)
class StructuredSystem:
    """The pattern pair: state matrix (d x d) and output matrix (p x d)."""

    a: SparsityPattern
    c: SparsityPattern

    def __post_init__(self):
        if self.a.rows != self.a.cols:
            raise InputError(f"state pattern must be square, got {self.a.rows}x{self.a.cols}")
        if self.c.cols != self.a.cols:
            raise InputError(
                f"output pattern has {self.c.cols} columns, expected {self.a.cols}"
            )
        if self.c.rows < 1:
            raise InputError("at least one output row is required")

    @property
    def d(self) -> int:
        return self.a.rows

    @property
    def p(self) -> int:
        return self.c.rows


@dataclass(frozen=True)
class SystemDigraph:
    """Directed graph on state vertices plus output vertices.

    A pattern entry (i, j) of the state matrix becomes the edge v_j -> v_i;
    an output entry (i, j) becomes the edge v_j -> output i.
    """

    state_count: int
    output_count: int
    state_edges: frozenset[tuple[int, int]]
    output_edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for (u, v) in self.state_edges:
            if not (0 <= u < self.state_count and 0 <= v < self.state_count):
                raise InputError(f"state edge ({u}, {v}) out of range")
        for (u, i) in self.output_edges:
            if not (0 <= u < self.state_count and 0 <= i < self.output_count):
                raise InputError(f"output edge ({u}, {i}) out of range")

    @cached_property
    def succ_masks(self) -> tuple[int, ...]:
        """Per state vertex, bitmask of state successors."""
        masks = [0] * self.state_count
        for (u, v) in self.state_edges:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def pred_masks(self) -> tuple[int, ...]:
        """Per state vertex, bitmask of state predecessors."""
        masks = [0] * self.state_count
        for (u, v) in self.state_edges:
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def output_in_masks(self) -> tuple[int, ...]:
        """Per output vertex, bitmask of state vertices with an edge to it."""
        masks = [0] * self.output_count
        for (u, i) in self.output_edges:
            masks[i] |= 1 << u
        return tuple(masks)

    @cached_property
    def output_out_masks(self) -> tuple[int, ...]:
        """Per state vertex, bitmask of outputs it feeds directly."""
        masks = [0] * self.state_count
        for (u, i) in self.output_edges:
            masks[u] |= 1 << i
        return tuple(masks)


@dataclass(frozen=True)
class BipartiteGraph:
    """Undirected bipartite graph with labelled sides.

    Vertex identity is positional: edges are (left index, right index)
    pairs; labels are carried along for reporting.
    """

    left_labels: tuple
    right_labels: tuple
    edges: frozenset[tuple[int, int]]
    _adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        nl, nr = len(self.left_labels), len(self.right_labels)
        for (u, v) in self.edges:
            if not (0 <= u < nl and 0 <= v < nr):
                raise InputError(f"bipartite edge ({u}, {v}) out of range")
        adj: list[list[int]] = [[] for _ in range(nr)]
        for (u, v) in sorted(self.edges):
            adj[v].append(u)
        object.__setattr__(self, "_adjacency", tuple(tuple(a) for a in adj))

    @property
    def left_count(self) -> int:
        return len(self.left_labels)

    @property
    def right_count(self) -> int:
        return len(self.right_labels)

    def right_adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Left neighbours of each right vertex, ascending."""
        return self._adjacency


def build_digraph(system: StructuredSystem) -> SystemDigraph:
    """Associate the directed graph with a pattern pair (transposed indices).

    Memoized per system instance so repeated runs share the digraph's
    derived caches (predecessor masks, walk rows).
    """
    cached = system.__dict__.get("_digraph")
    if cached is not None:
        return cached
    digraph = SystemDigraph(
        state_count=system.d,
        output_count=system.p,
        state_edges=frozenset((j, i) for (i, j) in system.a.entries),
        output_edges=frozenset((j, i) for (i, j) in system.c.entries),
    )
    system.__dict__["_digraph"] = digraph
    return digraph


def build_state_bipartite(system: StructuredSystem) -> BipartiteGraph:
    """Bipartite representation of the state pattern: edge (v_j, v_i) per entry (i, j)."""
    d = system.d
    return BipartiteGraph(
        left_labels=tuple(range(d)),
        right_labels=tuple(range(d)),
        edges=frozenset((j, i) for (i, j) in system.a.entries),
    )


def has_all_self_loops(system: StructuredSystem) -> bool:
    """True iff every diagonal position of the state pattern is nonzero."""
    return all((i, i) in system.a.entries for i in range(system.d))


def out_neighbour_bipartite(digraph: SystemDigraph) -> BipartiteGraph:
    """Left = state vertices, right = state then output vertices, edge per out-neighbour."""
    d, p = digraph.state_count, digraph.output_count
    edges = set()
    for (u, v) in digraph.state_edges:
        edges.add((u, v))
    for (u, i) in digraph.output_edges:
        edges.add((u, d + i))
    return BipartiteGraph(
        left_labels=tuple(range(d)),
        right_labels=tuple(range(d + p)),
        edges=frozenset(edges),
    )


def is_contraction_free(digraph: SystemDigraph) -> bool:
    """No state-vertex subset has a strictly smaller out-neighbourhood.

    Decided through Hall's condition: equivalent to a matching saturating
    the state side of the out-neighbour bipartite graph.
    """
    from .matching import maximum_matching

    graph = out_neighbour_bipartite(digraph)
    return len(maximum_matching(graph).pairs) == digraph.state_count


def states_reaching_outputs(digraph: SystemDigraph) -> int:
    """Bitmask of state vertices with a directed path to some output.

    Single reverse traversal seeded from all output vertices.
    """
    frontier = 0
    for mask in digraph.output_in_masks:
        frontier |= mask
    reached = frontier
    pred = digraph.pred_masks
    while frontier:
        nxt = 0
        f = frontier
        while f:
            v = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= pred[v]
        frontier = nxt & ~reached
        reached |= frontier
    return reached


def is_structurally_observable(system: StructuredSystem) -> bool:
    """Lin-style criterion: all states reach an output and no contraction exists."""
    digraph = build_digraph(system)
    full = (1 << system.d) - 1
    if states_reaching_outputs(digraph) != full:
        return False
    return is_contraction_free(digraph)


def restrict_outputs(system: StructuredSystem, outputs) -> SystemDigraph:
    """Digraph keeping only output vertices in the given set (indices preserved)."""
    keep = frozenset(outputs)
    digraph = build_digraph(system)
    return SystemDigraph(
        state_count=digraph.state_count,
        output_count=digraph.output_count,
        state_edges=digraph.state_edges,
        output_edges=frozenset(e for e in digraph.output_edges if e[1] in keep),
    )
