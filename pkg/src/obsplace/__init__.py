"""Structural-observability sensor placement toolkit."""

from .gridmodel import GridSpec, GridStateMap, build_grid_system, parse_grid_topology
from .matching import BACKEND, Matching, MatchingState, matching_saturates, maximum_matching
from .outsets import OutputSetFamily, build_placement_bipartite, compute_output_sets, xi
from .patterns import (
    BipartiteGraph,
    InputError,
    SparsityPattern,
    StructuredSystem,
    SystemDigraph,
    build_digraph,
    build_state_bipartite,
    has_all_self_loops,
    is_contraction_free,
    is_structurally_observable,
)
from .placement import (
    PlacementResult,
    index_bounded_by,
    max_coverage_greedy,
    min_sensor_greedy,
    structural_observability_index,
)
from .sysfile import format_system, parse_forbidden, parse_system

__all__ = [
    "BACKEND",
    "BipartiteGraph",
    "GridSpec",
    "GridStateMap",
    "InputError",
    "Matching",
    "MatchingState",
    "OutputSetFamily",
    "PlacementResult",
    "SparsityPattern",
    "StructuredSystem",
    "SystemDigraph",
    "build_digraph",
    "build_grid_system",
    "build_placement_bipartite",
    "build_state_bipartite",
    "compute_output_sets",
    "format_system",
    "has_all_self_loops",
    "index_bounded_by",
    "is_contraction_free",
    "is_structurally_observable",
    "matching_saturates",
    "max_coverage_greedy",
    "maximum_matching",
    "min_sensor_greedy",
    "parse_forbidden",
    "parse_grid_topology",
    "parse_system",
    "structural_observability_index",
    "xi",
]

__version__ = "0.1.0"
