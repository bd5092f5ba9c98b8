from __future__ import annotations

import importlib.resources

import pytest

from obsplace import SparsityPattern, StructuredSystem, build_grid_system, parse_grid_topology

from helpers import reference_system


@pytest.fixture(scope="session")
def ref_system() -> StructuredSystem:
    """Six-state, two-output reference system."""
    return reference_system()


@pytest.fixture(scope="session")
def grid_topology_text() -> str:
    return (
        importlib.resources.files("obsplace")
        .joinpath("data/ieee118.grid")
        .read_text(encoding="utf-8")
    )


@pytest.fixture(scope="session")
def grid_system(grid_topology_text):
    """(system, state_map) built from the shipped 118-bus topology."""
    spec = parse_grid_topology(grid_topology_text)
    return build_grid_system(spec)


@pytest.fixture(scope="session")
def grid_identity(grid_system) -> StructuredSystem:
    """Grid system with one output per state (identity output pattern)."""
    system, _ = grid_system
    return StructuredSystem(system.a, SparsityPattern.identity(system.d))
