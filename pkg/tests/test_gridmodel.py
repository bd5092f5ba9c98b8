"""Power-grid template construction and topology parsing."""

from __future__ import annotations

import numpy as np
import pytest

from obsplace import (
    GridSpec,
    InputError,
    SparsityPattern,
    StructuredSystem,
    build_digraph,
    build_grid_system,
    has_all_self_loops,
    is_contraction_free,
    is_structurally_observable,
    parse_grid_topology,
)


class TestGeneratorTemplate:
    def test_single_generator_states_and_entries(self):
        system, state_map = build_grid_system(GridSpec((1,), (), ()))
        assert state_map.state_count == 4
        # 4 self-loops plus the 6 directed template couplings:
        # a<->w (2), w<->P_elec (2), a->P_turb (1), P_turb->w (1).
        assert system.a.nnz == 10
        idx = state_map.index_of
        ptg, pg, wg, ag = (idx[(1, s)] for s in ("P_TG", "P_G", "w_G", "a_G"))
        expected = {(i, i) for i in range(4)} | {
            (wg, ag), (ag, wg),      # valve opening <-> frequency
            (pg, wg), (wg, pg),      # frequency <-> electrical power
            (ptg, ag),               # valve opening -> turbine power
            (wg, ptg),               # turbine power -> frequency
        }
        assert system.a.entries == frozenset(expected)

    def test_single_load_states_and_entries(self):
        system, state_map = build_grid_system(GridSpec((), (2,), ()))
        assert state_map.state_count == 3
        # 3 self-loops plus P<->w (2) and I->w (1).
        assert system.a.nnz == 6

    def test_generator_load_line_gives_seven_vertex_template(self):
        system, state_map = build_grid_system(GridSpec((1,), (2,), ((1, 2),)))
        assert state_map.state_count == 7
        # Templates (10 + 6) plus the two line couplings
        # w_G(1) -> P_L(2) and w_L(2) -> P_G(1).
        assert system.a.nnz == 18
        idx = state_map.index_of
        assert (idx[(2, "P_L")], idx[(1, "w_G")]) in system.a.entries
        assert (idx[(1, "P_G")], idx[(2, "w_L")]) in system.a.entries

    def test_observable_from_single_load_frequency_output(self):
        system, state_map = build_grid_system(GridSpec((1,), (2,), ((1, 2),)))
        wl = state_map.index_of[(2, "w_L")]
        measured = StructuredSystem(
            system.a, SparsityPattern(1, 7, {(0, wl)})
        )
        assert is_structurally_observable(measured)


class TestGridProperties:
    def test_state_count_formula(self):
        rng = np.random.default_rng(61)
        for _ in range(30):
            g = int(rng.integers(0, 6))
            l = int(rng.integers(0 if g else 1, 6))
            gens = tuple(range(1, g + 1))
            loads = tuple(range(g + 1, g + l + 1))
            system, state_map = build_grid_system(GridSpec(gens, loads, ()))
            assert state_map.state_count == 4 * g + 3 * l == system.d

    def test_all_self_loops_and_contraction_free(self):
        system, _ = build_grid_system(
            GridSpec((1, 2), (3, 4, 5), ((1, 3), (2, 4), (4, 5)))
        )
        assert has_all_self_loops(system)
        assert is_contraction_free(build_digraph(system))

    def test_line_couplings_for_all_bus_kinds(self):
        # generator-generator and load-load lines follow the same
        # frequency -> power rule as generator-load lines.
        system, state_map = build_grid_system(
            GridSpec((1, 2), (3, 4), ((1, 2), (3, 4)))
        )
        idx = state_map.index_of
        assert (idx[(2, "P_G")], idx[(1, "w_G")]) in system.a.entries
        assert (idx[(1, "P_G")], idx[(2, "w_G")]) in system.a.entries
        assert (idx[(4, "P_L")], idx[(3, "w_L")]) in system.a.entries
        assert (idx[(3, "P_L")], idx[(4, "w_L")]) in system.a.entries


class TestGridValidation:
    def test_duplicate_and_overlapping_buses(self):
        with pytest.raises(InputError, match="duplicate generator"):
            GridSpec((1, 1), (2,), ())
        with pytest.raises(InputError, match="duplicate load"):
            GridSpec((1,), (2, 2), ())
        with pytest.raises(InputError, match="both generator and load"):
            GridSpec((1,), (1,), ())

    def test_dangling_line_endpoint(self):
        with pytest.raises(InputError, match="not a declared bus"):
            GridSpec((1,), (2,), ((1, 3),))

    def test_no_buses(self):
        with pytest.raises(InputError, match="no buses"):
            GridSpec((), (), ())


class TestTopologyParsing:
    def test_minimal_file(self):
        spec = parse_grid_topology("gen 1\nload 2\nline 1 2\n")
        assert spec == GridSpec((1,), (2,), ((1, 2),))

    def test_comments_and_blank_lines(self):
        spec = parse_grid_topology("# header\n\ngen 1  # trailing\nload 2\n")
        assert spec.generators == (1,) and spec.loads == (2,)

    def test_malformed_record(self):
        with pytest.raises(InputError, match="line 1"):
            parse_grid_topology("bus 1\n")
        with pytest.raises(InputError, match="line 2"):
            parse_grid_topology("gen 1\ngen x\n")

    def test_duplicate_line_rejected(self):
        with pytest.raises(InputError, match="duplicate line"):
            parse_grid_topology("gen 1\nload 2\nline 1 2\nline 2 1\n")

    def test_dangling_endpoint_rejected(self):
        with pytest.raises(InputError, match="not a declared bus"):
            parse_grid_topology("gen 1\nload 2\nline 3 4\n")


class TestShippedTopology:
    def test_bus_and_line_counts(self, grid_topology_text):
        spec = parse_grid_topology(grid_topology_text)
        assert len(spec.generators) == 53
        assert len(spec.loads) == 65
        assert len(set(spec.generators) | set(spec.loads)) == 118

    def test_built_system_shape(self, grid_system):
        system, state_map = grid_system
        assert state_map.state_count == system.d == 407
        assert has_all_self_loops(system)
