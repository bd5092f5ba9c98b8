"""Observability index, greedy minimal placement, and coverage maximisation."""

from __future__ import annotations

import math

import numpy as np
import pytest

import obsplace.placement as placement
from obsplace import (
    SparsityPattern,
    StructuredSystem,
    build_digraph,
    index_bounded_by,
    max_coverage_greedy,
    min_sensor_greedy,
    structural_observability_index,
    xi,
)

from helpers import random_system


def _identity_system(d: int) -> StructuredSystem:
    return StructuredSystem(
        SparsityPattern.identity(d), SparsityPattern.identity(d)
    )


class TestIndexBoundedBy:
    def test_reference_horizons(self, ref_system):
        assert index_bounded_by(ref_system, (0, 1), 3)
        assert not index_bounded_by(ref_system, (0, 1), 2)

    def test_empty_output_set(self, ref_system):
        assert not index_bounded_by(ref_system, (), 3)

    def test_identity_at_horizon_one(self):
        system = _identity_system(4)
        assert index_bounded_by(system, range(4), 1)


class TestStructuralObservabilityIndex:
    def test_reference_index(self, ref_system):
        assert structural_observability_index(ref_system) == 3

    def test_identity_outputs_give_one(self):
        rng = np.random.default_rng(41)
        for _ in range(30):
            base = random_system(rng, self_loops=True)
            system = StructuredSystem(
                base.a, SparsityPattern.identity(base.d)
            )
            assert structural_observability_index(system) == 1

    def test_unobservable_returns_none(self):
        system = StructuredSystem(
            SparsityPattern(2, 2, {(0, 0)}), SparsityPattern(1, 2, {(0, 0)})
        )
        assert structural_observability_index(system) is None

    def test_is_minimal(self):
        rng = np.random.default_rng(42)
        checked = 0
        for _ in range(80):
            system = random_system(rng, self_loops=True)
            index = structural_observability_index(system)
            if index is None:
                continue
            checked += 1
            outputs = tuple(range(system.p))
            assert index_bounded_by(system, outputs, index)
            if index > 1:
                assert not index_bounded_by(system, outputs, index - 1)
        assert checked > 20


class TestMinSensorGreedy:
    def test_reference_selection(self, ref_system):
        result = min_sensor_greedy(ref_system, 3)
        assert result.selected == (0, 1)
        assert result.gains == (3, 3)
        assert result.final_xi == 6
        assert result.feasible
        assert result.bound_factor == pytest.approx(1 + math.log(6))

    def test_reference_forbidden_infeasible(self, ref_system):
        result = min_sensor_greedy(ref_system, 3, forbidden={0})
        assert not result.feasible
        assert result.selected == ()
        assert result.unmatched_states == (1, 3, 5)

    def test_identity_selects_everything(self):
        result = min_sensor_greedy(_identity_system(5), 1)
        assert result.selected == tuple(range(5))
        assert result.gains == (1,) * 5

    def test_validation(self, ref_system):
        with pytest.raises(ValueError):
            min_sensor_greedy(ref_system, 0)
        with pytest.raises(ValueError):
            min_sensor_greedy(ref_system, 7)
        with pytest.raises(ValueError):
            min_sensor_greedy(ref_system, 3, forbidden={2})

    def test_feasible_implies_index_bound(self):
        rng = np.random.default_rng(43)
        for _ in range(80):
            system = random_system(rng, self_loops=True)
            horizon = int(rng.integers(1, system.d + 1))
            result = min_sensor_greedy(system, horizon)
            if result.feasible:
                assert index_bounded_by(system, result.selected, horizon)
                digraph = build_digraph(system)
                assert result.final_xi == xi(digraph, result.selected, horizon)
            assert len(set(result.selected)) == len(result.selected)

    def test_forbidden_never_selected(self):
        rng = np.random.default_rng(44)
        for _ in range(60):
            system = random_system(rng, self_loops=True)
            forbidden = frozenset(
                i for i in range(system.p) if rng.random() < 0.3
            )
            horizon = int(rng.integers(1, system.d + 1))
            result = min_sensor_greedy(system, horizon, forbidden)
            assert not (set(result.selected) & forbidden)

    def test_warns_without_perfect_state_matching(self, ref_system):
        with pytest.warns(UserWarning, match="no perfect matching"):
            min_sensor_greedy(ref_system, 3)


class TestMaxCoverageGreedy:
    def test_reference_singleton(self, ref_system):
        result = max_coverage_greedy(ref_system, 1)
        assert result.selected == (0,)
        assert result.final_xi == 6
        assert result.bound_factor == pytest.approx(1 - 1 / math.e)

    def test_full_budget_reaches_global_maximum(self):
        rng = np.random.default_rng(45)
        for _ in range(60):
            system = random_system(rng)
            digraph = build_digraph(system)
            result = max_coverage_greedy(system, system.p)
            assert result.final_xi == xi(digraph, range(system.p), system.d)

    def test_budget_validation(self, ref_system):
        with pytest.raises(ValueError):
            max_coverage_greedy(ref_system, 0)
        with pytest.raises(ValueError):
            max_coverage_greedy(ref_system, 3)

    def test_coverage_non_decreasing_in_budget(self):
        rng = np.random.default_rng(46)
        for _ in range(40):
            system = random_system(rng)
            values = [
                max_coverage_greedy(system, r).final_xi
                for r in range(1, system.p + 1)
            ]
            assert values == sorted(values)


class TestGreedyConsistency:
    def test_output_count_non_increasing_in_horizon(self):
        rng = np.random.default_rng(47)
        for _ in range(40):
            system = random_system(rng, self_loops=True)
            results = [
                min_sensor_greedy(system, ell)
                for ell in range(1, system.d + 1)
            ]
            counts = [len(r.selected) for r in results if r.feasible]
            assert counts == sorted(counts, reverse=True)

    def test_full_budget_and_full_horizon_agree_on_saturation(self):
        rng = np.random.default_rng(48)
        for _ in range(60):
            system = random_system(rng)
            coverage = max_coverage_greedy(system, system.p)
            probe = min_sensor_greedy(system, system.d)
            reaches_d = coverage.final_xi == system.d
            assert reaches_d == (probe.final_xi == system.d)

    def test_lazy_and_plain_greedy_select_identically(self, monkeypatch):
        rng = np.random.default_rng(49)
        for _ in range(40):
            system = random_system(rng, self_loops=True)
            horizon = int(rng.integers(1, system.d + 1))
            budget = int(rng.integers(1, system.p + 1))

            monkeypatch.setattr(placement, "LAZY_THRESHOLD", 10**9)
            plain_min = min_sensor_greedy(system, horizon)
            plain_cov = max_coverage_greedy(system, budget)
            monkeypatch.setattr(placement, "LAZY_THRESHOLD", 0)
            lazy_min = min_sensor_greedy(system, horizon)
            lazy_cov = max_coverage_greedy(system, budget)

            assert plain_min == lazy_min
            assert plain_cov == lazy_cov
