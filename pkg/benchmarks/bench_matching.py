#!/usr/bin/env python3
"""Benchmark the compiled matching kernel against the pure-Python fallback.

Three workloads:
  batch   -- maximum matchings on random bipartite graphs
  trials  -- warm-started incremental gains (the greedy loop's hot path)
  grid    -- end-to-end greedy placement on the shipped 118-bus system

Usage: python benchmarks/bench_matching.py [--repeat N] [--seed S]
"""

from __future__ import annotations

import argparse
import importlib.resources
import time

import numpy as np

from obsplace import (
    BipartiteGraph,
    MatchingState,
    SparsityPattern,
    StructuredSystem,
    build_grid_system,
    maximum_matching,
    min_sensor_greedy,
    parse_grid_topology,
)
from obsplace.matching import rows_to_csr, set_backend


def random_bipartite(rng: np.random.Generator, nl: int, nr: int,
                     density: float) -> BipartiteGraph:
    edges = frozenset(
        (u, v)
        for u in range(nl)
        for v in range(nr)
        if rng.random() < density
    )
    return BipartiteGraph(tuple(range(nl)), tuple(range(nr)), edges)


def bench_batch(rng: np.random.Generator) -> float:
    graphs = [
        random_bipartite(rng, 300, 300, 0.02) for _ in range(30)
    ]
    started = time.perf_counter()
    total = 0
    for graph in graphs:
        total += len(maximum_matching(graph))
    elapsed = time.perf_counter() - started
    assert total > 0
    return elapsed


def bench_trials(rng: np.random.Generator) -> float:
    n_left = 400
    rows = [
        np.sort(rng.choice(n_left, size=rng.integers(2, 30), replace=False))
        .astype(np.int32)
        for _ in range(400)
    ]
    started = time.perf_counter()
    state = MatchingState(n_left)
    for row in rows:
        state.trial(*rows_to_csr([row]))
        state.add_rows(*rows_to_csr([row]))
    elapsed = time.perf_counter() - started
    assert state.size > 0
    return elapsed


def _grid_identity() -> StructuredSystem:
    text = (
        importlib.resources.files("obsplace")
        .joinpath("data/ieee118.grid")
        .read_text(encoding="utf-8")
    )
    system, _ = build_grid_system(parse_grid_topology(text))
    return StructuredSystem(system.a, SparsityPattern.identity(system.d))


def bench_grid(_rng: np.random.Generator) -> float:
    system = _grid_identity()
    started = time.perf_counter()
    result = min_sensor_greedy(system, 35)
    elapsed = time.perf_counter() - started
    assert result.feasible
    return elapsed


WORKLOADS = [
    ("batch  (30x random 300+300 graphs)", bench_batch),
    ("trials (400 warm-started gain evaluations)", bench_trials),
    ("grid   (greedy placement, 407 states, horizon 35)", bench_grid),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'workload':52s} {'compiled':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fn in WORKLOADS:
        times = {}
        for backend in ("compiled", "python"):
            set_backend(backend)
            best = min(
                fn(np.random.default_rng(args.seed))
                for _ in range(args.repeat)
            )
            times[backend] = best
        set_backend("compiled")
        speedup = times["python"] / times["compiled"]
        print(
            f"{name:52s} {times['compiled']:9.3f}s {times['python']:9.3f}s "
            f"{speedup:7.1f}x"
        )


if __name__ == "__main__":
    main()
