"""Command-line front end.

Exit codes: 0 success, 1 infeasible placement, 2 input error, 3 cap
refusal.  Wall-clock durations go to stderr so stdout stays byte-stable
across runs.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .gridmodel import build_grid_system, parse_grid_topology
from .oracle import (
    CapExceeded,
    brute_force_max_coverage,
    brute_force_min_sensors,
    exhaustive_contraction_check,
    numeric_observability_index,
    random_realization,
)
from .patterns import (
    InputError,
    SparsityPattern,
    StructuredSystem,
    build_digraph,
    has_all_self_loops,
    is_contraction_free,
    is_structurally_observable,
)
from .placement import max_coverage_greedy, min_sensor_greedy, structural_observability_index
from .sysfile import format_system, parse_forbidden, parse_system

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_CAP = 3

PLATEAU_ROWS = 10


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_system(path: str) -> StructuredSystem:
    return parse_system(_read(path))


def _digest(system: StructuredSystem) -> str:
    return (
        f"input: d={system.d} p={system.p} "
        f"a_nnz={system.a.nnz} c_nnz={system.c.nnz}"
    )


def _one_based(indices) -> str:
    return ",".join(str(i + 1) for i in indices) if indices else "(none)"


def cmd_analyze(args) -> int:
    system = _load_system(args.system)
    digraph = build_digraph(system)
    print("command: analyze")
    print(_digest(system))
    print(f"self_loops: {str(has_all_self_loops(system)).lower()}")
    print(f"contraction_free: {str(is_contraction_free(digraph)).lower()}")
    observable = is_structurally_observable(system)
    print(f"observable: {str(observable).lower()}")
    index = structural_observability_index(system)
    print(f"index: {index if index is not None else 'unobservable'}")
    return EXIT_OK


def cmd_min_sensors(args) -> int:
    system = _load_system(args.system)
    forbidden = frozenset()
    if args.forbidden:
        forbidden = parse_forbidden(_read(args.forbidden), system.p)
    result = min_sensor_greedy(system, args.horizon, forbidden)
    print("command: min-sensors")
    print(_digest(system))
    print(f"horizon: {args.horizon}")
    print(f"forbidden: {_one_based(sorted(forbidden))}")
    print(f"feasible: {str(result.feasible).lower()}")
    if not result.feasible:
        print(f"unmatched_states: {_one_based(result.unmatched_states)}")
        return EXIT_INFEASIBLE
    print(f"selected: {_one_based(result.selected)}")
    print(f"gains: {','.join(str(g) for g in result.gains)}")
    print(f"final_xi: {result.final_xi}")
    print(f"bound_factor: {result.bound_factor!r}")
    return EXIT_OK


def cmd_max_observe(args) -> int:
    system = _load_system(args.system)
    result = max_coverage_greedy(system, args.budget)
    print("command: max-observe")
    print(_digest(system))
    print(f"budget: {args.budget}")
    print(f"selected: {_one_based(result.selected)}")
    print(f"gains: {','.join(str(g) for g in result.gains)}")
    print(f"states_observable: {result.final_xi} of {system.d}")
    print(f"bound_factor: {result.bound_factor!r}")
    return EXIT_OK


def index_sweep_rows(system: StructuredSystem):
    """(horizon, |selected|) rows; infeasible horizons are skipped.

    Stops early once the output count has sat at the same value for
    PLATEAU_ROWS consecutive horizons.
    """
    rows = []
    streak = 0
    last = None
    for ell in range(1, system.d + 1):
        result = min_sensor_greedy(system, ell)
        if not result.feasible:
            continue
        count = len(result.selected)
        rows.append((ell, count))
        streak = streak + 1 if count == last else 1
        last = count
        if streak >= PLATEAU_ROWS:
            break
    return rows


def budget_sweep_rows(system: StructuredSystem):
    """(budget, states observable) rows, stopping once all states are covered.

    One full-budget greedy run supplies every prefix: the pick sequence
    does not depend on the budget.
    """
    result = max_coverage_greedy(system, system.p)
    rows = []
    covered = 0
    for r, gain in enumerate(result.gains, start=1):
        covered += gain
        rows.append((r, covered))
        if covered >= system.d:
            break
    return rows


def cmd_curves(args) -> int:
    system = _load_system(args.system)
    if args.mode == "index-sweep":
        print("l,outputs")
        for ell, count in index_sweep_rows(system):
            print(f"{ell},{count}")
    else:
        print("r,states")
        for r, covered in budget_sweep_rows(system):
            print(f"{r},{covered}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    system = _load_system(args.system)
    print(f"command: oracle {args.oracle_cmd}")
    print(_digest(system))
    if args.oracle_cmd == "min-sensors":
        forbidden = frozenset()
        if args.forbidden:
            forbidden = parse_forbidden(_read(args.forbidden), system.p)
        best = brute_force_min_sensors(system, args.horizon, forbidden, cap=args.cap)
        if best is None:
            print("optimal: infeasible")
            return EXIT_INFEASIBLE
        print(f"optimal: {_one_based(sorted(best))}")
    elif args.oracle_cmd == "max-coverage":
        best, value = brute_force_max_coverage(system, args.budget, cap=args.cap)
        print(f"optimal_set: {_one_based(sorted(best))}")
        print(f"optimal_xi: {value}")
    elif args.oracle_cmd == "numeric-index":
        real = random_realization(system, args.seed)
        index = numeric_observability_index(real)
        print(f"seed: {args.seed}")
        print(f"numeric_index: {index if index is not None else 'unobservable'}")
    else:
        digraph = build_digraph(system)
        ok = exhaustive_contraction_check(digraph, cap=args.cap)
        print(f"contraction_free: {str(ok).lower()}")
    return EXIT_OK


def cmd_gen_grid(args) -> int:
    spec = parse_grid_topology(_read(args.topology))
    system, state_map = build_grid_system(spec)
    if args.identity_outputs:
        system = StructuredSystem(system.a, SparsityPattern.identity(system.a.rows))
    Path(args.out).write_text(format_system(system), encoding="utf-8")
    print("command: gen-grid")
    print(
        f"buses: generators={len(spec.generators)} loads={len(spec.loads)} "
        f"lines={len(spec.lines)}"
    )
    print(f"states: {state_map.state_count}")
    print(f"a_entries: {system.a.nnz}")
    print(f"c_entries: {system.c.nnz}")
    print(f"written: {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="obsplace",
        description="Structural-observability sensor placement toolkit",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("analyze", help="structural diagnosis of a system file")
    p.add_argument("system")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("min-sensors", help="greedy minimal placement under an index bound")
    p.add_argument("system")
    p.add_argument("--horizon", type=int, required=True, metavar="L")
    p.add_argument("--forbidden", metavar="FILE")
    p.set_defaults(func=cmd_min_sensors)

    p = sub.add_parser("max-observe", help="greedy coverage under an output budget")
    p.add_argument("system")
    p.add_argument("--budget", type=int, required=True, metavar="R")
    p.set_defaults(func=cmd_max_observe)

    p = sub.add_parser("curves", help="plot-ready CSV sweeps")
    p.add_argument("system")
    p.add_argument("--mode", choices=("index-sweep", "budget-sweep"), required=True)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("oracle", help="exhaustive/numeric ground-truth engines")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)
    o = osub.add_parser("min-sensors")
    o.add_argument("system")
    o.add_argument("--horizon", type=int, required=True, metavar="L")
    o.add_argument("--forbidden", metavar="FILE")
    o.add_argument("--cap", type=int, default=20)
    o = osub.add_parser("max-coverage")
    o.add_argument("system")
    o.add_argument("--budget", type=int, required=True, metavar="R")
    o.add_argument("--cap", type=int, default=20)
    o = osub.add_parser("numeric-index")
    o.add_argument("system")
    o.add_argument("--seed", type=int, default=0)
    o = osub.add_parser("contraction")
    o.add_argument("system")
    o.add_argument("--cap", type=int, default=16)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen-grid", help="build a system file from a grid topology")
    p.add_argument("topology")
    p.add_argument("out")
    p.add_argument("--identity-outputs", action="store_true")
    p.set_defaults(func=cmd_gen_grid)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        print(f"duration_s={time.perf_counter() - started:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
