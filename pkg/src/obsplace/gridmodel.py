"""Cyber-physical power-grid construction (generator/load template digraph).

Each generator bus contributes four states (turbine power, electrical
power, frequency, valve opening) and each load bus three (delivered power,
frequency, consumed real power), all with self-loops.  Transmission lines
couple the frequency state of each endpoint into the power state of the
other endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from .patterns import InputError, SparsityPattern, StructuredSystem

GEN_SLOTS = ("P_TG", "P_G", "w_G", "a_G")
LOAD_SLOTS = ("P_L", "w_L", "I_L")


@dataclass(frozen=True)
class GridSpec:
    """Bus/branch topology: which buses carry generators or loads, and the lines."""

    generators: tuple[int, ...]
    loads: tuple[int, ...]
    lines: tuple[tuple[int, int], ...]

    def __post_init__(self):
        problems = []
        if not self.generators and not self.loads:
            problems.append("no buses declared")
        if len(set(self.generators)) != len(self.generators):
            problems.append("duplicate generator bus")
        if len(set(self.loads)) != len(self.loads):
            problems.append("duplicate load bus")
        overlap = set(self.generators) & set(self.loads)
        if overlap:
            problems.append(f"buses both generator and load: {sorted(overlap)}")
        known = set(self.generators) | set(self.loads)
        for (b1, b2) in self.lines:
            for b in (b1, b2):
                if b not in known:
                    problems.append(f"line endpoint {b} is not a declared bus")
        if problems:
            raise InputError("; ".join(problems))


@dataclass(frozen=True)
class GridStateMap:
    """Bijection between (bus, slot) pairs and state-vertex indices."""

    labels: tuple[tuple[int, str], ...]
    index_of: dict[tuple[int, str], int]

    @property
    def state_count(self) -> int:
        return len(self.labels)


def build_grid_system(spec: GridSpec) -> tuple[StructuredSystem, GridStateMap]:
    """Assemble the structured system for a grid topology.

    State order: generators in spec order (slots P_TG, P_G, w_G, a_G), then
    loads (slots P_L, w_L, I_L).  The output pattern is left empty; output
    selection is the caller's concern.
    """
    labels: list[tuple[int, str]] = []
    for bus in spec.generators:
        labels.extend((bus, slot) for slot in GEN_SLOTS)
    for bus in spec.loads:
        labels.extend((bus, slot) for slot in LOAD_SLOTS)
    index_of = {label: i for i, label in enumerate(labels)}
    d = len(labels)

    edges: set[tuple[int, int]] = set()

    def add(src: tuple[int, str], dst: tuple[int, str]):
        # A-pattern entry (row, col) encodes the edge col -> row.
        edges.add((index_of[dst], index_of[src]))

    for bus in spec.generators:
        ptg, pg, wg, ag = ((bus, s) for s in GEN_SLOTS)
        for slot in GEN_SLOTS:
            add((bus, slot), (bus, slot))
        add(ag, wg)
        add(wg, ag)
        add(wg, pg)
        add(pg, wg)
        add(ag, ptg)
        add(ptg, wg)
    for bus in spec.loads:
        pl, wl, il = ((bus, s) for s in LOAD_SLOTS)
        for slot in LOAD_SLOTS:
            add((bus, slot), (bus, slot))
        add(pl, wl)
        add(wl, pl)
        add(il, wl)

    gen_set = set(spec.generators)

    def freq(bus):
        return (bus, "w_G" if bus in gen_set else "w_L")

    def power(bus):
        return (bus, "P_G" if bus in gen_set else "P_L")

    for (b1, b2) in spec.lines:
        add(freq(b1), power(b2))
        add(freq(b2), power(b1))

    a = SparsityPattern(d, d, frozenset(edges))
    c = SparsityPattern(1, d, frozenset())
    # c.rows must be positive for StructuredSystem; a single disconnected
    # output row stands in until the caller chooses outputs.
    return StructuredSystem(a, c), GridStateMap(tuple(labels), index_of)


def parse_grid_topology(text: str) -> GridSpec:
    """Parse the grid topology format: 'gen B', 'load B', 'line B1 B2' lines."""
    gens: list[int] = []
    loads: list[int] = []
    lines: list[tuple[int, int]] = []
    seen_lines: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        parts = stripped.split()
        try:
            if parts[0] == "gen" and len(parts) == 2:
                gens.append(int(parts[1]))
            elif parts[0] == "load" and len(parts) == 2:
                loads.append(int(parts[1]))
            elif parts[0] == "line" and len(parts) == 3:
                pair = (int(parts[1]), int(parts[2]))
                key = (min(pair), max(pair))
                if key in seen_lines:
                    raise InputError(f"line {lineno}: duplicate line {pair}")
                seen_lines.add(key)
                lines.append(pair)
            else:
                raise InputError(f"line {lineno}: unrecognized record {stripped!r}")
        except InputError:
            raise
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    return GridSpec(tuple(gens), tuple(loads), tuple(lines))
