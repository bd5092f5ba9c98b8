"""Text formats for sparsity patterns and structured systems.

Pattern block: a header line `rows cols nnz` followed by nnz lines of
`row col` (1-based).  A system file concatenates two blocks introduced by
`[A]` and `[C]` header lines.  `#` starts a comment anywhere.
"""

from __future__ import annotations

from .patterns import InputError, SparsityPattern, StructuredSystem


def _meaningful_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            yield lineno, stripped


def _parse_block(lines: list[tuple[int, str]], name: str) -> SparsityPattern:
    if not lines:
        raise InputError(f"[{name}] block is empty")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 3:
        raise InputError(f"line {lineno}: expected 'rows cols nnz' header in [{name}]")
    try:
        rows, cols, nnz = (int(x) for x in parts)
    except ValueError:
        raise InputError(f"line {lineno}: non-integer header in [{name}]") from None
    if len(lines) - 1 != nnz:
        raise InputError(
            f"[{name}] declares {nnz} entries but {len(lines) - 1} follow"
        )
    entries: set[tuple[int, int]] = set()
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'row col' pair")
        try:
            r, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: non-integer entry") from None
        if not (1 <= r <= rows and 1 <= c <= cols):
            raise InputError(
                f"line {lineno}: entry ({r}, {c}) outside {rows}x{cols} pattern"
            )
        pos = (r - 1, c - 1)
        if pos in entries:
            raise InputError(f"line {lineno}: duplicate entry ({r}, {c})")
        entries.add(pos)
    return SparsityPattern(rows, cols, frozenset(entries))


def parse_system(text: str) -> StructuredSystem:
    """Parse a system file with [A] and [C] pattern blocks."""
    blocks: dict[str, list[tuple[int, str]]] = {}
    current: list[tuple[int, str]] | None = None
    for lineno, line in _meaningful_lines(text):
        if line in ("[A]", "[C]"):
            name = line[1:-1]
            if name in blocks:
                raise InputError(f"line {lineno}: repeated [{name}] block")
            current = blocks.setdefault(name, [])
        elif current is None:
            raise InputError(f"line {lineno}: data before any [A]/[C] header")
        else:
            current.append((lineno, line))
    for name in ("A", "C"):
        if name not in blocks:
            raise InputError(f"missing [{name}] block")
    a = _parse_block(blocks["A"], "A")
    c = _parse_block(blocks["C"], "C")
    return StructuredSystem(a, c)


def format_pattern(pattern: SparsityPattern) -> str:
    lines = [f"{pattern.rows} {pattern.cols} {pattern.nnz}"]
    lines.extend(f"{i + 1} {j + 1}" for (i, j) in sorted(pattern.entries))
    return "\n".join(lines)


def format_system(system: StructuredSystem) -> str:
    """Serialize a structured system in the two-block text format."""
    return "[A]\n{}\n[C]\n{}\n".format(
        format_pattern(system.a), format_pattern(system.c)
    )


def parse_forbidden(text: str, output_count: int) -> frozenset[int]:
    """Forbidden-output file: one 1-based output index per line."""
    result: set[int] = set()
    for lineno, line in _meaningful_lines(text):
        try:
            idx = int(line)
        except ValueError:
            raise InputError(f"line {lineno}: non-integer output index") from None
        if not (1 <= idx <= output_count):
            raise InputError(
                f"line {lineno}: output index {idx} outside [1, {output_count}]"
            )
        result.add(idx - 1)
    return frozenset(result)
