"""Classical integer magic squares: generation, verification, translation.

A classical magic square of side m holds each of 1..m^2 exactly once and has
every row, column, and both main diagonals summing to m(m^2+1)/2.  These are
the raw material the power squares are carved from; a translated copy (all
entries shifted by a constant) selects which window of residues the group
construction uses.

Generation is deterministic and covers every side m >= 3:

* odd m        — the staircase method: start above the centre, keep moving
                 up-right with wraparound, drop down one on collision;
* m % 4 == 0   — the complement method: write 1..m^2 row-major, then replace
                 z by m^2+1-z on both block diagonals of each aligned 4x4
                 subsquare;
* m % 4 == 2   — the quadrant method: tile the square with 2x2 blocks, fill
                 blocks along a staircase path through the (m/2)-sided block
                 grid, and orient each block by an L/U/X pattern keyed to its
                 block row.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources


def classic_constant(side: int) -> int:
    """Common line sum of a classical magic square of the given side."""
    return side * (side * side + 1) // 2


@dataclass(frozen=True)
class IntMagicSquare:
    """An integer square with its expected common line sum."""

    side: int
    entries: tuple[tuple[int, ...], ...]
    constant: int

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)


@dataclass(frozen=True)
class ClassicCheck:
    """Verdict of verify_classic: which lines missed the expected sum."""

    ok: bool
    side: int
    constant: int
    offset: int
    failures: tuple[str, ...]


def from_rows(rows: list[list[int]]) -> IntMagicSquare:
    """Build a square, reading the translation off the smallest entry.

    A square holding offset+1..offset+m^2 has smallest entry offset+1, so the
    expected constant is classic_constant(m) + m*offset.
    """
    side = len(rows)
    if side == 0 or any(len(row) != side for row in rows):
        raise ValueError("integer square must be square and non-empty")
    entries = tuple(tuple(row) for row in rows)
    offset = min(value for row in entries for value in row) - 1
    return IntMagicSquare(side, entries, classic_constant(side) + side * offset)


def _generate_odd(m: int) -> list[list[int]]:
    grid = [[0] * m for _ in range(m)]
    i, j = 0, m // 2
    for value in range(1, m * m + 1):
        grid[i][j] = value
        ni, nj = (i - 1) % m, (j + 1) % m
        if grid[ni][nj]:
            ni, nj = (i + 1) % m, j
        i, j = ni, nj
    return grid


def _generate_doubly_even(m: int) -> list[list[int]]:
    grid = [[i * m + j + 1 for j in range(m)] for i in range(m)]
    for i in range(m):
        for j in range(m):
            if i % 4 == j % 4 or (i % 4) + (j % 4) == 3:
                grid[i][j] = m * m + 1 - grid[i][j]
    return grid


# Orientations for the quadrant method: each 2x2 block receives four
# consecutive values 4(v-1)+{1,2,3,4} arranged by one of three patterns.
_L_BLOCK = ((4, 1), (2, 3))
_U_BLOCK = ((1, 4), (2, 3))
_X_BLOCK = ((1, 4), (3, 2))


def _generate_singly_even(m: int) -> list[list[int]]:
    half = m // 2  # odd, >= 3
    quarter = (half - 1) // 2  # number of leading L rows is quarter + 1
    pattern = [[None] * half for _ in range(half)]
    for bi in range(half):
        if bi < quarter + 1:
            kind = _L_BLOCK
        elif bi == quarter + 1:
            kind = _U_BLOCK
        else:
            kind = _X_BLOCK
        for bj in range(half):
            pattern[bi][bj] = kind
    # The centre block swaps with the block directly below it.
    pattern[quarter][quarter], pattern[quarter + 1][quarter] = (
        pattern[quarter + 1][quarter],
        pattern[quarter][quarter],
    )

    # Walk the block grid with the staircase method to place values 1..half^2.
    order = [[0] * half for _ in range(half)]
    i, j = 0, half // 2
    for value in range(1, half * half + 1):
        order[i][j] = value
        ni, nj = (i - 1) % half, (j + 1) % half
        if order[ni][nj]:
            ni, nj = (i + 1) % half, j
        i, j = ni, nj

    grid = [[0] * m for _ in range(m)]
    for bi in range(half):
        for bj in range(half):
            base = 4 * (order[bi][bj] - 1)
            block = pattern[bi][bj]
            for di in range(2):
                for dj in range(2):
                    grid[2 * bi + di][2 * bj + dj] = base + block[di][dj]
    return grid


def generate(side: int) -> IntMagicSquare:
    """Deterministic classical magic square of any side >= 3."""
    if side < 3:
        raise ValueError(f"no classical magic square of side {side} (need side >= 3)")
    if side % 2 == 1:
        rows = _generate_odd(side)
    elif side % 4 == 0:
        rows = _generate_doubly_even(side)
    else:
        rows = _generate_singly_even(side)
    return from_rows(rows)


def translate(square: IntMagicSquare, shift: int) -> IntMagicSquare:
    """Shift every entry by a constant; line sums move by side * shift."""
    entries = tuple(tuple(value + shift for value in row) for row in square.entries)
    return IntMagicSquare(square.side, entries, square.constant + square.side * shift)


def verify_classic(square: IntMagicSquare, offset: int = 0) -> ClassicCheck:
    """Check entries are offset+1..offset+m^2 and all lines hit the constant.

    ``offset`` names the translation: a square translated by x is verified
    with offset = x against constant classic_constant(m) + m*x.
    """
    m = square.side
    expected = classic_constant(m) + m * offset
    failures: list[str] = []

    seen = sorted(value for row in square.entries for value in row)
    wanted = list(range(offset + 1, offset + m * m + 1))
    if seen != wanted:
        failures.append(
            f"entries are not exactly {offset + 1}..{offset + m * m} (translation {offset})"
        )

    for i in range(m):
        total = sum(square.row(i))
        if total != expected:
            failures.append(f"row {i + 1} sums to {total}, expected {expected}")
    for j in range(m):
        total = sum(square.col(j))
        if total != expected:
            failures.append(f"column {j + 1} sums to {total}, expected {expected}")
    down = sum(square.entries[i][i] for i in range(m))
    if down != expected:
        failures.append(f"down diagonal sums to {down}, expected {expected}")
    up = sum(square.entries[m - 1 - i][i] for i in range(m))
    if up != expected:
        failures.append(f"up diagonal sums to {up}, expected {expected}")

    return ClassicCheck(not failures, m, expected, offset, tuple(failures))


def serialize_int_square(square: IntMagicSquare) -> str:
    lines = [f"intsquare m={square.side}"]
    for row in square.entries:
        lines.append(" ".join(str(value) for value in row))
    return "\n".join(lines) + "\n"


def parse_int_square(text: str) -> IntMagicSquare:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty integer-square document")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "intsquare" or not header[1].startswith("m="):
        raise ValueError(f"bad integer-square header {lines[0]!r}")
    try:
        side = int(header[1][2:])
    except ValueError:
        raise ValueError(f"bad side in header {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != side:
        raise ValueError(f"expected {side} rows, found {len(body)}")
    rows: list[list[int]] = []
    for i, line in enumerate(body):
        parts = line.split()
        if len(parts) != side:
            raise ValueError(f"row {i + 1} has {len(parts)} entries, expected {side}")
        try:
            rows.append([int(part) for part in parts])
        except ValueError:
            raise ValueError(f"row {i + 1} contains a non-integer entry") from None
    return from_rows(rows)


def bundled_square(name: str) -> IntMagicSquare:
    """Load one of the shipped reference squares: m4, m5, or m5x1."""
    try:
        text = resources.files("dihedralmagic.fixtures").joinpath(f"{name}.txt").read_text()
    except FileNotFoundError:
        raise ValueError(f"no bundled square named {name!r}") from None
    return parse_int_square(text)
