"""Ordering-aware verification of group-valued rectangles.

Products in a dihedral group depend on the order factors are written, so
"every row multiplies to the same constant" is only meaningful relative to an
ordering convention.  Four are supported:

* linear       — rows multiply left to right, columns bottom to top;
* circular     — each line may start anywhere but keeps its cyclic order
                 (rows ascending, columns descending); a start index names
                 the product's FIRST factor: a row started at a runs
                 a, a+1, ..., a-1 and a column started at a runs
                 a, a-1, ..., a+1;
* semicircular — for squares glued from four blocks of side m, each half-line
                 cycles independently; a row product is (left half starting
                 at column a, ascending within the half) times (right half
                 starting at column b, ascending within the half), a column
                 product is (top half starting at row a, descending) times
                 (bottom half starting at row b, descending);
* arbitrary    — each line may be multiplied in any order (any permutation
                 of its cells).

The exists_* operations search their ordering's start/permutation space and
report which constants every row (column) can reach simultaneously.  When
several constants are reachable the choice is deterministic: pick the one
whose vector of per-line minimal witnesses (rows first, then columns) is
lexicographically smallest, breaking ties by the constant's canonical order
(rotations before reflections, then by exponent).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .grids import GroupGrid
from .group import DihedralElement, enumerate_elements

# Raw element = (exponent, reflected); folding these avoids object overhead
# in the witness-space enumerations.
Raw = tuple[int, bool]
Key = tuple[bool, int]

MAX_ARBITRARY_LINE = 8


def _raw_cells(cells: Iterable[DihedralElement]) -> list[Raw]:
    return [(cell.exponent, cell.reflected) for cell in cells]


def _fold(raw: Sequence[Raw], order: Iterable[int], k: int) -> Key:
    exponent = 0
    reflected = False
    for index in order:
        x, t = raw[index]
        exponent = exponent - x if reflected else exponent + x
        reflected = reflected != t
    return (reflected, exponent % k)


def _key_token(key: Key) -> str:
    reflected, exponent = key
    return f"r^{exponent}.s" if reflected else f"r^{exponent}"


def _element(key: Key, k: int) -> DihedralElement:
    return DihedralElement(key[1], key[0], k)


@dataclass
class VerificationReport:
    """Everything one verification run established, JSON-serializable."""

    ordering: str
    rows: int
    cols: int
    k: int
    row_products: list[str] | None = None
    col_products: list[str] | None = None
    row_constant: str | None = None
    col_constant: str | None = None
    magic_constant: str | None = None
    row_ok: bool = False
    col_ok: bool = False
    coverage_ok: bool = False
    coverage_missing: list[str] = field(default_factory=list)
    coverage_extra: list[str] = field(default_factory=list)
    achievable_row_constants: list[str] | None = None
    achievable_col_constants: list[str] | None = None
    achievable_common_constants: list[str] | None = None
    chosen_row_starts: list | None = None
    chosen_col_starts: list | None = None
    half_row_products: list[list[str]] | None = None
    half_col_products: list[list[str]] | None = None
    diagonal_down: str | None = None
    diagonal_up: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def is_magic_rectangle(self) -> bool:
        """Coverage plus a common row constant and a common column constant."""
        return self.coverage_ok and self.row_ok and self.col_ok

    @property
    def is_semi_magic(self) -> bool:
        """Square, covering, and one shared constant across rows and columns."""
        return (
            self.is_magic_rectangle
            and self.rows == self.cols
            and self.magic_constant is not None
        )

    @property
    def is_magic(self) -> bool:
        """Semi-magic with both diagonal products hitting the same constant."""
        return (
            self.is_semi_magic
            and self.diagonal_down is not None
            and self.diagonal_down == self.magic_constant
            and self.diagonal_up == self.magic_constant
        )

    def to_dict(self) -> dict:
        data = {
            "ordering": self.ordering,
            "rows": self.rows,
            "cols": self.cols,
            "k": self.k,
            "row_products": self.row_products,
            "col_products": self.col_products,
            "row_constant": self.row_constant,
            "col_constant": self.col_constant,
            "magic_constant": self.magic_constant,
            "row_ok": self.row_ok,
            "col_ok": self.col_ok,
            "coverage_ok": self.coverage_ok,
            "coverage_missing": self.coverage_missing,
            "coverage_extra": self.coverage_extra,
            "achievable_row_constants": self.achievable_row_constants,
            "achievable_col_constants": self.achievable_col_constants,
            "achievable_common_constants": self.achievable_common_constants,
            "chosen_row_starts": self.chosen_row_starts,
            "chosen_col_starts": self.chosen_col_starts,
            "half_row_products": self.half_row_products,
            "half_col_products": self.half_col_products,
            "diagonal_down": self.diagonal_down,
            "diagonal_up": self.diagonal_up,
            "is_magic_rectangle": self.is_magic_rectangle,
            "is_semi_magic": self.is_semi_magic,
            "is_magic": self.is_magic,
            "notes": self.notes,
        }
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def check_coverage(grid: GroupGrid) -> tuple[bool, list[str], list[str]]:
    """Does the grid hold every element of D_k exactly once?"""
    expected = Counter((e.reflected, e.exponent) for e in enumerate_elements(grid.k))
    actual = Counter((c.reflected, c.exponent) for row in grid.cells for c in row)
    missing = sorted((expected - actual).elements())
    extra = sorted((actual - expected).elements())
    return (not missing and not extra, [_key_token(m) for m in missing], [_key_token(x) for x in extra])


# ---------------------------------------------------------------------------
# Product computations for each ordering
# ---------------------------------------------------------------------------


def linear_line_products(grid: GroupGrid) -> tuple[list[DihedralElement], list[DihedralElement]]:
    """Row products left to right; column products bottom to top."""
    k = grid.k
    rows = []
    for i in range(grid.rows):
        raw = _raw_cells(grid.row(i))
        rows.append(_element(_fold(raw, range(grid.cols), k), k))
    cols = []
    for j in range(grid.cols):
        raw = _raw_cells(grid.col(j))
        cols.append(_element(_fold(raw, range(grid.rows - 1, -1, -1), k), k))
    return rows, cols


def _circular_row_order(start: int, length: int) -> list[int]:
    return [(start + t) % length for t in range(length)]


def _circular_col_order(start: int, length: int) -> list[int]:
    return [(start - t) % length for t in range(length)]


def circular_line_products(
    grid: GroupGrid,
    row_starts: Sequence[int],
    col_starts: Sequence[int],
) -> tuple[list[DihedralElement], list[DihedralElement]]:
    """Cyclic line products whose first factor sits at the given start index.

    A row started at a multiplies columns a, a+1, ..., a-1 (indices mod the
    row length, ascending); a column started at a multiplies rows
    a, a-1, ..., a+1 (descending).  Length-1 lines are their own product for
    any start.
    """
    if len(row_starts) != grid.rows:
        raise ValueError(f"need {grid.rows} row starts, got {len(row_starts)}")
    if len(col_starts) != grid.cols:
        raise ValueError(f"need {grid.cols} column starts, got {len(col_starts)}")
    k = grid.k
    rows = []
    for i, start in enumerate(row_starts):
        if not 0 <= start < grid.cols:
            raise ValueError(f"row start {start} outside 0..{grid.cols - 1}")
        raw = _raw_cells(grid.row(i))
        rows.append(_element(_fold(raw, _circular_row_order(start, grid.cols), k), k))
    cols = []
    for j, start in enumerate(col_starts):
        if not 0 <= start < grid.rows:
            raise ValueError(f"column start {start} outside 0..{grid.rows - 1}")
        raw = _raw_cells(grid.col(j))
        cols.append(_element(_fold(raw, _circular_col_order(start, grid.rows), k), k))
    return rows, cols


def _resolve_block_side(grid: GroupGrid, block_side: int | None) -> int:
    side = block_side if block_side is not None else grid.block_side
    if side is None:
        raise ValueError("semicircular products need a block side (none given or stored)")
    if not grid.is_square or grid.side != 2 * side:
        raise ValueError(
            f"semicircular products need a {2 * side}x{2 * side} square for block side {side}, "
            f"grid is {grid.rows}x{grid.cols}"
        )
    return side


def _semicircular_row_order(a: int, b: int, m: int) -> list[int]:
    if not 0 <= a < m:
        raise ValueError(f"left-half start {a} outside 0..{m - 1}")
    if not m <= b < 2 * m:
        raise ValueError(f"right-half start {b} outside {m}..{2 * m - 1}")
    left = [(a + t) % m for t in range(m)]
    right = [m + ((b - m + t) % m) for t in range(m)]
    return left + right


def _semicircular_col_order(a: int, b: int, m: int) -> list[int]:
    if not 0 <= a < m:
        raise ValueError(f"top-half start {a} outside 0..{m - 1}")
    if not m <= b < 2 * m:
        raise ValueError(f"bottom-half start {b} outside {m}..{2 * m - 1}")
    top = [(a - t) % m for t in range(m)]
    bottom = [m + ((b - m - t) % m) for t in range(m)]
    return top + bottom


def semicircular_line_products(
    grid: GroupGrid,
    row_starts: Sequence[tuple[int, int]],
    col_starts: Sequence[tuple[int, int]],
    block_side: int | None = None,
) -> tuple[list[DihedralElement], list[DihedralElement]]:
    """Half-line cyclic products at the given first-cell start pairs.

    Row i with starts (a, b): left half read cyclically ascending from column
    a (0 <= a < m), then right half ascending from column b (m <= b < 2m).
    Column j with starts (a, b): top half read cyclically descending from row
    a, then bottom half descending from row b.
    """
    m = _resolve_block_side(grid, block_side)
    if len(row_starts) != grid.rows:
        raise ValueError(f"need {grid.rows} row start pairs, got {len(row_starts)}")
    if len(col_starts) != grid.cols:
        raise ValueError(f"need {grid.cols} column start pairs, got {len(col_starts)}")
    k = grid.k
    rows = []
    for i, (a, b) in enumerate(row_starts):
        raw = _raw_cells(grid.row(i))
        rows.append(_element(_fold(raw, _semicircular_row_order(a, b, m), k), k))
    cols = []
    for j, (a, b) in enumerate(col_starts):
        raw = _raw_cells(grid.col(j))
        cols.append(_element(_fold(raw, _semicircular_col_order(a, b, m), k), k))
    return rows, cols


def shifted_block_products(
    block: GroupGrid, shift: int
) -> tuple[list[DihedralElement], list[DihedralElement]]:
    """Diagonal-start cyclic products of a standalone block, offset by a shift.

    Row i starts at column (i + shift) mod m and ascends; column j starts at
    row (j - shift) mod m and descends.  Shift 0 is the diagonal-start
    reading whose products the block constructions keep constant.
    """
    if not block.is_square:
        raise ValueError(f"block must be square, got {block.rows}x{block.cols}")
    m = block.side
    k = block.k
    rows = []
    for i in range(m):
        raw = _raw_cells(block.row(i))
        start = (i + shift) % m
        rows.append(_element(_fold(raw, [(start + t) % m for t in range(m)], k), k))
    cols = []
    for j in range(m):
        raw = _raw_cells(block.col(j))
        start = (j - shift) % m
        cols.append(_element(_fold(raw, [(start - t) % m for t in range(m)], k), k))
    return rows, cols


def diagonal_products(grid: GroupGrid) -> tuple[DihedralElement, DihedralElement]:
    """Strict products of both diagonals of a square, by ascending row.

    The down diagonal runs (1,1), (2,2), ...; the up diagonal runs from the
    top-right corner down to the bottom-left.
    """
    n = grid.side
    k = grid.k
    down = _fold(_raw_cells(grid.cells[i][i] for i in range(n)), range(n), k)
    up = _fold(_raw_cells(grid.cells[i][n - 1 - i] for i in range(n)), range(n), k)
    return _element(down, k), _element(up, k)


# ---------------------------------------------------------------------------
# Existence searches over an ordering's start space
# ---------------------------------------------------------------------------


def _line_constant_map(raw: list[Raw], orders: Iterable[tuple[object, list[int]]], k: int) -> dict:
    """Map constant -> smallest witness reaching it, enumerating in witness order."""
    reached: dict[Key, object] = {}
    for witness, order in orders:
        key = _fold(raw, order, k)
        if key not in reached:
            reached[key] = witness
    return reached


def _row_maps_circular(grid: GroupGrid) -> list[dict]:
    maps = []
    for i in range(grid.rows):
        raw = _raw_cells(grid.row(i))
        orders = ((w, _circular_row_order(w, grid.cols)) for w in range(grid.cols))
        maps.append(_line_constant_map(raw, orders, grid.k))
    return maps


def _col_maps_circular(grid: GroupGrid) -> list[dict]:
    maps = []
    for j in range(grid.cols):
        raw = _raw_cells(grid.col(j))
        orders = ((w, _circular_col_order(w, grid.rows)) for w in range(grid.rows))
        maps.append(_line_constant_map(raw, orders, grid.k))
    return maps


def _row_maps_semicircular(grid: GroupGrid, m: int) -> list[dict]:
    maps = []
    pairs = [(a, b) for a in range(m) for b in range(m, 2 * m)]
    for i in range(grid.rows):
        raw = _raw_cells(grid.row(i))
        orders = ((pair, _semicircular_row_order(pair[0], pair[1], m)) for pair in pairs)
        maps.append(_line_constant_map(raw, orders, grid.k))
    return maps


def _col_maps_semicircular(grid: GroupGrid, m: int) -> list[dict]:
    maps = []
    pairs = [(a, b) for a in range(m) for b in range(m, 2 * m)]
    for j in range(grid.cols):
        raw = _raw_cells(grid.col(j))
        orders = ((pair, _semicircular_col_order(pair[0], pair[1], m)) for pair in pairs)
        maps.append(_line_constant_map(raw, orders, grid.k))
    return maps


def _maps_arbitrary(lines: list[list[Raw]], k: int) -> list[dict]:
    maps = []
    for raw in lines:
        if len(raw) > MAX_ARBITRARY_LINE:
            raise ValueError(
                f"line of length {len(raw)} too long for exhaustive reordering "
                f"(limit {MAX_ARBITRARY_LINE})"
            )
        orders = ((perm, list(perm)) for perm in permutations(range(len(raw))))
        maps.append(_line_constant_map(raw, orders, k))
    return maps


def _common_keys(maps: list[dict]) -> set[Key]:
    if not maps:
        return set()
    keys = set(maps[0])
    for m in maps[1:]:
        keys &= set(m)
    return keys


def _pick(keys: set[Key], maps: list[dict]) -> Key:
    """Deterministic choice: lexicographically smallest per-line witness vector."""
    return min(keys, key=lambda key: (tuple(m[key] for m in maps), key))


def _resolve_choice(
    report: VerificationReport,
    row_maps: list[dict],
    col_maps: list[dict],
) -> tuple[Key | None, Key | None]:
    """Fill the report's achievable/chosen fields; return chosen (row, col) keys."""
    row_keys = _common_keys(row_maps)
    col_keys = _common_keys(col_maps)
    common = row_keys & col_keys
    report.achievable_row_constants = [_key_token(key) for key in sorted(row_keys)]
    report.achievable_col_constants = [_key_token(key) for key in sorted(col_keys)]
    report.achievable_common_constants = [_key_token(key) for key in sorted(common)]

    row_choice: Key | None = None
    col_choice: Key | None = None
    if common:
        choice = _pick(common, row_maps + col_maps)
        row_choice = col_choice = choice
    else:
        if row_keys:
            row_choice = _pick(row_keys, row_maps)
        if col_keys:
            col_choice = _pick(col_keys, col_maps)

    if row_choice is not None:
        report.row_ok = True
        report.row_constant = _key_token(row_choice)
        report.row_products = [_key_token(row_choice)] * report.rows
        report.chosen_row_starts = [row_maps[i][row_choice] for i in range(report.rows)]
    if col_choice is not None:
        report.col_ok = True
        report.col_constant = _key_token(col_choice)
        report.col_products = [_key_token(col_choice)] * report.cols
        report.chosen_col_starts = [col_maps[j][col_choice] for j in range(report.cols)]
    if (
        report.row_constant is not None
        and report.row_constant == report.col_constant
    ):
        report.magic_constant = report.row_constant
    return row_choice, col_choice


def _new_report(grid: GroupGrid, ordering: str) -> VerificationReport:
    report = VerificationReport(ordering=ordering, rows=grid.rows, cols=grid.cols, k=grid.k)
    ok, missing, extra = check_coverage(grid)
    report.coverage_ok = ok
    report.coverage_missing = missing
    report.coverage_extra = extra
    if grid.rows * grid.cols != 2 * grid.k:
        report.notes.append(
            f"grid has {grid.rows * grid.cols} cells but D_{grid.k} has {2 * grid.k} elements"
        )
    if grid.is_square:
        down, up = diagonal_products(grid)
        report.diagonal_down = down.token()
        report.diagonal_up = up.token()
    return report


def _apply_waivers(report: VerificationReport) -> None:
    """Length-1 lines cannot share a constant; drop that side's condition."""
    if report.rows == 1 and report.cols > 1 and not report.col_ok:
        report.col_ok = True
        report.col_constant = None
        report.col_products = None
        report.notes.append(
            "column condition waived: columns of a single-row grid have length 1"
        )
    if report.cols == 1 and report.rows > 1 and not report.row_ok:
        report.row_ok = True
        report.row_constant = None
        report.row_products = None
        report.notes.append(
            "row condition waived: rows of a single-column grid have length 1"
        )


def _fill_products(
    report: VerificationReport,
    rows: list[DihedralElement],
    cols: list[DihedralElement],
) -> VerificationReport:
    report.row_products = [e.token() for e in rows]
    report.col_products = [e.token() for e in cols]
    if len(set(report.row_products)) == 1:
        report.row_ok = True
        report.row_constant = report.row_products[0]
    if len(set(report.col_products)) == 1:
        report.col_ok = True
        report.col_constant = report.col_products[0]
    if (
        report.row_constant is not None
        and report.row_constant == report.col_constant
    ):
        report.magic_constant = report.row_constant
    _apply_waivers(report)
    return report


def verify_linear(grid: GroupGrid) -> VerificationReport:
    """Report on the strict reading: rows left to right, columns bottom to top."""
    report = _new_report(grid, "linear")
    rows, cols = linear_line_products(grid)
    return _fill_products(report, rows, cols)


def linear_products(grid: GroupGrid) -> VerificationReport:
    """Alias of verify_linear, named for the ordering it evaluates."""
    return verify_linear(grid)


def circular_products(
    grid: GroupGrid,
    row_starts: Sequence[int],
    col_starts: Sequence[int],
) -> VerificationReport:
    """Report on the cyclic reading at caller-chosen start indices."""
    report = _new_report(grid, "circular")
    rows, cols = circular_line_products(grid, row_starts, col_starts)
    report.chosen_row_starts = list(row_starts)
    report.chosen_col_starts = list(col_starts)
    return _fill_products(report, rows, cols)


def semicircular_products(
    grid: GroupGrid,
    row_starts: Sequence[tuple[int, int]],
    col_starts: Sequence[tuple[int, int]],
    block_side: int | None = None,
) -> VerificationReport:
    """Report on the half-line cyclic reading at caller-chosen start pairs."""
    m = _resolve_block_side(grid, block_side)
    report = _new_report(grid, "semicircular")
    rows, cols = semicircular_line_products(grid, row_starts, col_starts, m)
    report.chosen_row_starts = [list(pair) for pair in row_starts]
    report.chosen_col_starts = [list(pair) for pair in col_starts]
    k = grid.k
    report.half_row_products = [
        [
            _key_token(_fold(_raw_cells(grid.row(i)), [(a + t) % m for t in range(m)], k)),
            _key_token(
                _fold(_raw_cells(grid.row(i)), [m + ((b - m + t) % m) for t in range(m)], k)
            ),
        ]
        for i, (a, b) in enumerate(row_starts)
    ]
    report.half_col_products = [
        [
            _key_token(_fold(_raw_cells(grid.col(j)), [(a - t) % m for t in range(m)], k)),
            _key_token(
                _fold(_raw_cells(grid.col(j)), [m + ((b - m - t) % m) for t in range(m)], k)
            ),
        ]
        for j, (a, b) in enumerate(col_starts)
    ]
    return _fill_products(report, rows, cols)


def exists_circular(grid: GroupGrid) -> VerificationReport:
    report = _new_report(grid, "circular")
    _resolve_choice(report, _row_maps_circular(grid), _col_maps_circular(grid))
    _apply_waivers(report)
    return report


def exists_semicircular(grid: GroupGrid, block_side: int | None = None) -> VerificationReport:
    m = _resolve_block_side(grid, block_side)
    report = _new_report(grid, "semicircular")
    row_maps = _row_maps_semicircular(grid, m)
    col_maps = _col_maps_semicircular(grid, m)
    row_choice, col_choice = _resolve_choice(report, row_maps, col_maps)
    k = grid.k
    if row_choice is not None:
        halves = []
        for i, (a, b) in enumerate(report.chosen_row_starts):
            raw = _raw_cells(grid.row(i))
            left = _fold(raw, [(a + t) % m for t in range(m)], k)
            right = _fold(raw, [m + ((b - m + t) % m) for t in range(m)], k)
            halves.append([_key_token(left), _key_token(right)])
        report.half_row_products = halves
    if col_choice is not None:
        halves = []
        for j, (a, b) in enumerate(report.chosen_col_starts):
            raw = _raw_cells(grid.col(j))
            top = _fold(raw, [(a - t) % m for t in range(m)], k)
            bottom = _fold(raw, [m + ((b - m - t) % m) for t in range(m)], k)
            halves.append([_key_token(top), _key_token(bottom)])
        report.half_col_products = halves
    _apply_waivers(report)
    return report


def exists_arbitrary(grid: GroupGrid) -> VerificationReport:
    report = _new_report(grid, "arbitrary")
    row_lines = [_raw_cells(grid.row(i)) for i in range(grid.rows)]
    col_lines = [_raw_cells(grid.col(j)) for j in range(grid.cols)]
    row_maps = _maps_arbitrary(row_lines, grid.k)
    col_maps = _maps_arbitrary(col_lines, grid.k)
    _resolve_choice(report, row_maps, col_maps)
    _apply_waivers(report)
    return report


_ORDERINGS = {
    "linear": verify_linear,
    "circular": exists_circular,
    "arbitrary": exists_arbitrary,
}


def verify_rectangle(
    grid: GroupGrid,
    ordering: str,
    block_side: int | None = None,
) -> VerificationReport:
    """Verify under one ordering: linear, circular, semicircular, or arbitrary."""
    name = ordering.lower()
    if name == "any":
        name = "arbitrary"
    if name == "semicircular":
        return exists_semicircular(grid, block_side)
    try:
        operation = _ORDERINGS[name]
    except KeyError:
        raise ValueError(
            f"unknown ordering {ordering!r} (use linear, circular, semicircular, or arbitrary)"
        ) from None
    return operation(grid)
