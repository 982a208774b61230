"""Text and JSON formats for group-valued grids.

Text format: one header line, then one line of element tokens per row.

    dihedral k=32 rows=8 cols=8 block=4
    r^0 r^5 r^6 r^27 r^0.s r^29.s r^6.s r^7.s
    ...

``block=`` is present only when the grid carries a block shape.  Tokens are
strict: r^A for rotations, r^A.s for reflections, 0 <= A < k.

JSON format mirrors the same data with cells as {"e": exponent, "s": bool}:

    {"k": 32, "rows": 8, "cols": 8, "block": 4, "cells": [[{"e": 0, "s": false}, ...], ...]}
"""

from __future__ import annotations

import json

from .grids import GroupGrid
from .group import DihedralElement, parse_token


def serialize_square(grid: GroupGrid) -> str:
    header = f"dihedral k={grid.k} rows={grid.rows} cols={grid.cols}"
    if grid.block_side is not None:
        header += f" block={grid.block_side}"
    lines = [header]
    for row in grid.cells:
        lines.append(" ".join(cell.token() for cell in row))
    return "\n".join(lines) + "\n"


def _parse_header_field(part: str, name: str, header: str) -> int:
    prefix = name + "="
    if not part.startswith(prefix):
        raise ValueError(f"bad grid header {header!r}: expected {name}=<int>, found {part!r}")
    try:
        value = int(part[len(prefix):])
    except ValueError:
        raise ValueError(f"bad grid header {header!r}: {part!r} is not an integer field") from None
    if value < 1:
        raise ValueError(f"bad grid header {header!r}: {name} must be positive")
    return value


def parse_square(text: str) -> GroupGrid:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty grid document")
    header = lines[0]
    parts = header.split()
    if parts[0] != "dihedral" or len(parts) not in (4, 5):
        raise ValueError(
            f"bad grid header {header!r}: expected "
            "'dihedral k=<k> rows=<r> cols=<c> [block=<m>]'"
        )
    k = _parse_header_field(parts[1], "k", header)
    rows = _parse_header_field(parts[2], "rows", header)
    cols = _parse_header_field(parts[3], "cols", header)
    block = _parse_header_field(parts[4], "block", header) if len(parts) == 5 else None

    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows of cells, found {len(body)}")
    cells: list[list[DihedralElement]] = []
    for i, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != cols:
            raise ValueError(f"row {i + 1} has {len(tokens)} cells, expected {cols}")
        row = []
        for j, token in enumerate(tokens):
            try:
                row.append(parse_token(token, k))
            except ValueError as error:
                raise ValueError(f"cell ({i + 1},{j + 1}): {error}") from None
        cells.append(row)
    return GroupGrid.from_lists(k, cells, block)


def square_to_json(grid: GroupGrid) -> str:
    data: dict = {"k": grid.k, "rows": grid.rows, "cols": grid.cols}
    if grid.block_side is not None:
        data["block"] = grid.block_side
    data["cells"] = [
        [{"e": cell.exponent, "s": cell.reflected} for cell in row] for row in grid.cells
    ]
    return json.dumps(data, indent=2)


def square_from_json(text: str) -> GroupGrid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise ValueError(f"bad grid JSON: {error}") from None
    if not isinstance(data, dict):
        raise ValueError("bad grid JSON: top level must be an object")
    for field in ("k", "rows", "cols"):
        if not isinstance(data.get(field), int) or data[field] < 1:
            raise ValueError(f"bad grid JSON: {field!r} must be a positive integer")
    k = data["k"]
    rows = data["rows"]
    cols = data["cols"]
    block = data.get("block")
    if block is not None and (not isinstance(block, int) or block < 1):
        raise ValueError("bad grid JSON: 'block' must be a positive integer when present")
    cell_rows = data.get("cells")
    if not isinstance(cell_rows, list) or len(cell_rows) != rows:
        raise ValueError(f"bad grid JSON: 'cells' must be a list of {rows} rows")
    cells: list[list[DihedralElement]] = []
    for i, cell_row in enumerate(cell_rows):
        if not isinstance(cell_row, list) or len(cell_row) != cols:
            raise ValueError(f"bad grid JSON: row {i + 1} must be a list of {cols} cells")
        row = []
        for j, cell in enumerate(cell_row):
            if (
                not isinstance(cell, dict)
                or not isinstance(cell.get("e"), int)
                or not isinstance(cell.get("s"), bool)
            ):
                raise ValueError(
                    f"bad grid JSON: cell ({i + 1},{j + 1}) must be "
                    '{"e": <int>, "s": <bool>}'
                )
            exponent = cell["e"]
            if not 0 <= exponent < k:
                raise ValueError(
                    f"bad grid JSON: cell ({i + 1},{j + 1}) exponent {exponent} "
                    f"outside 0..{k - 1}"
                )
            row.append(DihedralElement(exponent, cell["s"], k))
        cells.append(row)
    return GroupGrid.from_lists(k, cells, block)
