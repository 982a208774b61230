"""Immutable rectangular grids of dihedral-group elements.

A GroupGrid is the common carrier for everything the verifier and searcher
touch: full squares, glued 2x2 block layouts, and non-square rectangles.
When the grid came from a block construction, ``block_side`` records the side
of each quadrant so half-line products can be split in the right place.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .group import DihedralElement


@dataclass(frozen=True)
class GroupGrid:
    """A rows x cols matrix over D_k, optionally carrying a 2x2 block shape."""

    k: int
    cells: tuple[tuple[DihedralElement, ...], ...]
    block_side: int | None = None

    def __post_init__(self) -> None:
        if not self.cells or not self.cells[0]:
            raise ValueError("grid must have at least one row and one column")
        width = len(self.cells[0])
        for i, row in enumerate(self.cells):
            if len(row) != width:
                raise ValueError(
                    f"ragged grid: row 0 has {width} cells but row {i} has {len(row)}"
                )
            for j, cell in enumerate(row):
                if cell.k != self.k:
                    raise ValueError(
                        f"cell ({i + 1},{j + 1}) lives in D_{cell.k}, grid is over D_{self.k}"
                    )
        if self.block_side is not None:
            side = self.block_side
            if side < 1:
                raise ValueError(f"block side must be positive, got {side}")
            if self.rows != 2 * side or self.cols != 2 * side:
                raise ValueError(
                    f"block side {side} needs a {2 * side}x{2 * side} grid, "
                    f"got {self.rows}x{self.cols}"
                )

    @property
    def rows(self) -> int:
        return len(self.cells)

    @property
    def cols(self) -> int:
        return len(self.cells[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def side(self) -> int:
        if not self.is_square:
            raise ValueError(f"grid is {self.rows}x{self.cols}, not square")
        return self.rows

    def row(self, i: int) -> tuple[DihedralElement, ...]:
        return self.cells[i]

    def col(self, j: int) -> tuple[DihedralElement, ...]:
        return tuple(row[j] for row in self.cells)

    @staticmethod
    def from_lists(
        k: int,
        rows: Iterable[Sequence[DihedralElement]],
        block_side: int | None = None,
    ) -> "GroupGrid":
        return GroupGrid(k, tuple(tuple(row) for row in rows), block_side)
