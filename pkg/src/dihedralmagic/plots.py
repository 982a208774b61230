"""Figure rendering for grids and exponent squares (headless matplotlib)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .base_squares import IntMagicSquare  # noqa: E402
from .grids import GroupGrid  # noqa: E402
from .power_squares import PowerSquares  # noqa: E402

ROTATION_FILL = "#dce9f5"
REFLECTION_FILL = "#f9e0c7"


def _cell_label(exponent: int, reflected: bool) -> str:
    return f"$r^{{{exponent}}}s$" if reflected else f"$r^{{{exponent}}}$"


def square_figure(grid: GroupGrid, path: str) -> str:
    """Render a group-valued grid to an image file; returns the path.

    Rotation cells are tinted blue, reflection cells orange; when the grid
    carries a block shape the quadrant boundary is drawn heavier.
    """
    rows, cols = grid.rows, grid.cols
    fig, ax = plt.subplots(figsize=(max(3.0, 0.85 * cols), max(3.0, 0.85 * rows)))
    for i in range(rows):
        for j in range(cols):
            cell = grid.cells[i][j]
            fill = REFLECTION_FILL if cell.reflected else ROTATION_FILL
            ax.add_patch(
                plt.Rectangle((j, rows - 1 - i), 1, 1, facecolor=fill, edgecolor="#555555")
            )
            ax.text(
                j + 0.5,
                rows - 1 - i + 0.5,
                _cell_label(cell.exponent, cell.reflected),
                ha="center",
                va="center",
                fontsize=11,
            )
    if grid.block_side is not None:
        m = grid.block_side
        ax.plot([m, m], [0, rows], color="black", linewidth=2.0)
        ax.plot([0, cols], [rows - m, rows - m], color="black", linewidth=2.0)
    ax.set_xlim(0, cols)
    ax.set_ylim(0, rows)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(f"{rows} x {cols} grid over $D_{{{grid.k}}}$")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _int_panel(ax, entries, title: str, line_sum: int, modulus: int | None) -> None:
    side = len(entries)
    for i in range(side):
        for j in range(side):
            ax.add_patch(
                plt.Rectangle((j, side - 1 - i), 1, 1, facecolor="#f2f2f2", edgecolor="#555555")
            )
            ax.text(
                j + 0.5,
                side - 1 - i + 0.5,
                str(entries[i][j]),
                ha="center",
                va="center",
                fontsize=10,
            )
    ax.set_xlim(0, side)
    ax.set_ylim(0, side)
    ax.set_aspect("equal")
    ax.axis("off")
    if modulus is None:
        ax.set_title(f"{title}\nline sum {line_sum}", fontsize=10)
    else:
        ax.set_title(f"{title}\nline sum {line_sum} (mod {modulus})", fontsize=10)


def powers_figure(base: IntMagicSquare, squares: PowerSquares, path: str) -> str:
    """Render the base square beside its three exponent squares; returns the path."""
    fig, axes = plt.subplots(1, 4, figsize=(4 * max(2.6, 0.6 * base.side), max(3.0, 0.7 * base.side)))
    _int_panel(axes[0], base.entries, "base square", base.constant, None)
    _int_panel(axes[1], squares.even, "even exponents (2z)", squares.even_sum, squares.modulus)
    _int_panel(axes[2], squares.odd, "odd exponents (2z+1)", squares.odd_sum, squares.modulus)
    twist_rule = "-2z+1" if squares.m % 2 == 0 else f"-2z+{squares.m - 2}"
    _int_panel(
        axes[3], squares.twist, f"twist exponents ({twist_rule})", squares.twist_sum, squares.modulus
    )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
