"""Brute-force evidence for small existence and nonexistence claims.

Every search returns a SearchOutcome whose kind is one of

* ``found``                   — a witness grid is attached, re-verified by the
                                ordering-aware verifier;
* ``exhausted_nonexistence``  — the full configuration space was enumerated
                                (with only sound pruning) and nothing passed;
* ``budget_exhausted``        — the search stopped early: either the node
                                budget ran out, or only a restricted subspace
                                was covered, so nothing is concluded.

Outcomes serialize to a JSON certificate recording the claim, the space
size, how many configurations were examined, the seed, and the witness with
its verification report when one exists.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial, gcd
from typing import Callable, Sequence

from .construct import build, expected_constant
from .grids import GroupGrid
from .group import enumerate_elements
from .verify import (
    VerificationReport,
    exists_semicircular,
    verify_linear,
    verify_rectangle,
)

Raw = tuple[int, bool]

FOUND = "found"
EXHAUSTED = "exhausted_nonexistence"
BUDGET = "budget_exhausted"


@dataclass
class SearchOutcome:
    """Result of one search, with enough detail to stand as a certificate."""

    kind: str
    claim: str
    configurations: int
    space_size: int | None = None
    seed: int | None = None
    witness: GroupGrid | None = None
    witness_tokens: list[list[str]] | None = None
    report: VerificationReport | None = None
    detail: str = ""
    best_partial: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.kind == FOUND

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "claim": self.claim,
            "configurations": self.configurations,
            "space_size": self.space_size,
            "seed": self.seed,
            "witness": self.witness_tokens,
            "report": self.report.to_dict() if self.report is not None else None,
            "detail": self.detail,
            "best_partial": self.best_partial,
            "extra": self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _fold_raw(raw: Sequence[Raw], order: Sequence[int], k: int) -> tuple[bool, int]:
    exponent = 0
    reflected = False
    for index in order:
        x, t = raw[index]
        exponent = exponent - x if reflected else exponent + x
        reflected = reflected != t
    return (reflected, exponent % k)


def _arbitrary_line_set(raw: Sequence[Raw], k: int) -> frozenset:
    """Products reachable by multiplying the line's cells in any order."""
    return frozenset(_fold_raw(raw, perm, k) for perm in permutations(range(len(raw))))


# ---------------------------------------------------------------------------
# Tiny groups for the exhaustive 1x1 / 2x2 squares
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _TinyGroup:
    name: str
    label: str
    tokens: tuple[str, ...]
    multiply: Callable[[int, int], int]


def _klein_multiply(a: int, b: int) -> int:
    # Elements of D_2 indexed r^0, r^1, r^0.s, r^1.s; the group is abelian.
    ea, sa = a % 2, a // 2
    eb, sb = b % 2, b // 2
    return ((ea + eb) % 2) + 2 * ((sa + sb) % 2)


_TINY_GROUPS = {
    "d2": _TinyGroup(
        "d2",
        "the Klein four-group D_2",
        ("r^0", "r^1", "r^0.s", "r^1.s"),
        _klein_multiply,
    ),
    "c4": _TinyGroup(
        "c4",
        "the cyclic group C_4",
        ("g^0", "g^1", "g^2", "g^3"),
        lambda a, b: (a + b) % 4,
    ),
    "trivial": _TinyGroup("trivial", "the trivial group", ("e",), lambda a, b: 0),
}


def small_square_search(side: int, group_name: str) -> SearchOutcome:
    """Exhaust all placements of a tiny group's elements into a side x side grid.

    The grid must hold every element exactly once (side^2 = group order), and a
    placement passes if some common constant is reachable by every row and
    every column under any per-line ordering.
    """
    try:
        group = _TINY_GROUPS[group_name]
    except KeyError:
        raise ValueError(
            f"unknown group {group_name!r} (use d2, c4, or trivial)"
        ) from None
    order = len(group.tokens)
    if side * side != order:
        raise ValueError(
            f"a {side} x {side} grid has {side * side} cells but {group.label} "
            f"has {order} elements"
        )
    claim = f"a {side} x {side} semi-magic square over {group.label}"

    def line_set(indices: Sequence[int]) -> frozenset:
        results = set()
        for perm in permutations(indices):
            acc = perm[0]
            for index in perm[1:]:
                acc = group.multiply(acc, index)
            results.add(acc)
        return frozenset(results)

    configurations = 0
    space = factorial(order)
    for placement in permutations(range(order)):
        configurations += 1
        cells = [
            placement[i * side : (i + 1) * side] for i in range(side)
        ]
        lines = [cells[i] for i in range(side)]
        lines += [tuple(cells[i][j] for i in range(side)) for j in range(side)]
        common: frozenset | None = None
        for line in lines:
            reachable = line_set(line)
            common = reachable if common is None else (common & reachable)
            if not common:
                break
        if common:
            tokens = [[group.tokens[index] for index in row] for row in cells]
            return SearchOutcome(
                kind=FOUND,
                claim=claim,
                configurations=configurations,
                space_size=space,
                witness_tokens=tokens,
                detail=(
                    f"placement {configurations} of {space} admits the common "
                    f"line constant {group.tokens[sorted(common)[0]]}"
                ),
            )
    return SearchOutcome(
        kind=EXHAUSTED,
        claim=claim,
        configurations=configurations,
        space_size=space,
        detail=(
            f"all {configurations} placements of the {order} elements fail under "
            "every per-line ordering"
        ),
    )


def sms2_nonexistence(group: str = "d2") -> SearchOutcome:
    """Exhaustive certificate that no 2 x 2 semi-magic square exists."""
    if group not in ("d2", "c4"):
        raise ValueError(f"2 x 2 grids cover the order-4 groups d2 and c4, not {group!r}")
    outcome = small_square_search(2, group)
    if outcome.kind == EXHAUSTED:
        outcome.detail += (
            "; in an abelian order-4 group equal row and column products force "
            "two distinct cells to coincide"
        )
    return outcome


# ---------------------------------------------------------------------------
# Magic rectangles over D_k by depth-first placement
# ---------------------------------------------------------------------------


def rectangle_search(
    rows: int,
    cols: int,
    k: int,
    budget: int | None = None,
) -> SearchOutcome:
    """Search for a rows x cols grid using every element of D_k exactly once
    whose rows share a product constant and columns share a product constant,
    each line multiplied in some order (length-1 lines waive their side).

    Placement is depth-first in row-major order with elements tried in
    canonical order, so the first witness found is the lexicographically
    smallest.  Pruning is sound (completed-line constant intersections), so
    exhausting the space certifies nonexistence.
    """
    if rows < 1 or cols < 1 or k < 1:
        raise ValueError("rows, cols, and k must be positive")
    if rows * cols != 2 * k:
        raise ValueError(
            f"a {rows} x {cols} grid has {rows * cols} cells but D_{k} has {2 * k} elements"
        )
    if cols > 8 or rows > 8:
        raise ValueError("rectangle search supports line lengths up to 8")
    if budget is None:
        budget = 1_000_000
    claim = f"a {rows} x {cols} magic rectangle over D_{k}"
    elements = enumerate_elements(k)
    raw = [(e.exponent, e.reflected) for e in elements]
    total = 2 * k
    space = factorial(total)

    prune_rows = not (cols == 1 and rows > 1)  # waive row condition for single-column grids
    prune_cols = not (rows == 1 and cols > 1)  # waive column condition for single-row grids

    grid_indices: list[list[int | None]] = [[None] * cols for _ in range(rows)]
    used = [False] * total
    configurations = 0
    best_depth = 0
    budget_hit = False
    witness: list[list[int]] | None = None

    row_common: list[frozenset] = []
    col_common: list[frozenset] = []

    def place(depth: int) -> bool:
        nonlocal configurations, best_depth, budget_hit, witness
        if depth == total:
            witness = [[grid_indices[i][j] for j in range(cols)] for i in range(rows)]
            return True
        i, j = divmod(depth, cols)
        for index in range(total):
            if used[index]:
                continue
            if configurations >= budget:
                budget_hit = True
                return False
            configurations += 1
            best_depth = max(best_depth, depth + 1)
            grid_indices[i][j] = index
            used[index] = True
            ok = True
            popped_row = popped_col = False
            if ok and prune_rows and j == cols - 1:
                line = [raw[grid_indices[i][c]] for c in range(cols)]
                reachable = _arbitrary_line_set(line, k)
                joined = reachable if not row_common else (row_common[-1] & reachable)
                if joined:
                    row_common.append(joined)
                    popped_row = True
                else:
                    ok = False
            if ok and prune_cols and i == rows - 1:
                line = [raw[grid_indices[r][j]] for r in range(rows)]
                reachable = _arbitrary_line_set(line, k)
                joined = reachable if not col_common else (col_common[-1] & reachable)
                if joined:
                    col_common.append(joined)
                    popped_col = True
                else:
                    ok = False
            if ok and place(depth + 1):
                return True
            if popped_row:
                row_common.pop()
            if popped_col:
                col_common.pop()
            grid_indices[i][j] = None
            used[index] = False
            if budget_hit:
                return False
        return False

    found = place(0)
    if found and witness is not None:
        cells = [[elements[index] for index in row] for row in witness]
        grid = GroupGrid.from_lists(k, cells)
        report = verify_rectangle(grid, "arbitrary")
        if not report.is_magic_rectangle:
            raise RuntimeError("search returned a witness the verifier rejects")
        return SearchOutcome(
            kind=FOUND,
            claim=claim,
            configurations=configurations,
            space_size=space,
            witness=grid,
            witness_tokens=[[cell.token() for cell in row] for row in grid.cells],
            report=report,
            detail="depth-first search found the lexicographically smallest witness",
        )
    if budget_hit:
        return SearchOutcome(
            kind=BUDGET,
            claim=claim,
            configurations=configurations,
            space_size=space,
            best_partial=best_depth,
            detail=(
                f"stopped after {configurations} placements "
                f"(budget {budget}); deepest partial filled {best_depth} of {total} cells"
            ),
        )
    return SearchOutcome(
        kind=EXHAUSTED,
        claim=claim,
        configurations=configurations,
        space_size=space,
        detail=(
            f"depth-first search with sound pruning exhausted the space after "
            f"{configurations} placements; no such rectangle exists"
        ),
    )


# ---------------------------------------------------------------------------
# Side-4 squares over D_8 (outside the block constructions)
# ---------------------------------------------------------------------------

_SMS4_CELL_ORDER = [
    (0, 0), (0, 1), (1, 0), (1, 1),
    (0, 2), (0, 3), (1, 2), (1, 3),
    (2, 0), (2, 1), (3, 0), (3, 1),
    (2, 2), (2, 3), (3, 2), (3, 3),
]

# Half-line cyclic orders for block side 2: each line splits into two halves
# (positions 0,1 and 2,3 along the line) read from either end.
_SMS4_LINE_ORDERS = [(a, 1 - a, b, 5 - b) for a in (0, 1) for b in (2, 3)]


def sms4_search(budget: int = 500_000, seed: int = 0) -> SearchOutcome:
    """Look for a 4 x 4 square over D_8 whose half-line cyclic products share
    one constant (the glued-block reading with block side 2).

    The search restricts itself to placements where every half-line holds an
    even number of reflections, so a fruitless run exhausts only that
    subspace and is reported as budget_exhausted, never as nonexistence.
    """
    k = 8
    claim = "a 4 x 4 semi-magic square over D_8"
    elements = enumerate_elements(k)
    raw = [(e.exponent, e.reflected) for e in elements]
    total = len(elements)

    rng = random.Random(seed)
    candidate_order = list(range(total))
    rng.shuffle(candidate_order)

    position = {cell: idx for idx, cell in enumerate(_SMS4_CELL_ORDER)}

    def half_partner_row(i: int, j: int) -> tuple[int, int]:
        return (i, 1 - j) if j < 2 else (i, 5 - j)

    def half_partner_col(i: int, j: int) -> tuple[int, int]:
        return (1 - i, j) if i < 2 else (5 - i, j)

    lines: list[list[tuple[int, int]]] = []
    for i in range(4):
        lines.append([(i, j) for j in range(4)])
    for j in range(4):
        lines.append([(i, j) for i in range(4)])
    completes: dict[int, list[int]] = {}
    for line_index, line in enumerate(lines):
        last = max(position[cell] for cell in line)
        completes.setdefault(last, []).append(line_index)

    grid: list[list[int | None]] = [[None] * 4 for _ in range(4)]
    configurations = 0
    best_depth = 0
    budget_hit = False
    used = [False] * total

    def line_set(line_index: int) -> frozenset:
        cells = [raw[grid[i][j]] for (i, j) in lines[line_index]]
        return frozenset(_fold_raw(cells, order, k) for order in _SMS4_LINE_ORDERS)

    witness: list[list[int]] | None = None

    def place(depth: int, common: frozenset | None) -> bool:
        nonlocal configurations, best_depth, budget_hit, witness
        if depth == total:
            witness = [[grid[i][j] for j in range(4)] for i in range(4)]
            return True
        i, j = _SMS4_CELL_ORDER[depth]
        partners = []
        for partner in (half_partner_row(i, j), half_partner_col(i, j)):
            if position[partner] < depth:
                partners.append(raw[grid[partner[0]][partner[1]]][1])
        for index in candidate_order:
            if used[index]:
                continue
            if configurations >= budget:
                budget_hit = True
                return False
            reflected = raw[index][1]
            if any(parity != reflected for parity in partners):
                continue  # the half would hold exactly one reflection
            configurations += 1
            best_depth = max(best_depth, depth + 1)
            grid[i][j] = index
            used[index] = True
            next_common = common
            ok = True
            for line_index in completes.get(depth, ()):
                reachable = line_set(line_index)
                next_common = (
                    reachable if next_common is None else (next_common & reachable)
                )
                if not next_common:
                    ok = False
                    break
            if ok and place(depth + 1, next_common):
                return True
            grid[i][j] = None
            used[index] = False
            if budget_hit:
                return False
        return False

    found = place(0, None)
    if found and witness is not None:
        cells = [[elements[index] for index in row] for row in witness]
        square = GroupGrid.from_lists(k, cells, block_side=2)
        report = exists_semicircular(square, 2)
        if not report.is_semi_magic:
            raise RuntimeError("search returned a witness the verifier rejects")
        return SearchOutcome(
            kind=FOUND,
            claim=claim,
            configurations=configurations,
            seed=seed,
            witness=square,
            witness_tokens=[[cell.token() for cell in row] for row in square.cells],
            report=report,
            detail=(
                f"found after {configurations} placements with common constant "
                f"{report.magic_constant}"
            ),
            extra={"restriction": "every half-line holds an even number of reflections"},
        )
    if budget_hit:
        return SearchOutcome(
            kind=BUDGET,
            claim=claim,
            configurations=configurations,
            seed=seed,
            best_partial=best_depth,
            detail=(
                f"stopped after {configurations} placements (budget {budget}); "
                f"deepest partial filled {best_depth} of {total} cells"
            ),
            extra={"restriction": "every half-line holds an even number of reflections"},
        )
    return SearchOutcome(
        kind=BUDGET,
        claim=claim,
        configurations=configurations,
        seed=seed,
        best_partial=best_depth,
        detail=(
            "the reflection-parity-restricted subspace is exhausted without a "
            "witness; placements outside the restriction remain unexplored, so "
            "this is not a nonexistence certificate"
        ),
        extra={"restriction": "every half-line holds an even number of reflections"},
    )


# ---------------------------------------------------------------------------
# Row/column relabeling search for linear magic
# ---------------------------------------------------------------------------


def linear_ordering_search(
    grid: GroupGrid,
    budget: int = 100_000,
    seed: int = 0,
    mode: str = "auto",
) -> SearchOutcome:
    """Search row/column permutations of a grid for a linearly magic relabeling.

    Each configuration is a pair (row permutation, column permutation); the
    relabeled grid keeps its multiset of cells, so coverage is unaffected.
    Exhaustive enumeration starts from the identity pair, so an already
    linearly magic grid is found at configuration 1.  ``mode`` is ``auto``
    (exhaustive when the space fits the budget, else random), ``exhaustive``,
    or ``random``.
    """
    rows, cols = grid.rows, grid.cols
    claim = f"a row/column relabeling of the {rows} x {cols} grid that is linearly magic"
    space = factorial(rows) * factorial(cols)
    if mode not in ("auto", "exhaustive", "random"):
        raise ValueError(f"unknown mode {mode!r} (use auto, exhaustive, or random)")
    if mode == "exhaustive" and (rows > 8 or cols > 8):
        raise ValueError("exhaustive relabeling search supports sides up to 8")
    if mode == "auto":
        mode = "exhaustive" if (rows <= 8 and cols <= 8 and space <= budget) else "random"

    raw = [[(cell.exponent, cell.reflected) for cell in row] for row in grid.cells]
    k = grid.k

    def evaluate(row_perm: Sequence[int], col_perm: Sequence[int]) -> tuple[bool, int]:
        row_products = []
        for i in row_perm:
            exponent, reflected = 0, False
            for j in col_perm:
                x, t = raw[i][j]
                exponent = exponent - x if reflected else exponent + x
                reflected = reflected != t
            row_products.append((reflected, exponent % k))
        col_products = []
        for j in col_perm:
            exponent, reflected = 0, False
            for i in reversed(row_perm):
                x, t = raw[i][j]
                exponent = exponent - x if reflected else exponent + x
                reflected = reflected != t
            col_products.append((reflected, exponent % k))
        row_ok = len(set(row_products)) == 1 or (cols == 1 and rows > 1)
        col_ok = len(set(col_products)) == 1 or (rows == 1 and cols > 1)
        agreement = max(row_products.count(p) for p in row_products) + max(
            col_products.count(p) for p in col_products
        )
        return (row_ok and col_ok, agreement)

    def finish_found(
        row_perm: Sequence[int], col_perm: Sequence[int], configurations: int
    ) -> SearchOutcome:
        cells = [[grid.cells[i][j] for j in col_perm] for i in row_perm]
        relabeled = GroupGrid.from_lists(k, cells)
        report = verify_linear(relabeled)
        if not (report.row_ok and report.col_ok):
            raise RuntimeError("search returned a relabeling the verifier rejects")
        return SearchOutcome(
            kind=FOUND,
            claim=claim,
            configurations=configurations,
            space_size=space,
            seed=seed,
            witness=relabeled,
            witness_tokens=[[cell.token() for cell in row] for row in relabeled.cells],
            report=report,
            detail=f"configuration {configurations} is linearly magic",
            extra={"row_order": list(row_perm), "col_order": list(col_perm)},
        )

    configurations = 0
    best = 0
    if mode == "exhaustive":
        for row_perm in permutations(range(rows)):
            for col_perm in permutations(range(cols)):
                if configurations >= budget:
                    return SearchOutcome(
                        kind=BUDGET,
                        claim=claim,
                        configurations=configurations,
                        space_size=space,
                        seed=seed,
                        best_partial=best,
                        detail=(
                            f"stopped after {configurations} of {space} relabelings "
                            f"(budget {budget}); best agreement {best} of {rows + cols} lines"
                        ),
                    )
                configurations += 1
                ok, agreement = evaluate(row_perm, col_perm)
                best = max(best, agreement)
                if ok:
                    return finish_found(row_perm, col_perm, configurations)
        return SearchOutcome(
            kind=EXHAUSTED,
            claim=claim,
            configurations=configurations,
            space_size=space,
            seed=seed,
            best_partial=best,
            detail=(
                f"all {space} relabelings fail; best agreement {best} of "
                f"{rows + cols} lines"
            ),
        )

    rng = random.Random(seed)
    row_perm = list(range(rows))
    col_perm = list(range(cols))
    while configurations < budget:
        configurations += 1
        ok, agreement = evaluate(row_perm, col_perm)
        best = max(best, agreement)
        if ok:
            return finish_found(row_perm, col_perm, configurations)
        rng.shuffle(row_perm)
        rng.shuffle(col_perm)
    return SearchOutcome(
        kind=BUDGET,
        claim=claim,
        configurations=configurations,
        space_size=space,
        seed=seed,
        best_partial=best,
        detail=(
            f"random sampling of {configurations} relabelings found none; "
            f"best agreement {best} of {rows + cols} lines"
        ),
    )


# ---------------------------------------------------------------------------
# The spectrum of line constants the construction can realize
# ---------------------------------------------------------------------------


@dataclass
class Spectrum:
    """All line constants realizable by translating the base square."""

    m: int
    k: int
    step: int
    count: int
    constants: list[str]
    realizations: list[dict]
    dual: str | None = None
    dual_verified: bool | None = None

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "step": self.step,
            "count": self.count,
            "constants": self.constants,
            "realizations": self.realizations,
            "dual": self.dual,
            "dual_verified": self.dual_verified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def spectrum_enumerate(m: int, include_duals: bool = False) -> Spectrum:
    """Enumerate the constants realizable at block side m, and realize each.

    Translating the base square by x shifts its sum by m*x and the built
    square's constant by r^(4m*x), so the distinct constants form a cycle of
    length 2m^2 / gcd(4m, 2m^2).  Each one is realized by an actual build
    (which self-checks its line products).  With ``include_duals`` the
    off-parity constant is confirmed reachable by the start-pair search on
    the x = 0 square.
    """
    if m < 3:
        raise ValueError(f"the construction needs block side m >= 3, got {m}")
    k = 2 * m * m
    step = 4 * m
    count = k // gcd(step, k)

    first = build(m, 0)
    constants: list[str] = []
    realizations: list[dict] = []
    for x in range(count):
        construction = build(m, x) if x else first
        constants.append(construction.primary.token())
        realizations.append({"constant": construction.primary.token(), "x": x})
    if len(set(constants)) != count:
        raise RuntimeError("spectrum enumeration produced repeated constants")

    spectrum = Spectrum(m, k, step, count, constants, realizations)
    if include_duals:
        dual = expected_constant(m, first.base.constant).dual
        report = exists_semicircular(first.square)
        reachable = report.achievable_common_constants or []
        spectrum.dual = dual.token()
        spectrum.dual_verified = dual.token() in reachable
    return spectrum
