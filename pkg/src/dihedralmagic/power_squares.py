"""Exponent squares carved from a classical magic square.

From a (possibly translated) classical magic square with entries z and common
sum mu, three integer squares over Z_{2m^2} are derived cellwise:

    even:  2z            -- even residues, rows/cols sum to 2*mu
    odd:   2z + 1        -- odd residues, rows/cols sum to 2*mu + m
    twist: -2z + 1       (m even)   rows/cols sum to -2*mu + m
           -2z + m - 2   (m odd)    rows/cols sum to -2*mu + m^2 - 2m

(all modulo 2m^2).  The even and odd squares together cover every residue
exactly once; the twist square revisits the odd residues (m even) or the even
residues shifted into reflection slots (m odd) in the order the block
construction needs.  These three squares supply all rotation amounts and
reflection axes used by the group-valued blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .base_squares import IntMagicSquare, verify_classic

Rows = tuple[tuple[int, ...], ...]

_KIND_ATTRS = {"E": "even", "O": "odd", "T": "twist"}


@dataclass(frozen=True)
class PowerSquares:
    """The three exponent squares for one base square, plus their line sums."""

    m: int
    modulus: int
    base: IntMagicSquare
    even: Rows
    odd: Rows
    twist: Rows
    even_sum: int
    odd_sum: int
    twist_sum: int

    def by_kind(self, kind: str) -> Rows:
        try:
            return getattr(self, _KIND_ATTRS[kind])
        except KeyError:
            raise ValueError(f"unknown exponent-square kind {kind!r} (use E, O, or T)") from None

    def sum_by_kind(self, kind: str) -> int:
        try:
            return getattr(self, _KIND_ATTRS[kind] + "_sum")
        except KeyError:
            raise ValueError(f"unknown exponent-square kind {kind!r} (use E, O, or T)") from None


@dataclass(frozen=True)
class PowerCheck:
    ok: bool
    failures: tuple[str, ...]


@dataclass(frozen=True)
class PowerSquareDoc:
    """One serialized exponent square, as parsed back from text."""

    m: int
    modulus: int
    kind: str
    entries: Rows


def expected_sums(m: int, mu: int) -> tuple[int, int, int]:
    """Closed-form (even, odd, twist) line sums modulo 2m^2."""
    modulus = 2 * m * m
    even = (2 * mu) % modulus
    odd = (2 * mu + m) % modulus
    if m % 2 == 0:
        twist = (-2 * mu + m) % modulus
    else:
        twist = (-2 * mu + m * m - 2 * m) % modulus
    return even, odd, twist


def build_power_squares(base: IntMagicSquare) -> PowerSquares:
    """Derive the three exponent squares; the base must verify as magic."""
    m = base.side
    offset = min(value for row in base.entries for value in row) - 1
    check = verify_classic(base, offset)
    if not check.ok:
        raise ValueError(f"base square is not magic: {check.failures[0]}")

    modulus = 2 * m * m
    even = tuple(tuple((2 * z) % modulus for z in row) for row in base.entries)
    odd = tuple(tuple((2 * z + 1) % modulus for z in row) for row in base.entries)
    if m % 2 == 0:
        twist = tuple(tuple((-2 * z + 1) % modulus for z in row) for row in base.entries)
    else:
        twist = tuple(tuple((-2 * z + m - 2) % modulus for z in row) for row in base.entries)

    even_sum, odd_sum, twist_sum = expected_sums(m, base.constant)
    return PowerSquares(m, modulus, base, even, odd, twist, even_sum, odd_sum, twist_sum)


def check_sums(squares: PowerSquares) -> PowerCheck:
    """Recompute every row and column sum of all three exponent squares."""
    failures: list[str] = []
    m = squares.m
    for kind, label in (("E", "even"), ("O", "odd"), ("T", "twist")):
        rows = squares.by_kind(kind)
        expected = squares.sum_by_kind(kind)
        for i in range(m):
            total = sum(rows[i]) % squares.modulus
            if total != expected:
                failures.append(f"{label} square row {i + 1} sums to {total}, expected {expected}")
        for j in range(m):
            total = sum(rows[i][j] for i in range(m)) % squares.modulus
            if total != expected:
                failures.append(
                    f"{label} square column {j + 1} sums to {total}, expected {expected}"
                )
    return PowerCheck(not failures, tuple(failures))


def serialize_power_square(squares: PowerSquares, kind: str) -> str:
    rows = squares.by_kind(kind)
    lines = [f"powersquare m={squares.m} modulus={squares.modulus} kind={kind}"]
    for row in rows:
        lines.append(" ".join(str(value) for value in row))
    return "\n".join(lines) + "\n"


def parse_power_square(text: str) -> PowerSquareDoc:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty exponent-square document")
    parts = lines[0].split()
    if (
        len(parts) != 4
        or parts[0] != "powersquare"
        or not parts[1].startswith("m=")
        or not parts[2].startswith("modulus=")
        or not parts[3].startswith("kind=")
    ):
        raise ValueError(f"bad exponent-square header {lines[0]!r}")
    try:
        m = int(parts[1][2:])
        modulus = int(parts[2][8:])
    except ValueError:
        raise ValueError(f"bad numbers in header {lines[0]!r}") from None
    kind = parts[3][5:]
    if kind not in _KIND_ATTRS:
        raise ValueError(f"unknown exponent-square kind {kind!r} (use E, O, or T)")
    if modulus != 2 * m * m:
        raise ValueError(f"modulus {modulus} does not match side {m} (expected {2 * m * m})")
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"expected {m} rows, found {len(body)}")
    entries: list[tuple[int, ...]] = []
    for i, line in enumerate(body):
        cells = line.split()
        if len(cells) != m:
            raise ValueError(f"row {i + 1} has {len(cells)} entries, expected {m}")
        try:
            values = tuple(int(cell) for cell in cells)
        except ValueError:
            raise ValueError(f"row {i + 1} contains a non-integer entry") from None
        for value in values:
            if not 0 <= value < modulus:
                raise ValueError(f"row {i + 1} entry {value} outside 0..{modulus - 1}")
        entries.append(values)
    return PowerSquareDoc(m, modulus, kind, tuple(entries))
