"""Exact arithmetic in dihedral groups.

D_k is the group of order 2k generated by a rotation r (order k) and a
reflection s (order 2) with s*r^i*s = r^-i.  Every element is written
canonically as r^a or r^a*s with 0 <= a < k, so multiplication reduces to
integer arithmetic on exponents modulo k:

    (r^x)   * (r^y)   = r^(x+y)        (r^x)   * (r^y*s) = r^(x+y)*s
    (r^x*s) * (r^y)   = r^(x-y)*s      (r^x*s) * (r^y*s) = r^(x-y)

k = 1 and k = 2 are admitted so the order-4 groups needed by the tiny
exhaustive searches are expressible; k = 2 gives the Klein four-group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

_TOKEN_RE = re.compile(r"r\^(0|[1-9][0-9]*)(\.s)?\Z")


@dataclass(frozen=True)
class DihedralElement:
    """One element of D_k in canonical form: r^exponent, optionally times s."""

    exponent: int
    reflected: bool
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"group parameter k must be >= 1, got {self.k}")
        object.__setattr__(self, "exponent", self.exponent % self.k)

    @property
    def is_rotation(self) -> bool:
        return not self.reflected

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        if not isinstance(other, DihedralElement):
            return NotImplemented
        if self.k != other.k:
            raise ValueError(f"cannot multiply elements of D_{self.k} and D_{other.k}")
        if self.reflected:
            exponent = self.exponent - other.exponent
        else:
            exponent = self.exponent + other.exponent
        return DihedralElement(exponent, self.reflected != other.reflected, self.k)

    def inverse(self) -> "DihedralElement":
        # Reflections are involutions; the inverse of r^a is r^(k-a).
        if self.reflected:
            return self
        return DihedralElement(-self.exponent, False, self.k)

    def sort_key(self) -> tuple[bool, int]:
        """Canonical order: rotations before reflections, then by exponent."""
        return (self.reflected, self.exponent)

    def token(self) -> str:
        return f"r^{self.exponent}.s" if self.reflected else f"r^{self.exponent}"

    def __str__(self) -> str:
        return self.token()


def rotation(exponent: int, k: int) -> DihedralElement:
    return DihedralElement(exponent, False, k)


def reflection(exponent: int, k: int) -> DihedralElement:
    return DihedralElement(exponent, True, k)


def identity(k: int) -> DihedralElement:
    return DihedralElement(0, False, k)


def parse_token(text: str, k: int) -> DihedralElement:
    """Parse a strict element token: r^A for rotations, r^A.s for reflections.

    The exponent must already be reduced (0 <= A < k); no whitespace or sign
    is accepted inside a token.
    """
    match = _TOKEN_RE.match(text)
    if match is None:
        raise ValueError(f"bad element token {text!r} (expected r^A or r^A.s)")
    exponent = int(match.group(1))
    if exponent >= k:
        raise ValueError(f"exponent {exponent} out of range for D_{k} (need 0..{k - 1})")
    return DihedralElement(exponent, match.group(2) is not None, k)


def enumerate_elements(k: int) -> list[DihedralElement]:
    """All 2k elements: rotations by ascending exponent, then reflections."""
    if k < 1:
        raise ValueError(f"group parameter k must be >= 1, got {k}")
    rotations = [DihedralElement(a, False, k) for a in range(k)]
    reflections = [DihedralElement(a, True, k) for a in range(k)]
    return rotations + reflections


def sequence_product(elements: Iterable[DihedralElement]) -> DihedralElement:
    """Product of a sequence in written order, folded left to right."""
    iterator = iter(elements)
    try:
        acc = next(iterator)
    except StopIteration:
        raise ValueError("cannot take the product of an empty sequence") from None
    for element in iterator:
        acc = acc * element
    return acc
