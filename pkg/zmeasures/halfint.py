"""
Half-integers: elements of Z + 1/2 stored as the odd integer 2k
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Union

from .errors import ParseError

_HALFINT_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*2\s*$")


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of Z + 1/2; the value is twice / 2"""

    twice: int

    def __post_init__(self):
        if self.twice % 2 == 0:
            raise ValueError(f"HalfInt needs an odd numerator, got {self.twice}")

    @classmethod
    def from_value(cls, value: Union[Fraction, float, str]) -> "HalfInt":
        """Build from 3/2, 1.5 or "3/2" """
        if isinstance(value, str):
            return parse_halfint(value)
        doubled = Fraction(value) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(doubled))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def up(self) -> int:
        """k + 1/2"""
        return (self.twice + 1) // 2

    @property
    def down(self) -> int:
        """k - 1/2"""
        return (self.twice - 1) // 2

    def shift(self, n: int) -> "HalfInt":
        return HalfInt(self.twice + 2 * n)

    def __add__(self, n: int) -> "HalfInt":
        if not isinstance(n, int):
            return NotImplemented
        return self.shift(n)

    def __sub__(self, other):
        # HalfInt - HalfInt is an integer distance, HalfInt - int is a HalfInt
        if isinstance(other, HalfInt):
            return (self.twice - other.twice) // 2
        if isinstance(other, int):
            return self.shift(-other)
        return NotImplemented

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __float__(self) -> float:
        return self.twice / 2

    def __str__(self) -> str:
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.twice}/2)"


def parse_halfint(text: str) -> HalfInt:
    """Parse the "p/2" textual form (p odd)"""
    match = _HALFINT_RE.match(text)
    if not match:
        raise ParseError(f"not a half-integer of the form p/2: {text!r}")
    twice = int(match.group(1))
    if twice % 2 == 0:
        raise ParseError(f"numerator must be odd: {text!r}")
    return HalfInt(twice)


def parse_halfint_list(text: str) -> List[HalfInt]:
    """Parse a comma-separated list of half-integers; empty text is the empty set"""
    text = text.strip()
    if not text or text == "-":
        return []
    return [parse_halfint(item) for item in text.split(",")]


def halfint_range(low: HalfInt, high: HalfInt) -> List[HalfInt]:
    """All half-integers low <= k <= high, ascending"""
    return [HalfInt(t) for t in range(low.twice, high.twice + 1, 2)]


def format_halfints(points: Iterable[HalfInt]) -> str:
    return ",".join(str(k) for k in points)


HALF = HalfInt(1)
MINUS_HALF = HalfInt(-1)
