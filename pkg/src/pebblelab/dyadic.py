"""Exact dyadic rationals ``num / 2**log2_den``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    num: int
    log2_den: int = 0

    def __post_init__(self):
        if self.log2_den < 0:
            raise ValueError("log2_den must be nonnegative")
        num, e = self.num, self.log2_den
        while e > 0 and num % 2 == 0:
            num //= 2
            e -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "log2_den", e)

    @classmethod
    def _coerce(cls, other) -> Dyadic:
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return cls(other)
        return NotImplemented

    def _aligned(self, other: Dyadic) -> tuple[int, int, int]:
        e = max(self.log2_den, other.log2_den)
        return self.num << (e - self.log2_den), other.num << (e - other.log2_den), e

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, e = self._aligned(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Dyadic(self.num * other.num, self.log2_den + other.log2_den)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.log2_den == other.log2_den

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, _ = self._aligned(other)
        return a < b

    def __hash__(self):
        return hash((self.num, self.log2_den))

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.log2_den)

    def to_json(self) -> dict:
        return {"num": self.num, "log2_den": self.log2_den}

    def __str__(self):
        return str(self.num) if self.log2_den == 0 else f"{self.num}/{1 << self.log2_den}"
