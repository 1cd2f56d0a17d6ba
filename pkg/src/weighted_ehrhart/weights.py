from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidWeights


def check_pairwise_coprime(values: tuple[int, ...], names: str = "weights") -> None:
    for x in values:
        if x < 1:
            raise InvalidWeights(f"{names} must be positive integers, got {values}")
    for (i, x), (j, y) in combinations(enumerate(values), 2):
        g = math.gcd(x, y)
        if g != 1:
            raise InvalidWeights(
                f"{names} must be pairwise coprime: entries {i} and {j} ({x}, {y}) share factor {g}"
            )


@dataclass(frozen=True)
class WeightVector:
    """Pairwise coprime positive weights (w0, w1, w2) of a weighted projective plane."""

    w0: int
    w1: int
    w2: int

    def __post_init__(self) -> None:
        check_pairwise_coprime((self.w0, self.w1, self.w2))

    @classmethod
    def parse(cls, text: str) -> WeightVector:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise InvalidWeights(f"expected three comma-separated weights, got {text!r}")
        try:
            values = [int(p) for p in parts]
        except ValueError:
            raise InvalidWeights(f"weights must be integers, got {text!r}") from None
        return cls(*values)

    def __iter__(self):
        return iter((self.w0, self.w1, self.w2))

    def __getitem__(self, i: int) -> int:
        return (self.w0, self.w1, self.w2)[i % 3]

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.w0, self.w1, self.w2)

    @property
    def product(self) -> int:
        """w-bar = w0 * w1 * w2; the period of the Ehrhart quasi-polynomial."""
        return self.w0 * self.w1 * self.w2

    @property
    def total(self) -> int:
        """|w| = w0 + w1 + w2."""
        return self.w0 + self.w1 + self.w2

    def __str__(self) -> str:
        return f"{self.w0},{self.w1},{self.w2}"
