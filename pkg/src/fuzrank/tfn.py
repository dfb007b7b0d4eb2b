"""Triangular fuzzy numbers and the linguistic rating scale built on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Fuzzy quantity (a, b, c): support [a, c], full membership at the peak b.

    A degenerate triplet a == b == c represents a crisp value.
    """

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        if not (self.a <= self.b <= self.c):
            raise ValueError(
                f"TFN components must satisfy a <= b <= c, got ({self.a}, {self.b}, {self.c})"
            )

    @classmethod
    def crisp(cls, value: float) -> "TriangularFuzzyNumber":
        return cls(value, value, value)

    @property
    def is_crisp(self) -> bool:
        return self.a == self.b == self.c

    def membership(self, x: float) -> float:
        """Degree to which x belongs to this fuzzy number, in [0, 1].

        Linear ramp up on [a, b], linear ramp down on [b, c], zero outside.
        A collapsed segment (b == a or c == b) contributes membership 1 at the
        shared point, the limit of the ramp.
        """
        if x < self.a or x > self.c:
            return 0.0
        if x == self.b:
            return 1.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a)
        return (self.c - x) / (self.c - self.b)

    def distance(self, other: "TriangularFuzzyNumber") -> float:
        """Vertex-method distance: sqrt of the mean squared component gap."""
        # hypot instead of sqrt-of-sum so tiny gaps do not underflow to 0
        return math.hypot(self.a - other.a, self.b - other.b, self.c - other.c) / math.sqrt(3.0)

    def __mul__(self, other: "TriangularFuzzyNumber") -> "TriangularFuzzyNumber":
        """Componentwise product. Defined for nonnegative operands only.

        With a negative component the componentwise triplet is not guaranteed
        to stay ordered, so such operands are rejected.
        """
        if not isinstance(other, TriangularFuzzyNumber):
            return NotImplemented
        if self.a < 0 or other.a < 0:
            raise ValueError(
                f"TFN multiplication requires nonnegative components, got {self} * {other}"
            )
        return TriangularFuzzyNumber(self.a * other.a, self.b * other.b, self.c * other.c)

    def scaled(self, factor: float) -> "TriangularFuzzyNumber":
        if factor < 0:
            raise ValueError("scaling factor must be nonnegative")
        return TriangularFuzzyNumber(self.a * factor, self.b * factor, self.c * factor)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    def __repr__(self) -> str:
        return f"TFN({self.a:g}, {self.b:g}, {self.c:g})"


TFN = TriangularFuzzyNumber


def membership(t: TriangularFuzzyNumber, x: float) -> float:
    return t.membership(x)


def distance(t1: TriangularFuzzyNumber, t2: TriangularFuzzyNumber) -> float:
    return t1.distance(t2)


def multiply(t1: TriangularFuzzyNumber, t2: TriangularFuzzyNumber) -> TriangularFuzzyNumber:
    return t1 * t2


class LinguisticScale:
    """Ordered mapping of rating labels (VL .. VH) to triangular fuzzy numbers."""

    def __init__(self, entries: Mapping[str, TriangularFuzzyNumber]):
        if not entries:
            raise ValueError("linguistic scale needs at least one entry")
        self._entries: dict[str, TriangularFuzzyNumber] = dict(entries)

    def __getitem__(self, label: str) -> TriangularFuzzyNumber:
        try:
            return self._entries[label]
        except KeyError:
            raise KeyError(
                f"unknown linguistic label {label!r}; valid labels: {', '.join(self.labels)}"
            ) from None

    def __contains__(self, label: str) -> bool:
        return label in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinguisticScale):
            return NotImplemented
        return self._entries == other._entries

    @property
    def labels(self) -> list[str]:
        return list(self._entries)

    def items(self) -> list[tuple[str, TriangularFuzzyNumber]]:
        return list(self._entries.items())

    def __repr__(self) -> str:
        body = ", ".join(f"{label}={tfn.as_tuple()}" for label, tfn in self._entries.items())
        return f"LinguisticScale({body})"


def default_scale() -> LinguisticScale:
    """Five-level rating scale: Very Low through Very High."""
    return LinguisticScale(
        {
            "VL": TFN(1, 1, 3),
            "L": TFN(1, 3, 5),
            "AV": TFN(3, 5, 7),
            "H": TFN(5, 7, 9),
            "VH": TFN(7, 9, 9),
        }
    )


def from_linguistic(scale: LinguisticScale, label: str) -> TriangularFuzzyNumber:
    return scale[label]
