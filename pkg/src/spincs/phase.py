"""Exact unit-circle phases exp(2*pi*i*angle) with rational angle mod 1."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_NAMED = {
    Fraction(0): "1",
    Fraction(1, 2): "-1",
    Fraction(1, 4): "i",
    Fraction(3, 4): "-i",
}


@dataclass(frozen=True)
class Phase:
    angle: Fraction = Fraction(0)

    def __post_init__(self):
        a = Fraction(self.angle) % 1
        object.__setattr__(self, "angle", a)

    @classmethod
    def one(cls) -> "Phase":
        return cls(Fraction(0))

    @classmethod
    def sign(cls, bit: int) -> "Phase":
        """(-1)**bit."""
        return cls(Fraction(bit % 2, 2))

    @classmethod
    def z4(cls, k: int) -> "Phase":
        """i**k."""
        return cls(Fraction(k % 4, 4))

    @classmethod
    def parse(cls, text) -> "Phase":
        if isinstance(text, Phase):
            return text
        if isinstance(text, (int, Fraction)):
            return cls(Fraction(text))
        s = str(text).strip()
        for angle, name in _NAMED.items():
            if s == name:
                return cls(angle)
        return cls(Fraction(s))

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.angle + other.angle)

    def __truediv__(self, other: "Phase") -> "Phase":
        return Phase(self.angle - other.angle)

    def __pow__(self, n: int) -> "Phase":
        return Phase(self.angle * n)

    def inverse(self) -> "Phase":
        return Phase(-self.angle)

    @property
    def is_one(self) -> bool:
        return self.angle == 0

    def as_sign(self) -> int:
        """Return +1 or -1; raise if the phase is not real."""
        if self.angle == 0:
            return 1
        if self.angle == Fraction(1, 2):
            return -1
        raise ValueError(f"phase {self} is not +-1")

    def z4_value(self) -> int:
        if (self.angle * 4).denominator != 1:
            raise ValueError(f"phase {self} is not a 4th root of unity")
        return int(self.angle * 4)

    def render(self) -> str:
        if self.angle in _NAMED:
            return _NAMED[self.angle]
        return f"exp(2pi*i*{self.angle})"

    def __str__(self):
        return self.render()
