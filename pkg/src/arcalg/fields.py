"""Exact scalar fields: the rationals and prime fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameters


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class Field:
    """``characteristic == 0`` means Q (Fraction scalars), otherwise GF(p) with int scalars."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic and not is_prime(self.characteristic):
            raise InvalidParameters(f"{self.characteristic} is not prime")

    @classmethod
    def parse(cls, text: str | int | None) -> "Field":
        if text in (None, "", "Q", "q", "rationals", 0, "0"):
            return cls(0)
        try:
            return cls(int(text))
        except ValueError:
            raise InvalidParameters(f"unknown field {text!r}; use 'Q' or a prime") from None

    def __call__(self, x):
        if self.characteristic:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.characteristic) % self.characteristic
            return int(x) % self.characteristic
        return Fraction(x)

    def inv(self, x):
        if self.characteristic:
            return pow(int(x), -1, self.characteristic)
        return 1 / Fraction(x)

    def __str__(self) -> str:
        return f"GF({self.characteristic})" if self.characteristic else "Q"


QQ = Field(0)
