"""Exact coefficient fields: the rationals and prime fields F_p."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import NotPrime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A field given by its characteristic; 0 means the rationals."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise NotPrime(f"{self.characteristic} is not prime")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(int(p))

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def element(self, value):
        """Coerce an int, Fraction or 'a/b' string into a canonical field element.

        Rationals become ``int`` when integral and ``Fraction`` otherwise; prime
        field elements are ints in ``range(p)``.
        """
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, float):
            raise TypeError("floating point values are not field elements")
        q = Fraction(value)
        if self.is_rational:
            return q.numerator if q.denominator == 1 else q
        p = self.characteristic
        if q.denominator % p == 0:
            raise ZeroDivisionError(f"{value} has no image in F_{p}")
        return q.numerator * pow(q.denominator, -1, p) % p

    def __str__(self):
        return "QQ" if self.is_rational else f"GF({self.characteristic})"
