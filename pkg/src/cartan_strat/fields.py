"""Exact scalar fields: the rationals and prime fields GF(p).

Rationals are plain :class:`fractions.Fraction` values.  Prime-field scalars
are :class:`ModP` instances, which support the usual arithmetic operators and
mix freely with Python integers, so the linear algebra in this package can be
written once against ordinary operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


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


class ModP:
    """An element of the prime field GF(p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, ModP]


@dataclass(frozen=True)
class FieldSpec:
    """Base field of a presentation: ``QQ`` (characteristic 0) or ``GF(p)``."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError(f"field characteristic must be 0 or prime, got {self.characteristic}")

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime field"

    def __call__(self, value) -> Scalar:
        """Convert an int, Fraction or compatible scalar into this field."""
        if self.characteristic == 0:
            if isinstance(value, ModP):
                raise TypeError("cannot move a prime-field scalar into QQ")
            return Fraction(value)
        p = self.characteristic
        if isinstance(value, ModP):
            if value.p != p:
                raise ValueError(f"GF({value.p}) scalar used in GF({p})")
            return value
        value = Fraction(value)
        if value.denominator % p == 0:
            raise ZeroDivisionError(f"denominator {value.denominator} vanishes in GF({p})")
        return ModP(value.numerator * pow(value.denominator, -1, p), p)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text == "QQ":
            return cls(0)
        if text.startswith("GF(") and text.endswith(")"):
            return cls(int(text[3:-1]))
        raise ValueError(f"unknown field {text!r}; expected QQ or GF(<prime>)")


QQ = FieldSpec(0)
