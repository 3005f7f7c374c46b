"""
Scalar Fields

Exact scalar arithmetic. The rationals are the default ground field; prime
fields exist to speed up brute-force oracles.
"""

import re
from fractions import Fraction
from typing import Any, Union

import sympy

from errors import FieldError


class ModP:
    """Element of the prime field F_p, stored as a representative in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other: Any) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldError(f"cannot mix F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return ModP(other, self.p)
        if isinstance(other, Fraction):
            return ModP(other.numerator, self.p) / ModP(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value - other.value, self.p)

    def __rsub__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(other.value - self.value, self.p)

    def __mul__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ModP(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.value == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(self.value * pow(other.value, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other: Any) -> "ModP":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self) -> "ModP":
        return ModP(-self.value, self.p)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.p})"

    def __str__(self) -> str:
        return str(self.value)


Scalar = Union[Fraction, ModP]


class Field:
    """Common interface of the scalar fields."""

    name: str = ""
    characteristic: int = 0

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value: Any) -> Scalar:
        raise NotImplementedError

    def is_zero(self, value: Scalar) -> bool:
        return value == 0

    def to_text(self, value: Scalar) -> str:
        return str(value)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"Field({self.name})"


class RationalField(Field):
    """The rationals with exact Fraction arithmetic."""

    name = "Q"
    characteristic = 0

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, str)):
            try:
                return Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise FieldError(f"not a rational number: {value!r}")
        if isinstance(value, ModP):
            raise FieldError("cannot coerce a prime-field element into Q")
        if isinstance(value, sympy.Rational):
            return Fraction(int(value.p), int(value.q))
        raise FieldError(f"cannot coerce {value!r} into Q")


class PrimeField(Field):
    """The field with p elements."""

    def __init__(self, p: int):
        if not sympy.isprime(p):
            raise FieldError(f"field modulus must be prime, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def __call__(self, value: Any) -> ModP:
        if isinstance(value, ModP):
            if value.p != self.p:
                raise FieldError(f"cannot coerce F_{value.p} element into F_{self.p}")
            return value
        if isinstance(value, int):
            return ModP(value, self.p)
        if isinstance(value, str):
            value = RationalField()(value)
        if isinstance(value, sympy.Rational):
            value = Fraction(int(value.p), int(value.q))
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldError(f"denominator of {value} vanishes in F_{self.p}")
            return ModP(value.numerator, self.p) / ModP(value.denominator, self.p)
        raise FieldError(f"cannot coerce {value!r} into F_{self.p}")


QQ = RationalField()


def field_from_name(name: str, default_prime: int = 32003) -> Field:
    """
    Resolve a field name as used in input files and on the command line.

    Args:
        name: "Q", "Fp" (default prime), "F <p>" or "F<p>"
        default_prime: Prime used for "Fp"

    Returns:
        The field object
    """
    text = name.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text == "Fp":
        return PrimeField(default_prime)
    match = re.fullmatch(r"F\s*(\d+)", text)
    if match:
        return PrimeField(int(match.group(1)))
    raise FieldError(f"unknown field {name!r} (expected Q, Fp or F <prime>)")
