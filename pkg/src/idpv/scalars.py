"""Exact coefficient fields QQ and GF(p), and the binomial coefficients that
drive every higher-derivative formula.

Scalars are immutable value objects with structural equality; rational values
are kept as reduced ``Fraction``s, prime-field values as residues in [0, p).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CharDivisionError, NotAUnit, ParseError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: characteristic 0 means QQ, a prime p means GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    def scalar(self, value) -> "Scalar":
        """Coerce an int, Fraction or Scalar into this field."""
        if isinstance(value, Scalar):
            if value.field != self:
                raise ValueError("scalar from a different field")
            return value
        p = self.characteristic
        if p == 0:
            return Scalar(self, Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise CharDivisionError(f"denominator divisible by {p}")
            num = value.numerator % p
            den = value.denominator % p
            return Scalar(self, num * pow(den, -1, p) % p)
        return Scalar(self, int(value) % p)

    @property
    def zero(self) -> "Scalar":
        return self.scalar(0)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    def parse(self, text: str) -> "Scalar":
        """Parse the scalar syntax: optional sign, integer, optional '/denominator'."""
        m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?", text)
        if not m:
            raise ParseError(f"not a scalar: {text!r}")
        num = int(m.group(1))
        if m.group(2) is None:
            return self.scalar(num)
        den = int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        if self.characteristic == 0:
            return Scalar(self, Fraction(num, den))
        return self.scalar(Fraction(num, den))

    def __str__(self):
        c = self.characteristic
        return "QQ" if c == 0 else f"GF({c})"


@dataclass(frozen=True)
class Scalar:
    """An element of QQ or GF(p), always in canonical reduced form."""

    field: FieldSpec
    value: object  # Fraction in char 0, int residue in char p

    def _lift(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("mixed fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        p = self.field.characteristic
        v = self.value + o.value
        return Scalar(self.field, v % p if p else v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        p = self.field.characteristic
        v = self.value - o.value
        return Scalar(self.field, v % p if p else v)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        p = self.field.characteristic
        v = self.value * o.value
        return Scalar(self.field, v % p if p else v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __neg__(self):
        p = self.field.characteristic
        return Scalar(self.field, (-self.value) % p if p else -self.value)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        p = self.field.characteristic
        if p:
            return Scalar(self.field, pow(self.value, n, p))
        return Scalar(self.field, self.value ** n)

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise NotAUnit("inverse of zero")
        p = self.field.characteristic
        if p:
            return Scalar(self.field, pow(self.value, -1, p))
        return Scalar(self.field, 1 / self.value)

    def is_zero(self) -> bool:
        return self.value == 0

    def is_one(self) -> bool:
        return self.value == 1

    def zero(self) -> "Scalar":
        return self.field.zero

    def one(self) -> "Scalar":
        return self.field.one

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.field}, {self.value})"


def binomial(n: int, k: int, field: FieldSpec) -> Scalar:
    """C(n, k) in the field.

    In characteristic p the value is the product of digitwise binomials of n
    and k written in base p (Lucas); the factorial route is never taken, so
    the function is total.
    """
    if n < 0 or k < 0:
        raise ValueError("binomial wants natural arguments")
    if k > n:
        return field.zero
    p = field.characteristic
    if p == 0:
        return field.scalar(math.comb(n, k))
    acc = 1
    while n or k:
        nd, n = n % p, n // p
        kd, k = k % p, k // p
        if kd > nd:
            return field.zero
        acc = acc * math.comb(nd, kd) % p
    return field.scalar(acc)


def generalized_binomial(a: Scalar, n: int) -> Scalar:
    """Falling-factorial binomial a(a-1)...(a-n+1)/n! with field-valued a.

    Requires n! invertible: any n in characteristic zero, n < p otherwise.
    """
    if n < 0:
        raise ValueError("lower argument must be natural")
    field = a.field
    p = field.characteristic
    if p and n >= p:
        raise CharDivisionError(f"{n}! vanishes in characteristic {p}")
    num = field.one
    for i in range(n):
        num = num * (a - field.scalar(i))
    return num / field.scalar(math.factorial(n))
