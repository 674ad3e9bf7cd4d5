"""Exact arithmetic in the cyclotomic field Q(q), q = exp(2 pi i / 3).

Elements are stored in the basis {1, q} as ``a + b*q`` with ``a`` and ``b``
reduced rationals (:class:`fractions.Fraction`).  Multiplication uses
``q**2 = -1 - q``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "EisensteinRational",
    "Q",
    "ZERO",
    "ONE",
    "as_eis",
    "eis_mul",
    "eis_inv",
    "eis_conj",
    "eis_norm",
    "parse_eis",
]

Scalar = Union[int, Fraction, "EisensteinRational"]


class EisensteinRational:
    """An element ``a + b*q`` of Q(q) with q**2 + q + 1 = 0."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational | int = 0, b: Rational | int = 0) -> None:
        self.a = a if type(a) is Fraction else Fraction(a)
        self.b = b if type(b) is Fraction else Fraction(b)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction) -> EisensteinRational:
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        return obj

    # -- predicates -----------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return not self.b

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, EisensteinRational):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    # -- ring operations ------------------------------------------------------
    def __add__(self, other: Scalar) -> EisensteinRational:
        if isinstance(other, EisensteinRational):
            return EisensteinRational._raw(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return EisensteinRational._raw(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> EisensteinRational:
        return EisensteinRational._raw(-self.a, -self.b)

    def __pos__(self) -> EisensteinRational:
        return self

    def __sub__(self, other: Scalar) -> EisensteinRational:
        if isinstance(other, EisensteinRational):
            return EisensteinRational._raw(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return EisensteinRational._raw(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other: Scalar) -> EisensteinRational:
        if isinstance(other, (int, Fraction)):
            return EisensteinRational._raw(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other: Scalar) -> EisensteinRational:
        if isinstance(other, EisensteinRational):
            a1, b1, a2, b2 = self.a, self.b, other.a, other.b
            if not b2:
                return EisensteinRational._raw(a1 * a2, b1 * a2)
            if not b1:
                return EisensteinRational._raw(a1 * a2, a1 * b2)
            bb = b1 * b2
            return EisensteinRational._raw(a1 * a2 - bb, a1 * b2 + a2 * b1 - bb)
        if isinstance(other, (int, Fraction)):
            return EisensteinRational._raw(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a**2 - a*b + b**2`` (always a non-negative rational)."""
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def conjugate(self) -> EisensteinRational:
        """Image under the automorphism q -> q**2."""
        return EisensteinRational._raw(self.a - self.b, -self.b)

    def inverse(self) -> EisensteinRational:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return EisensteinRational._raw((self.a - self.b) / n, -self.b / n)

    def __truediv__(self, other: Scalar) -> EisensteinRational:
        if isinstance(other, EisensteinRational):
            if not other.b:
                if not other.a:
                    raise ZeroDivisionError("division by zero in Q(q)")
                return EisensteinRational._raw(self.a / other.a, self.b / other.a)
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in Q(q)")
            return EisensteinRational._raw(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other: Scalar) -> EisensteinRational:
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int) -> EisensteinRational:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- conversions ----------------------------------------------------------
    def to_rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    def to_complex(self) -> complex:
        # q = -1/2 + i*sqrt(3)/2
        return complex(float(self.a) - float(self.b) / 2, float(self.b) * 3**0.5 / 2)

    def __str__(self) -> str:
        return format_eis(self)

    def __repr__(self) -> str:
        return f"EisensteinRational({self.a!s}, {self.b!s})"


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_eis(x: EisensteinRational) -> str:
    """Render as ``"a+b*q"``; rational elements render as ``"a"``."""
    if not x.b:
        return _frac_str(x.a)
    b = _frac_str(x.b)
    if not x.a:
        return f"{b}*q"
    sign = "" if x.b < 0 else "+"
    return f"{_frac_str(x.a)}{sign}{b}*q"


_TOKEN = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*q)?")


def parse_eis(text: str) -> EisensteinRational:
    """Inverse of :func:`format_eis`; also accepts ``"q"``, ``"-q"``, ``"1-2/3*q"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty string")
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse {text!r}")
        sign, num, qpart = m.groups()
        if num is None and qpart is None:
            raise ValueError(f"cannot parse {text!r}")
        coeff = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            coeff = -coeff
        if qpart is not None:
            b += coeff
        else:
            a += coeff
        pos = m.end()
    return EisensteinRational._raw(a, b)


def as_eis(x: Scalar | str) -> EisensteinRational:
    if isinstance(x, EisensteinRational):
        return x
    if isinstance(x, str):
        return parse_eis(x)
    return EisensteinRational(x)


def eis_mul(x: EisensteinRational, y: EisensteinRational) -> EisensteinRational:
    return x * y


def eis_inv(x: EisensteinRational) -> EisensteinRational:
    return x.inverse()


def eis_conj(x: EisensteinRational) -> EisensteinRational:
    return x.conjugate()


def eis_norm(x: EisensteinRational) -> Fraction:
    return x.norm()


ZERO = EisensteinRational(0, 0)
ONE = EisensteinRational(1, 0)
Q = EisensteinRational(0, 1)
