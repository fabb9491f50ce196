"""Exact arithmetic in the real quadratic field Q(sqrt 3).

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  An element ``a + b*sqrt(3)`` is stored as the pair ``(a, b)``,
which is unique because sqrt(3) is irrational.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

SQRT3_FLOAT = math.sqrt(3.0)

Scalar = Union["QSqrt3", int, Fraction]


_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse the canonical ``"p"`` or ``"p/q"`` (lowest terms, ``q > 1``)."""
    if not isinstance(text, str) or not _RATIONAL_RE.fullmatch(text):
        raise ValueError(f"rational must be a string 'p' or 'p/q', got {text!r}")
    value = Fraction(text)
    if str(value) != text:
        raise ValueError(f"rational {text!r} is not in lowest terms")
    return value


def format_rational(value: Fraction) -> str:
    return str(value)


def _coprime_factory():
    # Fraction(n, d) re-checks types and recomputes the gcd; hot loops that
    # already hold a reduced pair skip that through whichever private fast
    # path this Python provides, verified once here.
    make = getattr(Fraction, "_from_coprime_ints", None)
    if make is None:
        def make(n, d):
            return Fraction(n, d, _normalize=False)
    try:
        probe = make(-3, 4)
        if type(probe) is Fraction and probe == Fraction(-3, 4) and probe.denominator == 4:
            return make
    except TypeError:
        pass
    return Fraction


_from_coprime = _coprime_factory()


def make_fraction(n: int, d: int) -> Fraction:
    """``Fraction(n, d)`` for integers with ``d > 0``, on a faster path."""
    if d == 1:
        return _from_coprime(n, 1)
    g = math.gcd(n, d)
    if g != 1:
        n //= g
        d //= g
    return _from_coprime(n, d)


class QSqrt3:
    """Immutable element ``a + b*sqrt(3)`` with rational ``a``, ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a: Rational | int = 0, b: Rational | int = 0):
        object.__setattr__(self, "a", a if type(a) is Fraction else Fraction(a))
        object.__setattr__(self, "b", b if type(b) is Fraction else Fraction(b))

    @classmethod
    def _make(cls, a: Fraction, b: Fraction) -> "QSqrt3":
        # both parts already Fractions
        x = object.__new__(cls)
        _set(x, "a", a)
        _set(x, "b", b)
        return x

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt3 is immutable")

    @classmethod
    def coerce(cls, value: Scalar) -> "QSqrt3":
        if isinstance(value, QSqrt3):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to QSqrt3")

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_rational(self) -> bool:
        return not self.b

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- field operations -------------------------------------------------
    def __add__(self, other: Scalar) -> "QSqrt3":
        try:
            o = QSqrt3.coerce(other)
        except TypeError:
            return NotImplemented
        return _make(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "QSqrt3":
        return _make(-self.a, -self.b)

    def __sub__(self, other: Scalar) -> "QSqrt3":
        try:
            o = QSqrt3.coerce(other)
        except TypeError:
            return NotImplemented
        return _make(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Scalar) -> "QSqrt3":
        return -self + other

    def __mul__(self, other: Scalar) -> "QSqrt3":
        if isinstance(other, QSqrt3):
            a, b, c, d = self.a, self.b, other.a, other.b
            if not b and not d:
                return _make(a * c, b)
            return _make(a * c + 3 * b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return QSqrt3(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 3 b^2``; zero only for the zero element."""
        return self.a * self.a - 3 * self.b * self.b

    def conjugate(self) -> "QSqrt3":
        """Galois conjugate ``a - b*sqrt(3)``."""
        return QSqrt3(self.a, -self.b)

    def inverse(self) -> "QSqrt3":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt 3)")
        n = self.norm()
        return QSqrt3(self.a / n, -self.b / n)

    def __truediv__(self, other: Scalar) -> "QSqrt3":
        try:
            o = QSqrt3.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> "QSqrt3":
        return QSqrt3.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "QSqrt3":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*sqrt(3)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 3 b^2
        return sa if self.a * self.a > 3 * self.b * self.b else sb

    def sqrt(self) -> "QSqrt3 | None":
        """Exact square root inside Q(sqrt 3) when one exists, else ``None``.

        Only the rational case and the ``(x + y sqrt 3)^2`` case with
        rational ``x``, ``y`` are searched, which covers every square.
        """
        if self.sign() < 0:
            return None
        if self.is_zero():
            return ZERO
        if self.is_rational():
            r = _rational_sqrt(self.a)
            if r is not None:
                return QSqrt3(r)
            r = _rational_sqrt(self.a / 3)
            return None if r is None else QSqrt3(0, r)
        # (x + y s)^2 = x^2 + 3y^2 + 2xy s ; x^2 and 3y^2 are roots of
        # T^2 - a T + 3 b^2 / 4 = 0
        disc = _rational_sqrt(self.a * self.a - 3 * self.b * self.b)
        if disc is None:
            return None
        for x2 in ((self.a + disc) / 2, (self.a - disc) / 2):
            x = _rational_sqrt(x2)
            if x is None or x == 0:
                continue
            y = self.b / (2 * x)
            cand = QSqrt3(x, y)
            if cand * cand == self:
                return cand if cand.sign() > 0 else -cand
        return None

    # -- comparison / conversion ------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, QSqrt3):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT3_FLOAT

    def __repr__(self) -> str:
        return f"QSqrt3({self.a!s}, {self.b!s})"

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt3"
        return f"({self.a} + {self.b}*sqrt3)"

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> "QSqrt3":
        return cls(parse_rational(obj["a"]), parse_rational(obj.get("b", "0")))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


_set = object.__setattr__
_make = QSqrt3._make

ZERO = QSqrt3(0)
ONE = QSqrt3(1)
SQRT3 = QSqrt3(0, 1)
