"""Exact Gaussian-rational arithmetic: the field Q(i).

All coefficients in the library live here.  Values are immutable and
normalized (Fraction keeps denominators positive and in lowest terms),
so equality is exact and decidable.
"""
from __future__ import annotations

import re
from fractions import Fraction


class ScalarParseError(ValueError):
    pass


_RAT = r"[+-]?\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^({_RAT})$")
_COMPLEX_RE = re.compile(rf"^({_RAT})([+-]\d+(?:/\d+)?)i$")


def _rat_str(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


class Scalar:
    """An element a + b*i with a, b rational, arbitrary precision."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- field operations ------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def inverse(self) -> "Scalar":
        return ONE / self

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_zero(self) -> bool:
        return not self

    # -- text form --------------------------------------------------------
    #
    # "a/b" for real values, "a/b+c/di" otherwise; integer shorthand "3".
    # parse(str(s)) == s bit-exactly.

    def __str__(self):
        if self.im == 0:
            return _rat_str(self.re)
        im = _rat_str(self.im)
        if not im.startswith("-"):
            im = "+" + im
        return f"{_rat_str(self.re)}{im}i"

    def __repr__(self):
        return f"Scalar({self!s})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        text = text.strip().replace(" ", "")
        m = _REAL_RE.match(text)
        if m:
            return cls(Fraction(m.group(1)))
        m = _COMPLEX_RE.match(text)
        if m:
            return cls(Fraction(m.group(1)), Fraction(m.group(2)))
        raise ScalarParseError(f"not a valid scalar: {text!r}")


def _coerce(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
