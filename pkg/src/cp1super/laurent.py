"""Laurent polynomials in one variable over Q(i), with finite support."""
from __future__ import annotations

import re

from .scalars import ONE, Scalar, ScalarParseError, _RAT


class LaurentPoly:
    """Finite map exponent -> Scalar; zero coefficients are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for n, v in coeffs.items() if isinstance(coeffs, dict) else coeffs:
                if not isinstance(v, Scalar):
                    v = Scalar(v)
                if v:
                    w = c.get(n)
                    v = v if w is None else w + v
                    if v:
                        c[n] = v
                    else:
                        del c[n]
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def term(cls, coeff, n: int = 0) -> "LaurentPoly":
        return cls({n: coeff if isinstance(coeff, Scalar) else Scalar(coeff)})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.term(1, 0)

    @classmethod
    def x(cls, n: int = 1) -> "LaurentPoly":
        return cls.term(1, n)

    # -- queries -----------------------------------------------------------

    def items(self):
        return self._c.items()

    def __getitem__(self, n: int) -> Scalar:
        return self._c.get(n, Scalar(0))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def min_deg(self):
        return min(self._c) if self._c else None

    def max_deg(self):
        return max(self._c) if self._c else None

    def is_polynomial(self) -> bool:
        return not self._c or min(self._c) >= 0

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    def constant(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self._c.get(0, Scalar(0))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        c = dict(self._c)
        for n, v in other._c.items():
            w = c.get(n)
            v = v if w is None else w + v
            if v:
                c[n] = v
            else:
                del c[n]
        out = LaurentPoly()
        object.__setattr__(out, "_c", c)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        out = LaurentPoly()
        object.__setattr__(out, "_c", {n: -v for n, v in self._c.items()})
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scalar_mul(other)
        c = {}
        for n1, v1 in self._c.items():
            for n2, v2 in other._c.items():
                n = n1 + n2
                v = v1 * v2
                w = c.get(n)
                v = v if w is None else w + v
                if v:
                    c[n] = v
                elif w is not None:
                    del c[n]
        out = LaurentPoly()
        object.__setattr__(out, "_c", c)
        return out

    __rmul__ = __mul__

    def scalar_mul(self, s) -> "LaurentPoly":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        if not s:
            return LaurentPoly()
        out = LaurentPoly()
        object.__setattr__(out, "_c", {n: s * v for n, v in self._c.items()})
        return out

    def shift(self, d: int) -> "LaurentPoly":
        out = LaurentPoly()
        object.__setattr__(out, "_c", {n + d: v for n, v in self._c.items()})
        return out

    def invert_var(self) -> "LaurentPoly":
        """Substitute x -> x^(-1)."""
        out = LaurentPoly()
        object.__setattr__(out, "_c", {-n: v for n, v in self._c.items()})
        return out

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({n - 1: v * n for n, v in self._c.items() if n != 0})

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    # -- text form ------------------------------------------------------------
    #
    # Sum of terms "c", "c*x", "c*x^n"; a coefficient containing '+' or '-'
    # inside (a proper complex value) is parenthesized.  Round-trips through
    # parse() exactly.

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for n in sorted(self._c):
            cs = str(self._c[n])
            if ("+" in cs[1:]) or ("-" in cs[1:]) or cs.endswith("i"):
                cs = f"({cs})"
            if n == 0:
                t = cs
            elif n == 1:
                t = f"{cs}*x"
            else:
                t = f"{cs}*x^{n}"
            parts.append(t)
        s = parts[0]
        for t in parts[1:]:
            s += "+" + t if not t.startswith("-") else t
        return s

    def __repr__(self):
        return f"LaurentPoly({self!s})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        text = text.strip().replace(" ", "")
        if not text:
            raise ScalarParseError("empty polynomial string")
        if text == "0":
            return cls()
        terms = []
        for sign, body in _split_terms(text):
            m = _TERM_RE.match(body)
            if not m:
                raise ScalarParseError(f"bad polynomial term: {body!r}")
            coeff_s, var, exp_s = m.group("coeff"), m.group("var"), m.group("exp")
            if coeff_s and coeff_s.startswith("("):
                coeff_s = coeff_s[1:-1]
            coeff = Scalar.parse(coeff_s) if coeff_s else Scalar(1)
            if var is None:
                n = 0
            else:
                n = int(exp_s) if exp_s else 1
            terms.append((n, sign * coeff))
        return cls(terms)


_TERM_RE = re.compile(
    rf"^(?:(?P<coeff>\((?:{_RAT})(?:[+-]\d+(?:/\d+)?)i\)|{_RAT})\*?)?"
    r"(?P<var>x)?(?:\^(?P<exp>-?\d+))?$"
)


def _split_terms(text):
    """Split on top-level +/- signs, yielding (sign, body) pairs."""
    out = []
    depth = 0
    start = 0
    sign = 1
    if text[0] == "+":
        start = 1
    elif text[0] == "-":
        sign = -1
        start = 1
    i = start
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and text[i - 1] not in "*^/(":
            out.append((sign, text[start:i]))
            sign = 1 if ch == "+" else -1
            start = i + 1
        i += 1
    out.append((sign, text[start:]))
    if any(not body for _, body in out):
        raise ScalarParseError(f"bad polynomial string: {text!r}")
    return out


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly.term(ONE, 0)
