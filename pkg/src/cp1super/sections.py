"""Grassmann algebra over Laurent polynomials and super vector fields.

Sections live on the two standard charts of CP^1: U0 with coordinates
(x, xi_1..xi_m) and U1 with (y, eta_1..eta_m), glued over the overlap by
y = x^(-1) and eta_i = x^(-k_i) xi_i.  The gluing degrees (k_1..k_m) are
carried by KTuple.

Grassmann words are stored as strictly increasing index tuples; products
normalize the sign at construction, so representations are unique and
equality is decidable.
"""
from __future__ import annotations

from dataclasses import dataclass

from .laurent import LaurentPoly
from .scalars import Scalar

U0 = "U0"
U1 = "U1"


class NotInDegreeError(ValueError):
    """A section failed a required homogeneous-degree check."""


@dataclass(frozen=True)
class KTuple:
    """Gluing degrees of the rank-m bundle; m is 2 or 3."""

    k: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.k, tuple):
            object.__setattr__(self, "k", tuple(self.k))
        if len(self.k) not in (2, 3):
            raise ValueError(f"odd dimension must be 2 or 3, got {len(self.k)}")
        if not all(isinstance(v, int) for v in self.k):
            raise ValueError("gluing degrees must be integers")

    @property
    def m(self) -> int:
        return len(self.k)

    def canonical(self) -> "KTuple":
        # a permutation of the degrees is induced by an automorphism,
        # so the sorted tuple is the invariant form
        return KTuple(tuple(sorted(self.k, reverse=True)))

    def __getitem__(self, i: int) -> int:
        """1-based access, matching the index convention everywhere else."""
        return self.k[i - 1]


def mul_words(w1: tuple, w2: tuple):
    """Concatenate-and-sort two Grassmann words.

    Returns (sign, word) or None when an index repeats (the product is 0).
    """
    if not w1:
        return 1, w2
    if not w2:
        return 1, w1
    if set(w1) & set(w2):
        return None
    merged = []
    sign = 1
    i = j = 0
    while i < len(w1) and j < len(w2):
        if w1[i] < w2[j]:
            merged.append(w1[i])
            i += 1
        else:
            # w2[j] jumps over the remaining len(w1)-i odd generators
            sign *= -1 if (len(w1) - i) % 2 else 1
            merged.append(w2[j])
            j += 1
    merged.extend(w1[i:])
    merged.extend(w2[j:])
    return sign, tuple(merged)


def normalize_word(indices) -> tuple[int, tuple]:
    """Sort an arbitrary index sequence; returns (sign, word) with sign 0 on repeats."""
    word = ()
    sign = 1
    for i in indices:
        r = mul_words(word, (i,))
        if r is None:
            return 0, ()
        s, word = r
        sign *= s
    return sign, word


class SuperFunction:
    """Element of Lambda(m) over Laurent polynomials: map word -> coefficient."""

    __slots__ = ("m", "_t")

    def __init__(self, m: int, terms=None):
        t = {}
        if terms:
            for word, poly in terms.items() if isinstance(terms, dict) else terms:
                if poly:
                    p = t.get(word)
                    poly = poly if p is None else p + poly
                    if poly:
                        t[word] = poly
                    else:
                        del t[word]
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_t", t)

    def __setattr__(self, name, value):
        raise AttributeError("SuperFunction is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "SuperFunction":
        return cls(m)

    @classmethod
    def from_poly(cls, m: int, poly: LaurentPoly) -> "SuperFunction":
        return cls(m, {(): poly})

    @classmethod
    def var_x(cls, m: int, n: int = 1) -> "SuperFunction":
        return cls.from_poly(m, LaurentPoly.x(n))

    @classmethod
    def generator(cls, m: int, i: int) -> "SuperFunction":
        return cls(m, {(i,): LaurentPoly.one()})

    @classmethod
    def monomial(cls, m: int, coeff, xpow: int, indices) -> "SuperFunction":
        sign, word = normalize_word(indices)
        if sign == 0:
            return cls(m)
        if not isinstance(coeff, Scalar):
            coeff = Scalar(coeff)
        return cls(m, {word: LaurentPoly.term(sign * coeff, xpow)})

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        t = dict(self._t)
        for w, p in other._t.items():
            q = t.get(w)
            p = p if q is None else q + p
            if p:
                t[w] = p
            else:
                del t[w]
        return _raw(self.m, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return _raw(self.m, {w: -p for w, p in self._t.items()})

    def __mul__(self, other):
        """Sign-correct exterior product."""
        if isinstance(other, (int, Scalar)):
            return self.scalar_mul(other)
        if isinstance(other, LaurentPoly):
            return self.poly_mul(other)
        self._check(other)
        t = {}
        for w1, p1 in self._t.items():
            for w2, p2 in other._t.items():
                r = mul_words(w1, w2)
                if r is None:
                    continue
                sign, w = r
                p = p1 * p2
                if sign < 0:
                    p = -p
                q = t.get(w)
                p = p if q is None else q + p
                if p:
                    t[w] = p
                elif q is not None:
                    del t[w]
        return _raw(self.m, t)

    def scalar_mul(self, s) -> "SuperFunction":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        if not s:
            return SuperFunction(self.m)
        return _raw(self.m, {w: p.scalar_mul(s) for w, p in self._t.items()})

    def poly_mul(self, poly: LaurentPoly) -> "SuperFunction":
        if not poly:
            return SuperFunction(self.m)
        return _raw(self.m, {w: p * poly for w, p in self._t.items()})

    # -- derivatives ------------------------------------------------------------

    def d_x(self) -> "SuperFunction":
        return SuperFunction(self.m, {w: p.derivative() for w, p in self._t.items()})

    def d_xi(self, i: int) -> "SuperFunction":
        """Left partial derivative with respect to generator i."""
        t = {}
        for w, p in self._t.items():
            if i not in w:
                continue
            pos = w.index(i)
            nw = w[:pos] + w[pos + 1:]
            t[nw] = p if pos % 2 == 0 else -p
        return SuperFunction(self.m, t)

    # -- substitutions -----------------------------------------------------------

    def substitute_generators(self, images: list["SuperFunction"]) -> "SuperFunction":
        """Apply the algebra map xi_i -> images[i-1] (x fixed)."""
        out = SuperFunction(self.m)
        for w, p in self._t.items():
            term = SuperFunction.from_poly(self.m, p)
            for i in w:
                term = term * images[i - 1]
            out = out + term
        return out

    def to_other_chart(self, k: KTuple) -> "SuperFunction":
        """Rewrite via x -> y^(-1), xi_i -> y^(-k_i) eta_i (an involution)."""
        t = {}
        for w, p in self._t.items():
            shift = -sum(k[i] for i in w)
            t[w] = p.invert_var().shift(shift)
        return _raw(self.m, t)

    # -- queries ------------------------------------------------------------------

    def items(self):
        return self._t.items()

    def coeff(self, word: tuple) -> LaurentPoly:
        return self._t.get(word, LaurentPoly())

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def word_lengths(self):
        return {len(w) for w in self._t}

    def parity(self):
        """0 or 1 for homogeneous elements, None for mixed or zero."""
        ps = {len(w) % 2 for w in self._t}
        return ps.pop() if len(ps) == 1 else None

    def __eq__(self, other):
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self.m == other.m and self._t == other._t

    def __hash__(self):
        return hash((self.m, frozenset(self._t.items())))

    def __repr__(self):
        if not self._t:
            return "SuperFunction(0)"
        parts = []
        for w in sorted(self._t):
            xi = "".join(f"xi{i}" for i in w)
            parts.append(f"({self._t[w]}){xi}" if xi else f"({self._t[w]})")
        return "SuperFunction(" + " + ".join(parts) + ")"

    def _check(self, other):
        if self.m != other.m:
            raise ValueError("mixed generator counts")


def _raw(m, t):
    out = SuperFunction(m)
    object.__setattr__(out, "_t", t)
    return out


class VectorField:
    """Derivation c_x d/dx + sum_i c_i d/dxi_i with SuperFunction coefficients.

    Coefficients multiply from the left, which makes the super-Leibniz rule
    hold automatically for the action implemented in apply().
    """

    __slots__ = ("m", "chart", "dx", "dxi")

    def __init__(self, m: int, dx: SuperFunction = None, dxi=None, chart: str = U0):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "dx", dx if dx is not None else SuperFunction(m))
        if dxi is None:
            dxi = tuple(SuperFunction(m) for _ in range(m))
        else:
            dxi = tuple(dxi)
        if len(dxi) != m:
            raise ValueError("need one d/dxi coefficient per generator")
        object.__setattr__(self, "dxi", dxi)

    def __setattr__(self, name, value):
        raise AttributeError("VectorField is immutable")

    @classmethod
    def zero(cls, m: int, chart: str = U0) -> "VectorField":
        return cls(m, chart=chart)

    # -- linear structure ------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return VectorField(
            self.m,
            self.dx + other.dx,
            tuple(a + b for a, b in zip(self.dxi, other.dxi)),
            self.chart,
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return VectorField(self.m, -self.dx, tuple(-a for a in self.dxi), self.chart)

    def scalar_mul(self, s) -> "VectorField":
        return VectorField(
            self.m,
            self.dx.scalar_mul(s),
            tuple(a.scalar_mul(s) for a in self.dxi),
            self.chart,
        )

    def poly_mul(self, poly: LaurentPoly) -> "VectorField":
        return VectorField(
            self.m,
            self.dx.poly_mul(poly),
            tuple(a.poly_mul(poly) for a in self.dxi),
            self.chart,
        )

    # -- derivation action --------------------------------------------------------

    def apply(self, f: SuperFunction) -> SuperFunction:
        out = self.dx * f.d_x()
        for i in range(1, self.m + 1):
            out = out + self.dxi[i - 1] * f.d_xi(i)
        return out

    # -- grading --------------------------------------------------------------------

    def in_degree(self, p: int) -> bool:
        """Every term has Z-degree p: word length p on d/dx terms, p+1 on d/dxi."""
        if any(len(w) != p for w, _ in self.dx.items()):
            return False
        for c in self.dxi:
            if any(len(w) != p + 1 for w, _ in c.items()):
                return False
        return True

    def is_t2(self) -> bool:
        return self.in_degree(2)

    def is_zero(self) -> bool:
        return self.dx.is_zero() and all(c.is_zero() for c in self.dxi)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return (
            self.m == other.m
            and self.chart == other.chart
            and self.dx == other.dx
            and self.dxi == other.dxi
        )

    def __hash__(self):
        return hash((self.m, self.chart, self.dx, self.dxi))

    def __repr__(self):
        parts = []
        if self.dx:
            parts.append(f"[{self.dx!r}] d/dx")
        for i, c in enumerate(self.dxi, start=1):
            if c:
                parts.append(f"[{c!r}] d/dxi{i}")
        body = " + ".join(parts) if parts else "0"
        return f"VectorField({self.chart}: {body})"

    def _check(self, other):
        if self.m != other.m or self.chart != other.chart:
            raise ValueError("mixed generator counts or charts")

    # -- chart transition --------------------------------------------------------------

    def to_other_chart(self, k: KTuple) -> "VectorField":
        """Exact rewrite of a degree-2 field into the other chart.

        Derived from first principles: the field is evaluated on the other
        chart's coordinate functions (chain rule included), and the results
        are rewritten through the involutive substitution x <-> y^(-1),
        xi_i <-> y^(-k_i) eta_i.  The printed transition table for the two
        degree-2 basis shapes is used as a test oracle, not hard-coded here.
        """
        if k.m != self.m:
            raise ValueError("gluing degrees do not match generator count")
        if not self.is_t2():
            raise NotInDegreeError("chart transition is only supported on degree-2 fields")
        m = self.m
        # v(y) with y = x^(-1)
        vx = self.apply(SuperFunction.var_x(m))
        new_dx = (-vx).poly_mul(LaurentPoly.x(-2)).to_other_chart(k)
        new_dxi = []
        for i in range(1, m + 1):
            eta_i = SuperFunction.generator(m, i).poly_mul(LaurentPoly.x(-k[i]))
            new_dxi.append(self.apply(eta_i).to_other_chart(k))
        other = U1 if self.chart == U0 else U0
        return VectorField(m, new_dx, tuple(new_dxi), other)
