"""Canonical moduli labels for the two cases the classification settles.

For m = 3 with retract (k,k,k) a cohomology class is a 3 x (4k-4) matrix;
the automorphism group acts by left multiplication by GL_3, so the orbit
is the row space.  The canonical label is the rank together with the
reduced row-echelon basis of the row space (unique per subspace); the
Pluecker minors of the echelon basis are emitted as auxiliary output.

For m = 2 the action is by nonzero scalars: the label is either the split
marker (zero class) or the projective normalization of the coordinate
vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .cech import CohomologyClass, basis
from .scalars import Scalar
from .sections import KTuple


class UnsupportedClassificationError(ValueError):
    """m = 3 with non-equal gluing degrees: no canonical invariant exists."""


class MismatchedRetractsError(ValueError):
    pass


_ZERO = Scalar(0)
_ONE = Scalar(1)


@dataclass(frozen=True)
class ClassMatrix:
    """3 x (4k-4) coordinate matrix of a class over the retract (k,k,k)."""

    k: int
    rows: tuple  # 3 rows, each a tuple of Scalars

    @property
    def ncols(self) -> int:
        return len(self.rows[0])


def to_matrix(cls_: CohomologyClass) -> ClassMatrix:
    """Lay out class coordinates in the double-indexed matrix basis.

    Row s is the derivation index (for d/dx labels, the complement of the
    pair); columns 1..p are the d/dx block (p = 2k-3), columns p+1..p+a
    the d/dxi block (a = 2k-1).
    """
    k = cls_.layout.k
    if k.m != 3 or len(set(k.k)) != 1:
        raise UnsupportedClassificationError(
            "matrix layout exists only for retracts (k,k,k) with m = 3"
        )
    kv = k.k[0]
    q = max(4 * kv - 4, 0)
    if q == 0:
        if not cls_.is_zero():
            raise AssertionError("nonzero class over a zero-dimensional space")
        return ClassMatrix(kv, tuple(tuple() for _ in range(3)))
    p = 2 * kv - 3
    rows = [[_ZERO] * q for _ in range(3)]
    for lab, c in cls_.coords:
        if lab.kind == "dx":
            (s,) = set((1, 2, 3)) - set(lab.pair)
            col = lab.n
        else:
            s = lab.deriv
            col = p + lab.n
        rows[s - 1][col - 1] = c
    return ClassMatrix(kv, tuple(tuple(r) for r in rows))


def rref(rows):
    """Reduced row echelon form over Q(i).

    Returns (echelon_rows, transform, pivot_cols) with transform an
    invertible square matrix satisfying transform @ rows == echelon_rows.
    """
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    m = [list(r) for r in rows]
    t = [[_ONE if i == j else _ZERO for j in range(nr)] for i in range(nr)]
    piv_r = 0
    pivots = []
    for col in range(nc):
        sel = None
        for r in range(piv_r, nr):
            if m[r][col]:
                sel = r
                break
        if sel is None:
            continue
        m[piv_r], m[sel] = m[sel], m[piv_r]
        t[piv_r], t[sel] = t[sel], t[piv_r]
        f = _ONE / m[piv_r][col]
        m[piv_r] = [v * f for v in m[piv_r]]
        t[piv_r] = [v * f for v in t[piv_r]]
        for r in range(nr):
            if r == piv_r or not m[r][col]:
                continue
            g = m[r][col]
            m[r] = [a - g * b for a, b in zip(m[r], m[piv_r])]
            t[r] = [a - g * b for a, b in zip(t[r], t[piv_r])]
        pivots.append(col)
        piv_r += 1
        if piv_r == nr:
            break
    return [tuple(r) for r in m], [tuple(r) for r in t], pivots


def _minors(echelon, r):
    """All r x r minors of the echelon rows, column subsets in lex order."""
    if r == 0:
        return tuple()
    nc = len(echelon[0])
    out = []
    for cols in combinations(range(nc), r):
        sub = [[echelon[i][c] for c in cols] for i in range(r)]
        out.append(_det(sub))
    return tuple(out)


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    acc = _ZERO
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


@dataclass(frozen=True)
class ModuliPoint:
    """Canonical isomorphism-class label.

    kind 'm3': rank + echelon basis of the row space (a Grassmannian
    point); rank 0 is the split class.  kind 'm2': split marker or a
    projective point normalized so the first nonzero coordinate is 1.
    """

    kind: str  # 'm3' | 'm2'
    k: int | None = None
    rank: int | None = None
    echelon: tuple | None = None
    pluecker: tuple | None = None
    point: tuple | None = None
    split: bool = False

    def __eq__(self, other):
        if not isinstance(other, ModuliPoint):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "m3":
            return (
                self.k == other.k
                and self.rank == other.rank
                and self.echelon == other.echelon
            )
        return self.split == other.split and self.point == other.point

    def __hash__(self):
        if self.kind == "m3":
            return hash((self.kind, self.k, self.rank, self.echelon))
        return hash((self.kind, self.split, self.point))


def moduli_point(w: ClassMatrix) -> ModuliPoint:
    """Rank and canonical row-space representative of a class matrix."""
    if w.ncols == 0:
        return ModuliPoint("m3", k=w.k, rank=0, echelon=tuple(), pluecker=tuple(),
                           split=True)
    ech, _, pivots = rref(w.rows)
    r = len(pivots)
    nonzero = tuple(ech[:r])
    return ModuliPoint(
        "m3",
        k=w.k,
        rank=r,
        echelon=nonzero,
        pluecker=_minors(nonzero, r),
        split=(r == 0),
    )


def orbit_witness(w1: ClassMatrix, w2: ClassMatrix):
    """An invertible D with D @ w1 == w2, when the moduli points agree.

    Built from the echelon transforms: if E1 w1 = R = E2 w2 then
    D = E2^(-1) E1.  Returns None when the points differ.
    """
    if moduli_point(w1) != moduli_point(w2):
        return None
    if w1.ncols == 0:
        return [[_ONE if i == j else _ZERO for j in range(3)] for i in range(3)]
    _, t1, _ = rref(w1.rows)
    _, t2, _ = rref(w2.rows)
    t2_inv = _invert3(t2)
    return _matmul3(t2_inv, t1)


def _matmul3(a, b):
    n = len(a)
    return [
        [sum((a[i][t] * b[t][j] for t in range(n)), _ZERO) for j in range(n)]
        for i in range(n)
    ]


def _invert3(m):
    n = len(m)
    aug = [list(m[i]) + [_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    ech, t, piv = rref(aug)
    # m is invertible (a product of elementary operations), so rref of the
    # left block is the identity and the right block is the inverse
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [tuple(row[n:]) for row in ech]


def classify_m2(cls_or_vector, k: KTuple) -> ModuliPoint:
    """Split marker or projective point for an m = 2 class."""
    if k.m != 2:
        raise ValueError("classify_m2 needs an m = 2 retract")
    if isinstance(cls_or_vector, CohomologyClass):
        vec = cls_or_vector.vector()
    else:
        vec = [v if isinstance(v, Scalar) else Scalar(v) for v in cls_or_vector]
    dim = max(k[1] + k[2] - 3, 0)
    if len(vec) != dim:
        raise ValueError(f"class vector must have length {dim}")
    first = next((v for v in vec if v), None)
    if first is None:
        return ModuliPoint("m2", split=True)
    inv = _ONE / first
    return ModuliPoint("m2", point=tuple(inv * v for v in vec))


def moduli_point_of_class(cls_: CohomologyClass) -> ModuliPoint:
    """Full pipeline from a cohomology class to its canonical label."""
    k = cls_.layout.k
    if k.m == 2:
        return classify_m2(cls_, k)
    return moduli_point(to_matrix(cls_))


def isomorphic(c1: CohomologyClass, c2: CohomologyClass) -> bool:
    """Same isomorphism class: equal canonical moduli labels."""
    k1, k2 = c1.layout.k, c2.layout.k
    if k1.canonical() != k2.canonical():
        raise MismatchedRetractsError(f"retracts differ: {k1.k} vs {k2.k}")
    return moduli_point_of_class(c1) == moduli_point_of_class(c2)


def aut_matrix_action(A) -> list:
    """The GL_3 matrix acting on class matrices: D(A) = det(A) * (A^-1)^T."""
    if not A.is_constant():
        raise ValueError("matrix action is defined for constant automorphisms")
    d = A.det()
    binv = A.inverse().scalar_matrix()
    n = A.k.m
    return [[d * binv[j][i] for j in range(n)] for i in range(n)]


def matrix_apply(d, w: ClassMatrix) -> ClassMatrix:
    """Left action D . W."""
    rows = []
    for i in range(3):
        row = []
        for c in range(w.ncols):
            row.append(sum((d[i][t] * w.rows[t][c] for t in range(3)), _ZERO))
        rows.append(tuple(row))
    return ClassMatrix(w.k, tuple(rows))
