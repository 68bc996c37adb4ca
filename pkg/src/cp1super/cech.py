"""Cech 1-cohomology of the degree-2 tangent sheaf on the two-chart cover.

A 1-cocycle for the cover {U0, U1} is a degree-2 vector field over the
overlap, written in U0 coordinates with Laurent-polynomial coefficients.
A coboundary is a difference w0 - w1 of fields holomorphic on U0 and U1
respectively.  Two independent routes decide cohomology classes:

* reduce_cocycle: the constructive rule pipeline (drop U0-holomorphic
  powers, drop U1-holomorphic powers, apply the d/dx ~ d/dxi relation);
* is_coboundary: a finite exact linear solver over a truncated exponent
  window wide enough to contain any witness.

Their agreement is enforced by the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .laurent import LaurentPoly
from .linsolve import LinearSolver
from .scalars import Scalar
from .sections import U0, U1, KTuple, NotInDegreeError, SuperFunction, VectorField


def shapes(m: int):
    """Monomial shapes spanning the degree-2 fields, in a fixed order.

    ('dx', (i,j))   ~ xi_i xi_j d/dx
    ('dxi', l)      ~ xi_1..xi_m d/dxi_l  (full sorted word; m = 3 only)
    """
    out = [("dx", pair) for pair in combinations(range(1, m + 1), 2)]
    if m == 3:
        out += [("dxi", l) for l in range(1, m + 1)]
    return out


def pair_complement(pair, m: int = 3) -> int:
    (l,) = set(range(1, m + 1)) - set(pair)
    return l


def shape_field(m: int, shape, poly: LaurentPoly, chart: str = U0) -> VectorField:
    kind, idx = shape
    if kind == "dx":
        sf = SuperFunction(m, {idx: poly})
        return VectorField(m, dx=sf, chart=chart)
    full = tuple(range(1, m + 1))
    dxi = [SuperFunction(m) for _ in range(m)]
    dxi[idx - 1] = SuperFunction(m, {full: poly})
    return VectorField(m, dxi=dxi, chart=chart)


def t2_components(field: VectorField) -> dict:
    """Decompose a degree-2 field into {shape: LaurentPoly} on sorted words."""
    if not field.is_t2():
        raise NotInDegreeError("section is not of degree 2")
    m = field.m
    comps = {}
    for word, poly in field.dx.items():
        comps[("dx", word)] = poly
    full = tuple(range(1, m + 1))
    for l in range(1, m + 1):
        poly = field.dxi[l - 1].coeff(full)
        if poly:
            comps[("dxi", l)] = poly
    return comps


def components_field(m: int, comps: dict, chart: str = U0) -> VectorField:
    out = VectorField.zero(m, chart)
    for shape, poly in comps.items():
        out = out + shape_field(m, shape, poly, chart)
    return out


@dataclass(frozen=True)
class Cocycle:
    """Gluing datum: a degree-2 field over the overlap in U0 coordinates."""

    k: KTuple
    field: VectorField

    def __post_init__(self):
        if self.field.m != self.k.m:
            raise ValueError("field and gluing degrees disagree on m")
        if self.field.chart != U0:
            raise ValueError("cocycles are written in U0 coordinates")
        if not self.field.is_t2():
            raise NotInDegreeError("cocycle section must have degree 2")

    @classmethod
    def zero(cls, k: KTuple) -> "Cocycle":
        return cls(k, VectorField.zero(k.m))

    @classmethod
    def from_monomials(cls, k: KTuple, terms) -> "Cocycle":
        """terms: iterable of (shape, xpow, coeff)."""
        comps = {}
        for shape, xpow, coeff in terms:
            p = comps.get(shape, LaurentPoly())
            comps[shape] = p + LaurentPoly.term(coeff, xpow)
        return cls(k, components_field(k.m, comps))

    def components(self) -> dict:
        return t2_components(self.field)

    def __add__(self, other):
        if self.k != other.k:
            raise ValueError("cocycles over different retracts")
        return Cocycle(self.k, self.field + other.field)

    def __sub__(self, other):
        return self + other.scalar_mul(Scalar(-1))

    def scalar_mul(self, s) -> "Cocycle":
        return Cocycle(self.k, self.field.scalar_mul(s))


# ---------------------------------------------------------------------------
# Basis of H^1
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisLabel:
    """One basis cocycle: sign * x^(-n) * shape-monomial.

    For m = 3 the reporting basis carries a minus sign on the d/dx labels of
    the pair (1,3); this matches the signed basis the matrix action of the
    automorphism group is stated in.
    """

    kind: str  # 'dx' | 'dxi'
    pair: tuple  # the (i,j) bucket the label belongs to, i < j
    n: int  # exponent is -n, n >= 1
    sign: int

    @property
    def deriv(self):
        """Derivation index for 'dxi' labels, None for 'dx'."""
        if self.kind != "dxi":
            return None
        return pair_complement(self.pair)

    def shape(self):
        if self.kind == "dx":
            return ("dx", self.pair)
        return ("dxi", self.deriv)

    def monomial(self, k: KTuple) -> Cocycle:
        return Cocycle.from_monomials(k, [(self.shape(), -self.n, Scalar(self.sign))])


def _dx_sign(pair, m: int) -> int:
    return -1 if m == 3 and pair == (1, 3) else 1


def basis(k: KTuple) -> "BasisLayout":
    """Labeled basis of H^1 for the retract k, per bucket case analysis."""
    labels = []
    m = k.m
    if m == 2:
        s = k[1] + k[2]
        for n in range(1, s - 2):
            labels.append(BasisLabel("dx", (1, 2), n, 1))
        return BasisLayout(k, tuple(labels))
    for pair in combinations((1, 2, 3), 2):
        i, j = pair
        l = pair_complement(pair)
        s = k[i] + k[j]
        kl = k[l]
        if s > 3:
            for n in range(1, s - 2):
                labels.append(BasisLabel("dx", pair, n, _dx_sign(pair, m)))
            for n in range(1, s):
                labels.append(BasisLabel("dxi", pair, n, 1))
        elif s == 3:
            labels.append(BasisLabel("dxi", pair, 1, 1))
            labels.append(BasisLabel("dxi", pair, 2, 1))
        elif s == 2 and kl == 0:
            labels.append(BasisLabel("dxi", pair, 1, 1))
        # s == 2 with kl != 0, and s < 2: trivial bucket
    return BasisLayout(k, tuple(labels))


@dataclass(frozen=True)
class BasisLayout:
    k: KTuple
    labels: tuple

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def label_index(self) -> dict:
        return {(lab.shape(), lab.n): lab for lab in self.labels}


@dataclass(frozen=True)
class CohomologyClass:
    """Coordinate vector in the labeled basis; zero coordinates are dropped."""

    layout: BasisLayout
    coords: tuple  # tuple of (BasisLabel, Scalar), in layout order

    @classmethod
    def make(cls, layout: BasisLayout, coeffs: dict) -> "CohomologyClass":
        coords = tuple((lab, coeffs[lab]) for lab in layout.labels if coeffs.get(lab))
        return cls(layout, coords)

    def coord(self, label: BasisLabel) -> Scalar:
        for lab, c in self.coords:
            if lab == label:
                return c
        return Scalar(0)

    def is_zero(self) -> bool:
        return not self.coords

    def vector(self) -> list:
        by_label = dict(self.coords)
        return [by_label.get(lab, Scalar(0)) for lab in self.layout.labels]

    def __add__(self, other):
        if self.layout != other.layout:
            raise ValueError("classes over different layouts")
        a = dict(self.coords)
        for lab, c in other.coords:
            a[lab] = a.get(lab, Scalar(0)) + c
        return CohomologyClass.make(self.layout, a)

    def scalar_mul(self, s) -> "CohomologyClass":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        return CohomologyClass.make(
            self.layout, {lab: s * c for lab, c in self.coords}
        )


# ---------------------------------------------------------------------------
# Rule-based reduction
# ---------------------------------------------------------------------------


def reduce_cocycle(v: Cocycle) -> CohomologyClass:
    """Reduce a cocycle to coordinates in the basis of H^1.

    Per bucket (i,j) with s = k_i + k_j and complement l:
      1. x^e with e >= 0 is holomorphic on U0: dropped;
      2. d/dx terms with e <= 1-s and d/dxi terms with e <= -s are
         holomorphic on U1: dropped;
      3. the relation converts the d/dx term at e = 2-s into -k_l times
         the d/dxi term at e = 1-s; read in the other direction it kills
         the d/dxi term at e = -1 when s = 2 and k_l != 0 (the partner
         d/dx term at e = 0 is already trivial by rule 1);
      4. surviving coefficients are the coordinates, divided by the label
         sign of the reporting basis.
    """
    k = v.k
    m = k.m
    layout = basis(k)
    out = {}

    def add(shape, e, c):
        key = (shape, e)
        out[key] = out.get(key, Scalar(0)) + c

    if m == 2:
        s = k[1] + k[2]
        for shape, poly in v.components().items():
            for e, c in poly.items():
                if e >= 0 or e <= 2 - s:
                    continue
                add(shape, e, c)
    else:
        for shape, poly in v.components().items():
            kind, idx = shape
            if kind == "dx":
                pair = idx
                l = pair_complement(pair)
            else:
                l = idx
                pair = tuple(sorted(set((1, 2, 3)) - {l}))
            s = k[pair[0]] + k[pair[1]]
            kl = k[l]
            for e, c in poly.items():
                if e >= 0:
                    continue
                if kind == "dx":
                    if e <= 1 - s:
                        continue
                    if e == 2 - s:
                        # relation: convert into the partner d/dxi term;
                        # eps reorders the word xi_i xi_j xi_l to xi_1 xi_2 xi_3
                        ne = 1 - s
                        if ne <= -s or ne >= 0:
                            continue
                        eps = -1 if pair == (1, 3) else 1
                        add(("dxi", l), ne, Scalar(-kl * eps) * c)
                        continue
                    add(shape, e, c)
                else:
                    if e <= -s:
                        continue
                    if s == 2 and e == -1 and kl != 0:
                        continue
                    add(shape, e, c)

    index = layout.label_index()
    coeffs = {}
    for (shape, e), c in out.items():
        if not c:
            continue
        lab = index.get((shape, -e))
        if lab is None:
            raise AssertionError(
                f"reduction produced a non-basis residue {shape} x^{e} for k={k.k}"
            )
        coeffs[lab] = coeffs.get(lab, Scalar(0)) + c * lab.sign
    return CohomologyClass.make(layout, coeffs)


def representative(cls_: CohomologyClass) -> Cocycle:
    """Rebuild the canonical representative cocycle of a class."""
    k = cls_.layout.k
    terms = []
    for lab, c in cls_.coords:
        terms.append((lab.shape(), -lab.n, c * lab.sign))
    return Cocycle.from_monomials(k, terms)


# ---------------------------------------------------------------------------
# Linear-solver oracle
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoboundaryResult:
    is_coboundary: bool
    w0: VectorField | None  # holomorphic on U0, in U0 coordinates
    w1: VectorField | None  # holomorphic on U1, in U1 coordinates
    certificate: CohomologyClass | None  # nonzero reduced class when False


_SOLVER_CACHE: dict = {}


def _margin(k: KTuple) -> int:
    return max(abs(k[i]) + abs(k[j]) for i, j in combinations(range(1, k.m + 1), 2)) + 2


def _column_space(k: KTuple, lo: int, hi: int):
    """Columns of the coboundary map on a truncated window.

    Unknowns are the monomials of w0 (x^e, e >= 0) and w1 (y^e, e >= 0);
    each column is the U0-coordinate expansion of w0 - w1 restricted to
    that single monomial.  Any witness for a cocycle supported in [lo, hi]
    is supported inside these bounds.
    """
    m = k.m
    S = _margin(k)
    cols = []
    meta = []
    for shape in shapes(m):
        for e in range(0, max(hi, 0) + S + 1):
            cols.append({(shape, e): Scalar(1)})
            meta.append(("w0", shape, e))
    for shape in shapes(m):
        for e in range(0, max(-lo, 0) + S + 1):
            w1 = shape_field(m, shape, LaurentPoly.x(e), chart=U1)
            on_u0 = w1.to_other_chart(k)
            col = {}
            for sh, poly in t2_components(on_u0).items():
                for ee, c in poly.items():
                    col[(sh, ee)] = col.get((sh, ee), Scalar(0)) - c
            cols.append(col)
            meta.append(("w1", shape, e))
    return cols, meta


def _window(v: Cocycle):
    lo, hi = 0, 0
    for poly in v.components().values():
        lo = min(lo, poly.min_deg())
        hi = max(hi, poly.max_deg())
    # widen to a standard window so solver factorizations are shared
    return min(lo, -8), max(hi, 8)


def _solver_for(k: KTuple, lo: int, hi: int):
    key = (k.k, lo, hi)
    hit = _SOLVER_CACHE.get(key)
    if hit is None:
        cols, meta = _column_space(k, lo, hi)
        hit = (LinearSolver(cols), meta)
        _SOLVER_CACHE[key] = hit
    return hit


def is_coboundary(v: Cocycle) -> CoboundaryResult:
    """Decide coboundaries by exact linear algebra; independent of reduce.

    On True the witness (w0, w1) satisfies v = w0 - w1 on the overlap,
    which is re-verified exactly before returning.  On False the
    certificate is the nonzero reduced class.
    """
    k = v.k
    m = k.m
    lo, hi = _window(v)
    solver, meta = _solver_for(k, lo, hi)
    rhs = {}
    for shape, poly in v.components().items():
        for e, c in poly.items():
            rhs[(shape, e)] = c
    x = solver.solve(rhs)
    if x is None:
        return CoboundaryResult(False, None, None, reduce_cocycle(v))
    comps0, comps1 = {}, {}
    for val, (side, shape, e) in zip(x, meta):
        if not val:
            continue
        target = comps0 if side == "w0" else comps1
        p = target.get(shape, LaurentPoly())
        target[shape] = p + LaurentPoly.term(val, e)
    w0 = components_field(m, comps0, chart=U0)
    w1 = components_field(m, comps1, chart=U1)
    if v.field != w0 - w1.to_other_chart(k):
        raise AssertionError("solver produced an invalid coboundary witness")
    return CoboundaryResult(True, w0, w1, None)


def solver_corank(k: KTuple, window: int | None = None) -> int:
    """dim H^1 computed from the solver alone (no basis/reduction rules).

    Counts window-supported cocycles modulo the coboundary image that
    stays inside the window: dim V - rank(M) + rank(PM), where PM keeps
    only the rows outside the cocycle window.
    """
    m = k.m
    if window is None:
        window = max(8, _margin(k))
    cols, _ = _column_space(k, -window, window)
    dim_v = len(shapes(m)) * (2 * window + 1)
    rank_m = LinearSolver(cols).rank
    outside = [
        {rk: val for rk, val in col.items() if abs(rk[1]) > window} for col in cols
    ]
    rank_pm = LinearSolver(outside).rank
    return dim_v - rank_m + rank_pm
