"""Interchange documents: JSON-friendly forms of every domain object.

All numbers are exact scalar strings, never floats, so documents
round-trip bit-exactly.  Unknown fields are rejected.
"""
from __future__ import annotations

from .cech import (
    BasisLabel,
    BasisLayout,
    Cocycle,
    CohomologyClass,
    basis,
    components_field,
)
from .laurent import LaurentPoly
from .scalars import Scalar, ScalarParseError
from .sections import U0, KTuple, VectorField
from .bundle import BundleAut
from .classify import ModuliPoint

SCHEMA_VERSION = 1

# documents with exponents beyond this bound are refused up front
MAX_XPOW = 128


class DocumentError(ValueError):
    pass


class WindowOverflowError(DocumentError):
    pass


# ---------------------------------------------------------------------------
# terms <-> vector fields
# ---------------------------------------------------------------------------


def field_to_terms(field: VectorField) -> list:
    terms = []
    for word, poly in field.dx.items():
        for e, c in poly.items():
            terms.append({"coeff": str(c), "xpow": e, "word": list(word), "deriv": "x"})
    for s in range(1, field.m + 1):
        for word, poly in field.dxi[s - 1].items():
            for e, c in poly.items():
                terms.append({"coeff": str(c), "xpow": e, "word": list(word), "deriv": s})
    terms.sort(key=lambda t: (str(t["deriv"]), t["word"], t["xpow"]))
    return terms


def terms_to_field(m: int, terms, chart: str = U0) -> VectorField:
    if not isinstance(terms, list):
        raise DocumentError("term list must be an array")
    dx_terms = {}
    dxi_terms = [dict() for _ in range(m)]
    for t in terms:
        if not isinstance(t, dict):
            raise DocumentError("each term must be an object")
        extra = set(t) - {"coeff", "xpow", "word", "deriv"}
        if extra:
            raise DocumentError(f"unknown term fields: {sorted(extra)}")
        for key in ("coeff", "xpow", "word", "deriv"):
            if key not in t:
                raise DocumentError(f"term is missing {key!r}")
        try:
            coeff = Scalar.parse(str(t["coeff"]))
        except ScalarParseError as exc:
            raise DocumentError(str(exc)) from None
        xpow = t["xpow"]
        if not isinstance(xpow, int) or isinstance(xpow, bool):
            raise DocumentError("xpow must be an integer")
        if abs(xpow) > MAX_XPOW:
            raise WindowOverflowError(f"|xpow| exceeds the window bound {MAX_XPOW}")
        word = t["word"]
        if (
            not isinstance(word, list)
            or any(not isinstance(i, int) or isinstance(i, bool) for i in word)
            or sorted(set(word)) != word
            or any(i < 1 or i > m for i in word)
        ):
            raise DocumentError(f"word must be a strictly increasing list in 1..{m}")
        word = tuple(word)
        deriv = t["deriv"]
        if deriv == "x":
            p = dx_terms.setdefault(word, [])
        elif isinstance(deriv, int) and not isinstance(deriv, bool) and 1 <= deriv <= m:
            p = dxi_terms[deriv - 1].setdefault(word, [])
        else:
            raise DocumentError(f"deriv must be 'x' or an index in 1..{m}")
        p.append((xpow, coeff))
    from .sections import SuperFunction

    dx = SuperFunction(m, {w: LaurentPoly(ts) for w, ts in dx_terms.items()})
    dxi = tuple(
        SuperFunction(m, {w: LaurentPoly(ts) for w, ts in d.items()})
        for d in dxi_terms
    )
    return VectorField(m, dx, dxi, chart)


# ---------------------------------------------------------------------------
# job documents
# ---------------------------------------------------------------------------


def parse_k(value) -> KTuple:
    if isinstance(value, str):
        try:
            value = [int(p) for p in value.split(",")]
        except ValueError:
            raise DocumentError(f"malformed k list: {value!r}") from None
    if not isinstance(value, list) or any(
        not isinstance(v, int) or isinstance(v, bool) for v in value
    ):
        raise DocumentError("k must be a list of integers")
    try:
        return KTuple(tuple(value))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def load_job(doc: dict, *, need_cocycle=False, need_aut=False, need_second=False):
    """Validate a job document and build domain objects.

    Returns (k, cocycle, aut, cocycle2); absent optional parts are None.
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be an object")
    allowed = {"version", "k", "cocycle", "aut", "cocycle2"}
    extra = set(doc) - allowed
    if extra:
        raise DocumentError(f"unknown document fields: {sorted(extra)}")
    if doc.get("version") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported document version: {doc.get('version')!r}")
    if "k" not in doc:
        raise DocumentError("document is missing 'k'")
    k = parse_k(doc["k"])
    coc = aut = coc2 = None
    if need_cocycle:
        if "cocycle" not in doc:
            raise DocumentError("document is missing 'cocycle'")
        coc = Cocycle(k, terms_to_field(k.m, doc["cocycle"]))
    if need_aut:
        if "aut" not in doc:
            raise DocumentError("document is missing 'aut'")
        aut = parse_aut(k, doc["aut"])
    if need_second:
        if "cocycle2" not in doc:
            raise DocumentError("document is missing 'cocycle2'")
        coc2 = Cocycle(k, terms_to_field(k.m, doc["cocycle2"]))
    return k, coc, aut, coc2


def parse_aut(k: KTuple, rows) -> BundleAut:
    m = k.m
    if not isinstance(rows, list) or len(rows) != m or any(
        not isinstance(r, list) or len(r) != m for r in rows
    ):
        raise DocumentError(f"aut must be a {m}x{m} array of polynomial strings")
    entries = []
    for row in rows:
        out = []
        for cell in row:
            try:
                out.append(LaurentPoly.parse(str(cell)))
            except ScalarParseError as exc:
                raise DocumentError(str(exc)) from None
        entries.append(tuple(out))
    return BundleAut(k, tuple(entries))


def aut_to_doc(A: BundleAut) -> list:
    return [[str(e) for e in row] for row in A.entries]


# ---------------------------------------------------------------------------
# result serialization
# ---------------------------------------------------------------------------


def label_to_doc(lab: BasisLabel) -> dict:
    out = {"pair": list(lab.pair), "type": lab.kind, "n": lab.n, "sign": lab.sign}
    if lab.kind == "dxi":
        out["deriv"] = lab.deriv
    return out


def layout_to_doc(layout: BasisLayout) -> dict:
    return {
        "k": list(layout.k.k),
        "dimension": layout.dimension,
        "labels": [label_to_doc(lab) for lab in layout.labels],
    }


def class_to_doc(cls_: CohomologyClass) -> dict:
    return {
        "dimension": cls_.layout.dimension,
        "coords": [
            {**label_to_doc(lab), "coeff": str(c)} for lab, c in cls_.coords
        ],
    }


def moduli_to_doc(mp: ModuliPoint) -> dict:
    if mp.kind == "m2":
        if mp.split:
            return {"kind": "m2", "split": True}
        return {"kind": "m2", "point": [str(v) for v in mp.point]}
    out = {
        "kind": "m3",
        "k": mp.k,
        "rank": mp.rank,
        "echelon": [[str(v) for v in row] for row in mp.echelon],
        "pluecker": [str(v) for v in mp.pluecker],
    }
    if mp.split:
        out["split"] = True
    return out
