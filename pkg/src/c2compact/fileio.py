"""JSON surface files: parsing with path-annotated errors, canonical serialization."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import ExclusiveFields, ParseError, SchemaError, UnknownField, UnreducedFraction
from .field import FieldElem, cyclotomic_cap, max_cyclotomic
from .laurent import LaurentPoly2, parse_poly
from .semidegree import Semidegree
from .series import Dwps

VERSION = 1
_FRACTION = re.compile(r"^(-?\d+)(?:/(\d+))?$")


@dataclass
class SurfaceFile:
    semidegrees: list | None = None
    branch: Dwps | None = None
    family: dict | None = None
    max_cyclotomic: int | None = None

    def build(self):
        """(Surface, OnePlaceData or None) described by this file."""
        from .surface import build_surface, from_one_place_branch

        with cyclotomic_cap(self.max_cyclotomic or max_cyclotomic()):
            if self.branch is not None:
                return from_one_place_branch(self.branch, self.family)
            return build_surface(self.semidegrees, self.family), None


# -- scalars ---------------------------------------------------------------------

def parse_fraction(text, path) -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise SchemaError("expected a fraction string 'a/b'", path)
    m = _FRACTION.match(str(text).strip())
    if not m:
        raise SchemaError(f"malformed fraction {text!r}", path)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise SchemaError("zero denominator", path)
    if gcd(num, den) != 1 and not (num == 0 and den == 1):
        raise UnreducedFraction(f"fraction {text!r} is not in lowest terms", path)
    return Fraction(num, den)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _only_keys(obj, allowed, path):
    if not isinstance(obj, dict):
        raise SchemaError("expected an object", path)
    for k in obj:
        if k not in allowed:
            raise UnknownField(f"unknown field {k!r}", f"{path}.{k}" if path else k)


def _require(obj, key, path):
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", path)
    return obj[key]


def parse_coefficient(obj, path) -> FieldElem:
    _only_keys(obj, {"rat", "cyc"}, path)
    if ("rat" in obj) == ("cyc" in obj):
        raise ExclusiveFields("a coefficient needs exactly one of 'rat' and 'cyc'", path)
    if "rat" in obj:
        return FieldElem.rational(parse_fraction(obj["rat"], f"{path}.rat"))
    cyc = obj["cyc"]
    cpath = f"{path}.cyc"
    _only_keys(cyc, {"n", "terms"}, cpath)
    n = _require(cyc, "n", cpath)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("'n' must be a positive integer", f"{cpath}.n")
    terms = _require(cyc, "terms", cpath)
    if not isinstance(terms, list):
        raise SchemaError("'terms' must be a list", f"{cpath}.terms")
    out = []
    for k, t in enumerate(terms):
        tpath = f"{cpath}.terms[{k}]"
        if not (isinstance(t, list) and len(t) == 2 and isinstance(t[1], int)):
            raise SchemaError("a term is ['a/b', power]", tpath)
        out.append((parse_fraction(t[0], tpath), t[1]))
    return FieldElem.from_terms(n, out)


def format_coefficient(c: FieldElem):
    if c.is_rational():
        return {"rat": format_fraction(c.to_fraction())}
    return {"cyc": {"n": c.n, "terms": [[format_fraction(a), k] for a, k in c.terms()]}}


# -- series and polynomials ----------------------------------------------------

def parse_dwps_json(obj, path) -> Dwps:
    if not isinstance(obj, list):
        raise SchemaError("a series is a list of {'c', 'e'} terms", path)
    terms = []
    for k, t in enumerate(obj):
        tpath = f"{path}[{k}]"
        _only_keys(t, {"c", "e"}, tpath)
        terms.append((parse_fraction(_require(t, "e", tpath), f"{tpath}.e"),
                      parse_coefficient(_require(t, "c", tpath), f"{tpath}.c")))
    return Dwps(terms)


def format_dwps_json(phi: Dwps):
    return [{"c": format_coefficient(c), "e": format_fraction(e)} for e, c in phi.terms]


def parse_poly_json(obj, path) -> LaurentPoly2:
    if isinstance(obj, str):
        try:
            return parse_poly(obj)
        except ParseError as exc:
            raise ParseError(str(exc), path) from None
    if not isinstance(obj, list):
        raise SchemaError("a polynomial is a string or a list of {'c', 'ex'} terms", path)
    terms = {}
    for k, t in enumerate(obj):
        tpath = f"{path}[{k}]"
        _only_keys(t, {"c", "ex"}, tpath)
        ex = _require(t, "ex", tpath)
        if not (isinstance(ex, list) and len(ex) == 2 and all(isinstance(v, int) for v in ex)
                and ex[1] >= 0):
            raise SchemaError("'ex' is [x-exponent, y-exponent >= 0]", f"{tpath}.ex")
        key = tuple(ex)
        c = parse_coefficient(_require(t, "c", tpath), f"{tpath}.c")
        terms[key] = terms[key] + c if key in terms else c
    return LaurentPoly2(terms)


def format_poly_json(f: LaurentPoly2):
    return [{"c": format_coefficient(c), "ex": [a, b]} for (a, b), c in f.sorted_terms()]


def format_semidegree_json(d: Semidegree):
    return {"phi": format_dwps_json(d.phi), "r": format_fraction(d.r)}


# -- files ------------------------------------------------------------------

def parse_surface_file(text: str) -> SurfaceFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    _only_keys(obj, {"version", "field", "semidegrees", "branch", "family"}, "")
    version = _require(obj, "version", "$")
    if version != VERSION:
        raise SchemaError(f"unsupported version {version!r}", "version")
    if ("semidegrees" in obj) == ("branch" in obj):
        raise ExclusiveFields("exactly one of 'semidegrees' and 'branch' is required", "$")
    out = SurfaceFile()
    if "field" in obj:
        _only_keys(obj["field"], {"max_cyclotomic"}, "field")
        cap = obj["field"].get("max_cyclotomic")
        if cap is not None and (not isinstance(cap, int) or cap < 1):
            raise SchemaError("'max_cyclotomic' must be a positive integer", "field.max_cyclotomic")
        out.max_cyclotomic = cap
    with cyclotomic_cap(out.max_cyclotomic or max_cyclotomic()):
        if "semidegrees" in obj:
            sds = obj["semidegrees"]
            if not isinstance(sds, list) or not sds:
                raise SchemaError("'semidegrees' must be a nonempty list", "semidegrees")
            out.semidegrees = []
            for k, s in enumerate(sds):
                spath = f"semidegrees[{k}]"
                _only_keys(s, {"phi", "r"}, spath)
                phi = parse_dwps_json(_require(s, "phi", spath), f"{spath}.phi")
                r = parse_fraction(_require(s, "r", spath), f"{spath}.r")
                out.semidegrees.append(Semidegree(phi, r))
        else:
            out.branch = parse_dwps_json(obj["branch"], "branch")
        if "family" in obj:
            fam = obj["family"]
            if not isinstance(fam, list):
                raise SchemaError("'family' must be a list", "family")
            out.family = {}
            for k, e in enumerate(fam):
                epath = f"family[{k}]"
                _only_keys(e, {"i", "j", "poly"}, epath)
                i, j = _require(e, "i", epath), _require(e, "j", epath)
                if not (isinstance(i, int) and isinstance(j, int)) or i < 0 or j < 0:
                    raise SchemaError("'i' and 'j' must be nonnegative integers", epath)
                if (i, j) in out.family:
                    raise SchemaError(f"duplicate family entry ({i}, {j})", epath)
                out.family[(i, j)] = parse_poly_json(_require(e, "poly", epath), f"{epath}.poly")
    return out


def surface_file_to_json(sf: SurfaceFile) -> dict:
    obj = {"version": VERSION}
    if sf.max_cyclotomic is not None:
        obj["field"] = {"max_cyclotomic": sf.max_cyclotomic}
    if sf.branch is not None:
        obj["branch"] = format_dwps_json(sf.branch)
    else:
        obj["semidegrees"] = [format_semidegree_json(d) for d in sf.semidegrees]
    if sf.family is not None:
        obj["family"] = [{"i": i, "j": j, "poly": format_poly_json(f)}
                         for (i, j), f in sorted(sf.family.items())]
    return obj


def dumps(obj) -> str:
    """Canonical JSON text (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def serialize_surface_file(sf: SurfaceFile) -> str:
    return dumps(surface_file_to_json(sf))
