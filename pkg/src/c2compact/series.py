"""Finite degree-wise Puiseux series and their Puiseux-pair combinatorics."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd

from .errors import ParseError
from .field import ONE, FieldElem, root_of_unity
from .laurent import LaurentPoly2


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@total_ordering
class _NegInf:
    """Degree of the zero series; compares below every rational."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __lt__(self, other):
        return other is not self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("-inf")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


class Dwps:
    """A finite degree-wise Puiseux series sum a_e x^e with rational e.

    Terms are kept sorted by strictly decreasing exponent with nonzero
    coefficients.  ``p`` is the declared grid: every exponent lies in
    (1/p)Z.  The polydromy order is always recomputed from the terms.
    """

    __slots__ = ("terms", "p")

    def __init__(self, terms=(), p: int | None = None):
        acc: dict[Fraction, FieldElem] = {}
        for e, c in terms:
            e = Fraction(e)
            c = FieldElem.coerce(c)
            if e in acc:
                acc[e] = acc[e] + c
            else:
                acc[e] = c
        self.terms = tuple(sorted(((e, c) for e, c in acc.items() if c),
                                  key=lambda t: t[0], reverse=True))
        grid = self.polydromy()
        if p is None:
            p = grid
        elif p < 1 or p % grid:
            raise ValueError(f"declared denominator {p} is not a multiple of {grid}")
        self.p = p

    @classmethod
    def monomial(cls, c, e) -> "Dwps":
        return cls([(e, c)])

    @classmethod
    def zero(cls) -> "Dwps":
        return cls()

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def polydromy(self) -> int:
        p = 1
        for e, _ in self.terms:
            p = lcm(p, e.denominator)
        return p

    def deg(self):
        return self.terms[0][0] if self.terms else NEG_INF

    def ord(self):
        return self.terms[-1][0] if self.terms else None

    def coefficient(self, e) -> FieldElem:
        e = Fraction(e)
        for ee, c in self.terms:
            if ee == e:
                return c
        return FieldElem.rational(0)

    def exponents(self):
        return [e for e, _ in self.terms]

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        return Dwps(self.terms + other.terms)

    def __neg__(self):
        return Dwps([(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Dwps":
        return Dwps([(e, a * c) for e, a in self.terms])

    def __mul__(self, other):
        if not isinstance(other, Dwps):
            return self.scale(FieldElem.coerce(other))
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out.append((e1 + e2, c1 * c2))
        return Dwps(out)

    def __eq__(self, other):
        if not isinstance(other, Dwps):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple((e, hash(c)) for e, c in self.terms))

    def truncate_above(self, r) -> "Dwps":
        """[phi]_{>r}: the terms of exponent strictly greater than ``r``."""
        return Dwps([(e, c) for e, c in self.terms if e > r])

    def truncate_geq(self, r) -> "Dwps":
        """[phi]_{>=r}."""
        return Dwps([(e, c) for e, c in self.terms if e >= r])

    def sort_key(self):
        return tuple((e, c.sort_key()) for e, c in self.terms)

    def __str__(self):
        return format_dwps(self)

    def __repr__(self):
        return f"Dwps({self})"


def _fmt_exp(e: Fraction) -> str:
    if e.denominator == 1:
        return str(e.numerator)
    return f"({e})"


def format_dwps(phi: Dwps) -> str:
    if phi.is_zero():
        return "0"
    pieces = []
    for e, c in phi.terms:
        mono = "" if e == 0 else ("x" if e == 1 else f"x^{_fmt_exp(e)}")
        if c.is_rational():
            q = c.to_fraction()
            sign, q = ("-" if q < 0 else "+"), abs(q)
            body = (mono if q == 1 else f"{q}*{mono}") if mono else str(q)
        else:
            sign, body = "+", (f"{c}*{mono}" if mono else str(c))
        pieces.append((sign, body))
    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_DWPS_TERM = re.compile(
    r"""^(?P<coef>(?:\d+(?:/\d+)?|z\d+(?:\^\d+)?)(?:\*(?:\d+(?:/\d+)?|z\d+(?:\^\d+)?))*)?
        \*?(?P<x>x(?:\^(?:\((?P<pe>-?\d+(?:/\d+)?)\)|(?P<ne>-?\d+(?:/\d+)?)))?)?$""",
    re.VERBOSE)


def _parse_coef_product(text):
    c = ONE
    for factor in text.split("*"):
        if factor.startswith("z"):
            base, _, power = factor[1:].partition("^")
            c = c * root_of_unity(int(base), int(power or 1))
        else:
            c = c * FieldElem.rational(Fraction(factor))
    return c


def parse_dwps(text: str) -> Dwps:
    """Parse a series such as ``x^(5/2) + x^(-3/2)`` or ``2*x^(2/3) - 5``."""
    src = text.replace(" ", "")
    if src in ("", "0"):
        return Dwps()
    # split on top-level signs; a sign inside an exponent stays put
    chunks = []
    i, start = 0, 0
    depth = 0
    while i < len(src):
        ch = src[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and i > start and depth == 0 and src[i - 1] != "^":
            chunks.append(src[start:i])
            start = i
        i += 1
    chunks.append(src[start:])
    terms = []
    for chunk in chunks:
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        m = _DWPS_TERM.match(chunk)
        if not m or (m.group("coef") is None and m.group("x") is None):
            raise ParseError(f"cannot parse series term {chunk!r}")
        coef = _parse_coef_product(m.group("coef")) if m.group("coef") else ONE
        if m.group("x") is None:
            e = Fraction(0)
        else:
            raw = m.group("pe") or m.group("ne")
            e = Fraction(raw) if raw is not None else Fraction(1)
        terms.append((e, coef * sign))
    return Dwps(terms)


@dataclass(frozen=True)
class PuiseuxData:
    polydromy: int
    pairs: tuple
    char_exps: tuple


def analyze(phi: Dwps) -> PuiseuxData:
    """Polydromy order, Puiseux pairs and characteristic exponents."""
    D = 1
    pairs = []
    exps = []
    for e, _ in phi.terms:
        b = e.denominator
        if D % b:
            new = lcm(D, b)
            q, pj = e * new, new // D
            assert q.denominator == 1 and gcd(q.numerator, pj) == 1
            pairs.append((q.numerator, pj))
            exps.append(e)
            D = new
    return PuiseuxData(D, tuple(pairs), tuple(exps))


def conjugates(phi: Dwps) -> list:
    """The p conjugates sum a_q zeta^(jq) x^(q/p), j = 0..p-1; the first is phi."""
    p = phi.polydromy()
    if p == 1:
        return [phi]
    out = []
    for j in range(p):
        out.append(Dwps([(e, c * root_of_unity(p, j * int(e * p))) for e, c in phi.terms]))
    return out


def star(c, r: int, phi: Dwps) -> Dwps:
    """c *_r phi = sum a_j c^(q_j r/p) x^(q_j/p); ``r`` must be a multiple of the polydromy."""
    p = phi.polydromy()
    if r % p:
        raise ValueError(f"r={r} is not a multiple of the polydromy order {p}")
    c = FieldElem.coerce(c)
    out = []
    for e, a in phi.terms:
        k = e * r
        assert k.denominator == 1
        out.append((e, a * c ** int(k)))
    return Dwps(out)


def minpoly(phi: Dwps) -> LaurentPoly2:
    """prod over conjugates of (y - phi_j), expanded in K[x, x^-1, y]."""
    coeffs = [Dwps.monomial(1, 0)]  # coefficients of y^0, y^1, ...
    for conj in conjugates(phi):
        shifted = [Dwps()] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] = shifted[i] - c * conj
        coeffs = shifted
    terms = {}
    for b, c in enumerate(coeffs):
        for e, a in c.terms:
            if e.denominator != 1:
                raise AssertionError("minimal polynomial with fractional exponent")
            terms[(int(e), b)] = a
    return LaurentPoly2(terms)
