"""Semidegrees given by generic degree-wise Puiseux series phi(x) + xi*x^r."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidSemidegree
from .field import ONE
from .laurent import LaurentPoly2
from .series import Dwps, analyze, conjugates
from .xipoly import XiPoly


@dataclass(frozen=True)
class FormalData:
    """Formal Puiseux data of phi + xi x^r.

    ``pairs`` has l+1 entries; the last one ``(q, P)`` encodes ``r`` and may
    have ``P == 1``.  ``p`` is the polydromy order of phi and
    ``p_tilde = p * P`` equals the value on ``x``.
    """

    pairs: tuple
    char_exps: tuple
    l: int
    p: int
    P: int
    p_tilde: int


def formal_data(phi: Dwps, r) -> FormalData:
    r = Fraction(r)
    if phi and not r < phi.ord():
        raise InvalidSemidegree(f"r={r} must lie below the lowest exponent {phi.ord()} of phi")
    pd = analyze(phi)
    last = r * pd.polydromy
    pairs = pd.pairs + ((last.numerator, last.denominator),)
    return FormalData(pairs=pairs, char_exps=pd.char_exps + (r,), l=len(pd.pairs),
                      p=pd.polydromy, P=last.denominator,
                      p_tilde=pd.polydromy * last.denominator)


# A substituted series is a dict {(x-exponent, xi-power): coefficient}.

def _smul(A, B):
    out = {}
    for (e1, k1), c1 in A.items():
        for (e2, k2), c2 in B.items():
            key = (e1 + e2, k1 + k2)
            v = c1 * c2
            w = out.get(key)
            out[key] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def _sadd_into(acc, B):
    for key, v in B.items():
        w = acc.get(key)
        w = v if w is None else w + v
        if w:
            acc[key] = w
        else:
            acc.pop(key, None)


class Semidegree:
    """The semidegree f -> p_tilde * deg_x f(x, phi(x) + xi x^r)."""

    __slots__ = ("phi", "r", "formal")

    def __init__(self, phi: Dwps, r):
        self.phi = phi
        self.r = Fraction(r)
        self.formal = formal_data(phi, self.r)

    @classmethod
    def degree(cls):
        return cls(Dwps(), 1)

    # -- derived data -----------------------------------------------------
    @property
    def p_tilde(self) -> int:
        return self.formal.p_tilde

    @property
    def l(self) -> int:
        return self.formal.l

    @property
    def P(self) -> int:
        return self.formal.P

    @property
    def p(self) -> int:
        return self.formal.p

    def generic_series(self):
        s = {(e, 0): c for e, c in self.phi.terms}
        s[(self.r, 1)] = ONE
        return s

    # -- evaluation -------------------------------------------------------
    def substitute(self, f: LaurentPoly2):
        """f(x, phi + xi x^r) as {(exponent, xi-power): coefficient}."""
        if f.is_zero():
            return {}
        s = self.generic_series()
        by_y = {}
        for (a, b), c in f.items():
            by_y.setdefault(b, {})[(Fraction(a), 0)] = c
        acc = {}
        power = {(Fraction(0), 0): ONE}
        for b in range(max(by_y) + 1):
            if b:
                power = _smul(power, s)
            if b in by_y:
                _sadd_into(acc, _smul(by_y[b], power))
        return acc

    def leading(self, f: LaurentPoly2):
        """(normalized value deg_x, lc) of the substitution."""
        if f.is_zero():
            raise ValueError("the zero polynomial has no semidegree value")
        sub = self.substitute(f)
        top = max(e for e, _ in sub)
        lc = XiPoly.from_dict({k: c for (e, k), c in sub.items() if e == top})
        return top, lc

    def eval_norm(self, f: LaurentPoly2) -> Fraction:
        return self.leading(f)[0]

    def eval(self, f: LaurentPoly2) -> int:
        v = self.eval_norm(f) * self.p_tilde
        assert v.denominator == 1, "semidegree value off the grid"
        return int(v)

    def lc(self, f: LaurentPoly2) -> XiPoly:
        return self.leading(f)[1]

    # -- comparisons ------------------------------------------------------
    def canonical_phi(self) -> Dwps:
        """Lexicographically smallest conjugate of phi (for stable output)."""
        return min(conjugates(self.phi), key=lambda d: d.sort_key())

    def same_as(self, other: "Semidegree") -> bool:
        if self.r != other.r:
            return False
        return any(c == other.phi for c in conjugates(self.phi))

    def __repr__(self):
        return f"Semidegree(phi={self.phi}, r={self.r})"


def weighted_degree(wx: int, wy: int) -> Semidegree:
    """Weighted degree with weights ``wx`` on x and ``wy`` on y (wx > 0)."""
    return Semidegree(Dwps(), Fraction(wy, wx))

