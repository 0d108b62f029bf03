"""Key forms of a semidegree, classification, and Newton-Puiseux at infinity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from sympy import Poly, Rational, symbols

from .errors import KeyFormVerificationError, RootNotSolvable
from .field import ONE, ZERO, FieldElem
from .laurent import LaurentPoly2
from .semidegree import Semidegree
from .series import Dwps, conjugates, lcm
from .xipoly import XiPoly

# ---------------------------------------------------------------------------
# key forms


@dataclass(frozen=True)
class KeyFormSeq:
    forms: tuple
    last_is_polynomial: bool
    all_polynomial: bool
    delta_of_last: int

    @property
    def last(self) -> LaurentPoly2:
        return self.forms[-1]


@dataclass
class _Level:
    form: LaurentPoly2
    value: Fraction
    lc: FieldElem
    order: int


def _standard_monomial(target: Fraction, levels):
    """x^a * prod F_t^beta_t (0 <= beta_t < m_t) with value ``target``."""
    ranges = [range(lv.order) for lv in levels]
    for betas in itertools.product(*ranges):
        rest = target - sum((b * lv.value for b, lv in zip(betas, levels)), Fraction(0))
        if rest.denominator == 1:
            mono = LaurentPoly2.monomial(int(rest), 0)
            c = ONE
            for b, lv in zip(betas, levels):
                if b:
                    mono = mono * lv.form ** b
                    c = c * lv.lc ** b
            return mono, c
    raise AssertionError(f"value {target} is not in the value group")


def _group_denominator(levels):
    d = 1
    for lv in levels:
        d = lcm(d, lv.value.denominator)
    return d


def key_forms(delta: Semidegree, verify: bool = True, max_steps: int = 10_000) -> KeyFormSeq:
    """Key forms x, y, ... of ``delta``.

    Starting from y, the leading term of the current form under the generic
    substitution is cancelled against a standard monomial in the earlier
    forms; whenever its value leaves the current value group a new level
    (a higher y-degree form) is opened.  The process stops once the leading
    coefficient involves xi.
    """
    forms = [LaurentPoly2.x(), LaurentPoly2.y()]
    levels: list[_Level] = []
    current = forms[-1]
    for _ in range(max_steps):
        e, lc = delta.leading(current)
        if not lc.is_constant():
            break
        c = lc.coefficient(0)
        m = (e * _group_denominator(levels)).denominator
        if m == 1:
            mono, cm = _standard_monomial(e, levels)
            current = current - mono * (c / cm)
        else:
            mono, cm = _standard_monomial(m * e, levels)
            levels.append(_Level(current, e, c, m))
            current = current ** m - mono * (c ** m / cm)
        forms.append(current)
    else:
        raise KeyFormVerificationError("key form construction did not terminate")
    last = forms[-1]
    seq = KeyFormSeq(forms=tuple(forms),
                     last_is_polynomial=last.is_polynomial(),
                     all_polynomial=all(f.is_polynomial() for f in forms),
                     delta_of_last=delta.eval(last))
    if verify:
        verify_last_key_form(delta, last)
    return seq


def verify_last_key_form(delta: Semidegree, f: LaurentPoly2) -> None:
    """Check the factorization contract: f is monic of y-degree p and has a
    root agreeing with phi strictly above r."""
    p = delta.phi.polydromy()
    if not f.is_monic_in_y() or f.deg_y() != p:
        raise KeyFormVerificationError(f"last key form {f} is not monic of y-degree {p}")
    res = dwps_roots(f, delta.r - 1)
    roots = [root for group in res.groups for root, _ in group]
    if len(res.groups) != 1:
        raise KeyFormVerificationError(f"roots of {f} are not a single conjugacy class")
    if not any(root.truncate_above(delta.r) == delta.phi for root in roots):
        raise KeyFormVerificationError(f"no root of {f} agrees with {delta.phi} above {delta.r}")


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class SemidegreeClass:
    last_polynomial: bool
    nonneg: bool
    delta_of_last: int


@dataclass(frozen=True)
class Classification:
    per_semidegree: tuple
    in_S_num: bool
    in_S_pol: bool
    in_S_pol_plus: bool


def classify_semidegree(delta: Semidegree, seq: KeyFormSeq | None = None) -> SemidegreeClass:
    seq = seq or key_forms(delta)
    return SemidegreeClass(seq.last_is_polynomial, seq.delta_of_last >= 0, seq.delta_of_last)


def classify_surface(semidegrees) -> Classification:
    flags = tuple(classify_semidegree(d) for d in semidegrees)
    s_pol = all(f.last_polynomial for f in flags)
    return Classification(
        per_semidegree=flags,
        in_S_num=all(f.last_polynomial or f.nonneg for f in flags),
        in_S_pol=s_pol,
        in_S_pol_plus=s_pol and all(f.nonneg for f in flags),
    )


# ---------------------------------------------------------------------------
# Newton-Puiseux at infinity


@dataclass
class RootsResult:
    """Roots of ``unit * x^x_power * prod (y - root)``, grouped by conjugacy.

    Each group is a list of ``(truncated root, multiplicity)``.
    """

    unit: FieldElem
    x_power: Fraction
    groups: list = field(default_factory=list)

    def all_roots(self):
        return [(r, m) for g in self.groups for r, m in g]


def _poly_to_dict(f: LaurentPoly2):
    return {(Fraction(a), b): c for (a, b), c in f.items()}


def _shift(poly, c: FieldElem, mu: Fraction):
    """poly(x, c x^mu + y)."""
    out = {}
    powers = {}
    for (a, b), coef in poly.items():
        for i in range(b + 1):
            k = b - i
            if k not in powers:
                powers[k] = c ** k
            v = coef * powers[k] * comb(b, i)
            key = (a + k * mu, i)
            w = out.get(key)
            out[key] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def _upper_hull(points):
    """Upper convex hull of (b, a) points sorted by b."""
    hull = []
    for pt in sorted(points):
        while len(hull) >= 2:
            (b1, a1), (b2, a2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or below the segment hull[-2] -> pt
            if (a2 - a1) * (pt[0] - b1) <= (pt[1] - a1) * (b2 - b1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _format_univariate(coeffs):
    return str(XiPoly(coeffs)).replace("xi", "c")


def _solve_simple(Q):
    """Roots of a linear or binomial-power polynomial, else None."""
    D = Q.deg()
    if D == 1:
        return [(-Q.coefficient(0) / Q.coefficient(1), 1)]
    for m in range(1, D + 1):
        if D % m:
            continue
        try:
            _, _, A, t = Q.shape(m)
        except ValueError:
            continue
        roots = A.nth_roots(m)
        return None if roots is None else [(r, t) for r in roots]
    return None


def _solve(coeffs):
    """Nonzero roots with multiplicity of sum coeffs[k] c^k (coeffs[0] != 0)."""
    Q = XiPoly(coeffs)
    out = _solve_simple(Q)
    if out is not None:
        return out
    unsolvable = RootNotSolvable(f"cannot solve {_format_univariate(coeffs)} exactly",
                                 poly=_format_univariate(coeffs))
    if not all(a.is_rational() for a in Q.c):
        raise unsolvable
    c = symbols("c")
    expr = Poly([Rational(a.to_fraction().numerator, a.to_fraction().denominator)
                 for a in reversed(Q.c)], c)
    _, factors = expr.factor_list()
    out = []
    for fac, mult in factors:
        fc = XiPoly([FieldElem.rational(Fraction(int(v.p), int(v.q)))
                     for v in reversed(fac.all_coeffs())])
        roots = _solve_simple(fc)
        if roots is None:
            raise unsolvable
        out.extend((r, m * mult) for r, m in roots)
    return out


def _expand(poly, prefix, bound, count, depth, out):
    k = min(b for _, b in poly)
    if k:
        out.append((prefix, k))
        count -= k
        poly = {(a, b - k): c for (a, b), c in poly.items()}
    if count == 0:
        return
    top = {}
    for (a, b), _ in poly.items():
        if b not in top or a > top[b]:
            top[b] = a
    hull = _upper_hull(list((b, a) for b, a in top.items()))
    below = 0
    for (b1, a1), (b2, a2) in zip(hull, hull[1:]):
        mu = (a1 - a2) / (b2 - b1)
        if bound is not None and mu >= bound:
            continue
        if mu < depth:
            below += b2 - b1
            continue
        level = a1 + b1 * mu
        coeffs = [ZERO] * (b2 - b1 + 1)
        for (a, b), c in poly.items():
            if b1 <= b <= b2 and a + b * mu == level:
                coeffs[b - b1] = c
        for root, mult in _solve(coeffs):
            new_prefix = prefix + [(mu, root)]
            _expand(_shift(poly, root, mu), new_prefix, mu, mult, depth, out)
    if below:
        out.append((prefix, below))


def dwps_roots(f: LaurentPoly2, depth) -> RootsResult:
    """Degree-wise Puiseux roots of ``f`` truncated to exponents >= ``depth``.

    ``f`` must have a monomial leading coefficient in y, which is reported
    as ``unit * x^x_power``.  Newton steps solve linear, binomial and
    rational-factorable edge polynomials; anything else raises
    :class:`RootNotSolvable`.
    """
    if f.is_zero():
        raise ValueError("dwps_roots of the zero polynomial")
    depth = Fraction(depth)
    lead = f.leading_y_coefficient()
    if len(lead) != 1:
        raise ValueError(f"{f} is not monic in y up to a monomial factor")
    (m, unit), = lead.items()
    inv = unit.inverse()
    poly = {(a - m, b): c * inv for (a, b), c in _poly_to_dict(f).items()}
    raw = []
    _expand(poly, [], None, f.deg_y(), depth, raw)
    merged = {}
    order = []
    for terms, mult in raw:
        root = Dwps(terms)
        if root in merged:
            merged[root] += mult
        else:
            merged[root] = mult
            order.append(root)
    groups = []
    seen = set()
    for root in order:
        if root in seen:
            continue
        conj = set(conjugates(root))
        group = [(r, merged[r]) for r in order if r in conj and r not in seen]
        seen.update(r for r, _ in group)
        groups.append(group)
    return RootsResult(unit=unit, x_power=Fraction(m), groups=groups)
