"""Base-point-freeness at infinity, the Zariski semigroup, one-place weights."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from sympy import Matrix

from .errors import NotEquisingular
from .sections import _value, enumerate_exponents, enumerate_sections
from .series import analyze
from .surface import OnePlaceData, Surface

CONDITIONS = ("d-max", "max-xi", "min-xi", "max-order-xi", "no-a")


@dataclass(frozen=True)
class ZariskiData:
    a: tuple
    d: tuple
    m: tuple
    m_c: tuple  # m_c[i] = {c: m_{i,c}(a)}

    def m_at(self, i, c) -> int:
        return self.m_c[i].get(c, 0)


def zariski_data(surface: Surface, a) -> ZariskiData:
    a = tuple(int(v) for v in a)
    N = surface.N
    if len(a) != N or any(v < 0 for v in a):
        raise ValueError(f"a must be a nonnegative vector of length {N}")
    d = tuple(sum(surface.omega[i][j] * a[j] for j in range(N)) for i in range(N))

    def weight(i, ks):
        total = Fraction(sum(surface.p_tilde(k) * a[k] for k in ks), surface.p(i))
        assert total.denominator == 1, "non-integral m value"
        return int(total)

    m = tuple(weight(i, surface.neighborhoods[i]) for i in range(N))
    m_c = tuple({c: weight(i, ks) for c, ks in surface.partitions[i].items()} for i in range(N))
    return ZariskiData(a=a, d=d, m=m, m_c=m_c)


def solve_for_a(surface: Surface, d):
    """Nonnegative integer a with Omega a = d (all of them when Omega is singular)."""
    N = surface.N
    Om = Matrix(surface.omega)
    if Om.det() != 0:
        sol = Om.LUsolve(Matrix(d))
        a = [Fraction(int(v.p), int(v.q)) for v in sol]
        if all(v.denominator == 1 and v >= 0 for v in a):
            return [tuple(int(v) for v in a)]
        return []
    cols = [min((surface.omega[i][j] for i in range(N) if surface.omega[i][j] > 0), default=None)
            for j in range(N)]
    if any(c is None for c in cols):
        return []
    top = max(max(d), 0)
    ranges = [range(top // c + 1) for c in cols]
    return [a for a in itertools.product(*ranges)
            if all(sum(surface.omega[i][j] * a[j] for j in range(N)) == d[i] for i in range(N))]


@dataclass(frozen=True)
class BpfReport:
    bpf: bool
    a: tuple | None
    violated: str | None = None
    index: int | None = None
    expected: int | None = None
    actual: int | None = None

    def to_json(self):
        return {"bpf": self.bpf, "a": list(self.a) if self.a is not None else None,
                "violated": self.violated, "index": self.index,
                "expected": self.expected, "actual": self.actual}


def _generator_lc_data(surface: Surface):
    """Per generator g and index i: (deg_xi lc_i(g), ord_{xi - c_ii} lc_i(g))."""
    out = []
    for row in surface.lcs:
        out.append(tuple((lc.deg(), lc.ord_at(surface.c_ii[i])) for i, lc in enumerate(row)))
    return out


def _check_conditions(N, exps, values, degs, ords, d, a, zd, P, c_ii):
    for i in range(N):
        top = None
        for n in exps:
            v = _value(n, values)[i]
            top = v if top is None or v > top else top
        if top != d[i]:
            return ("d-max", i, d[i], top)
        tops = [n for n in exps if _value(n, values)[i] == d[i]]
        dg = [degs(n, i) for n in tops]
        od = [ords(n, i) for n in tops]
        if max(dg) != zd.m[i]:
            return ("max-xi", i, zd.m[i], max(dg))
        mc = zd.m_at(i, c_ii[i])
        if min(od) != mc:
            return ("min-xi", i, mc, min(od))
        if max(od) != a[i] * P[i] + mc:
            return ("max-order-xi", i, a[i] * P[i] + mc, max(od))
    return None


def is_bpf_at_infinity(surface: Surface, d, threads: int = 1) -> BpfReport:
    d = tuple(int(v) for v in d)
    cands = solve_for_a(surface, d)
    if not cands:
        return BpfReport(False, None, "no-a")
    en = enumerate_sections(surface, d, threads)
    if not en.exponents:
        return BpfReport(False, cands[0], "d-max", 0, d[0], None)
    gl = _generator_lc_data(surface)

    def degs(n, i):
        return sum(k * gl[g][i][0] for g, k in enumerate(n))

    def ords(n, i):
        return sum(k * gl[g][i][1] for g, k in enumerate(n))

    P = [surface.P(i) for i in range(surface.N)]
    first = None
    for a in cands:
        zd = zariski_data(surface, a)
        bad = _check_conditions(surface.N, en.exponents, surface.values, degs, ords, d, a, zd,
                                P, surface.c_ii)
        if bad is None:
            return BpfReport(True, a)
        first = first or BpfReport(False, a, *bad)
    return first


def bpf_parts(surface: Surface, bound: int):
    """All bpf-at-infinity classes Omega a with every entry in [0, bound]."""
    N = surface.N
    cols = [min((surface.omega[i][j] for i in range(N) if surface.omega[i][j] > 0), default=0)
            for j in range(N)]
    ranges = [range(bound // c + 1) if c > 0 else range(1) for c in cols]
    out = []
    for a in itertools.product(*ranges):
        d = tuple(sum(surface.omega[i][j] * a[j] for j in range(N)) for i in range(N))
        if any(v < 0 or v > bound for v in d) or not any(d):
            continue
        if d not in out and is_bpf_at_infinity(surface, d).bpf:
            out.append(d)
    return out


@dataclass(frozen=True)
class MembershipResult:
    status: str  # "true", "false-within-bound" or "unknown"
    certificate: tuple | None = None


def semigroup_member_bounded(surface: Surface, d, bound: int) -> MembershipResult:
    """Search d as a sum of bpf-at-infinity classes with entries in [0, bound]."""
    d = tuple(int(v) for v in d)
    if not any(d):
        return MembershipResult("true", ())
    if any(v < 0 for v in d):
        return MembershipResult("unknown")
    if all(v <= bound for v in d) and is_bpf_at_infinity(surface, d).bpf:
        return MembershipResult("true", (d,))
    parts = bpf_parts(surface, bound)
    prev = {tuple(0 for _ in d): None}
    queue = [tuple(0 for _ in d)]
    while queue:
        cur = queue.pop()
        for p in parts:
            nxt = tuple(a + b for a, b in zip(cur, p))
            if nxt in prev or any(a > b for a, b in zip(nxt, d)):
                continue
            prev[nxt] = (cur, p)
            if nxt == d:
                cert = []
                while prev[nxt] is not None:
                    nxt, p = prev[nxt]
                    cert.append(p)
                return MembershipResult("true", tuple(reversed(cert)))
            queue.append(nxt)
    return MembershipResult("false-within-bound")


# ---------------------------------------------------------------------------
# one-place surfaces


def one_place_mu_nu(data: OnePlaceData, alpha, k: int):
    """(mu_k, nu_k) of an exponent vector alpha over g_0, ..., g_{s+1}."""
    alpha = tuple(alpha)
    if len(alpha) != data.s + 2:
        raise ValueError(f"alpha must have length {data.s + 2}")
    if not 0 <= k < len(data.l):
        raise IndexError(f"node {k} out of range")
    lk1 = data.l[k] + 1
    if k not in data.B:
        return alpha[lk1], alpha[lk1]
    mu = sum(alpha[i] * data.e[(lk1, i)] for i in range(lk1, data.s + 2))
    assert mu.denominator == 1
    mu = int(mu)
    if k in data.j_nodes:
        return mu, alpha[data.j_nodes.index(k) + 1]
    return mu, mu


def one_place_is_bpf(surface: Surface, data: OnePlaceData, d) -> BpfReport:
    """Base-point-freeness at infinity through the mu/nu weights on g_0..g_{s+1}."""
    d = tuple(int(v) for v in d)
    cands = solve_for_a(surface, d)
    if not cands:
        return BpfReport(False, None, "no-a")
    values = tuple(surface.delta_vector(g) for g in data.g)
    exps = enumerate_exponents(values, d)
    if not exps:
        return BpfReport(False, cands[0], "d-max", 0, d[0], None)

    def degs(n, i):
        return one_place_mu_nu(data, n, i)[0]

    def ords(n, i):
        return one_place_mu_nu(data, n, i)[1]

    P = [surface.P(i) for i in range(surface.N)]
    first = None
    for a in cands:
        zd = zariski_data(surface, a)
        bad = _check_conditions(surface.N, exps, values, degs, ords, d, a, zd, P, surface.c_ii)
        if bad is None:
            return BpfReport(True, a)
        first = first or BpfReport(False, a, *bad)
    return first


# ---------------------------------------------------------------------------
# equisingularity


@dataclass(frozen=True)
class EquisingularReport:
    checked: int
    exhaustive: bool
    mismatches: tuple

    @property
    def identical(self) -> bool:
        return not self.mismatches


def _box_points(N, side, sample, seed):
    total = (side + 1) ** N
    if total <= sample:
        return list(itertools.product(range(side + 1), repeat=N)), True
    rng = random.Random(seed)
    pts = {tuple(0 for _ in range(N)), tuple(side for _ in range(N))}
    for j in range(N):
        for v in range(side + 1):
            pts.add(tuple(v if k == j else 0 for k in range(N)))
            pts.add(tuple(v for _ in range(N)))
    while len(pts) < sample:
        pts.add(tuple(rng.randint(0, side) for _ in range(N)))
    return sorted(pts), False


def equisingular_compare(branch_a, branch_b, side: int, sample: int = 400, seed: int = 0,
                         bpf: bool = True):
    """Compare dim, Enriques and bpf tables of two one-place surfaces over a box.

    The box is scanned in full when it has at most ``sample`` points, else a
    seeded sample plus axis and diagonal points is used.
    """
    from .surface import from_one_place_branch

    if analyze(branch_a).pairs != analyze(branch_b).pairs:
        raise NotEquisingular(f"Puiseux pairs of {branch_a} and {branch_b} differ")
    (SA, _), (SB, _) = from_one_place_branch(branch_a), from_one_place_branch(branch_b)
    if SA.N != SB.N:
        raise NotEquisingular("the surfaces have different numbers of curves at infinity")
    pts, exhaustive = _box_points(SA.N, side, sample, seed)
    mismatches = []
    for d in pts:
        rows = []
        for S in (SA, SB):
            en = enumerate_sections(S, d)
            member = bool(en.exponents) and en.M == en.d
            row = {"dim": en.dim, "enriques": member}
            if bpf:
                row["bpf"] = is_bpf_at_infinity(S, d).bpf
            rows.append(row)
        if rows[0] != rows[1]:
            mismatches.append((d, rows[0], rows[1]))
    return EquisingularReport(checked=len(pts), exhaustive=exhaustive, mismatches=tuple(mismatches))
