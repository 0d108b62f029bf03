"""Global sections of divisors at infinity, Enriques membership, tropical closure."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm as _lcm

from .errors import UnboundedSections
from .laurent import LaurentPoly2
from .surface import Surface


def cox_generators(surface: Surface):
    """[(element, multidegree)] for x, y, the distinct f_ij, then 1 in each e_j."""
    out = [(g, vals) for g, vals in zip(surface.generators, surface.values)]
    N = surface.N
    for j in range(N):
        out.append((LaurentPoly2.const(1), tuple(int(k == j) for k in range(N))))
    return out


# ---------------------------------------------------------------------------
# recession check


def _positive_weights(vectors):
    """Integer y >= 0 with y . v > 0 for every v, or None if none exists."""
    N = len(vectors[0])
    cands = [tuple(int(k == j) for k in range(N)) for j in range(N)] + [(1,) * N]
    for y in cands:
        if all(sum(a * b for a, b in zip(y, v)) > 0 for v in vectors):
            return y
    from scipy.optimize import linprog

    res = linprog(c=[1] * N, A_ub=[[-a for a in v] for v in vectors], b_ub=[-1] * len(vectors),
                  bounds=[(0, None)] * N, method="highs")
    if res.status != 0:
        return None
    for den in (1, 10, 100, 1000, 10**6):
        fr = [Fraction(v).limit_denominator(den) if v > 0 else Fraction(0) for v in res.x]
        scale = _lcm(*(f.denominator for f in fr))
        y = tuple(int(f * scale) for f in fr)
        if all(sum(a * b for a, b in zip(y, v)) > 0 for v in vectors):
            return y
    return None


@lru_cache(maxsize=256)
def _weights_for(vectors: tuple):
    y = _positive_weights(list(vectors))
    if y is None:
        raise UnboundedSections("some nonzero combination of generators has all values <= 0")
    return y


# ---------------------------------------------------------------------------
# enumeration


def _dfs(vectors, weights, d, first_range, start_budget):
    """All exponent vectors n >= 0 with sum n_g v_g <= d, in lex order."""
    G, N = len(vectors), len(d)
    out = []
    n = [0] * G
    acc = [0] * N

    def rec(g, budget):
        if g == G:
            if all(a <= b for a, b in zip(acc, d)):
                out.append(tuple(n))
            return
        v, w = vectors[g], weights[g]
        top = budget // w
        rng = range(top + 1) if g or first_range is None else [k for k in first_range if k <= top]
        for k in rng:
            n[g] = k
            for i in range(N):
                acc[i] += k * v[i]
            rec(g + 1, budget - k * w)
            for i in range(N):
                acc[i] -= k * v[i]
        n[g] = 0

    rec(0, start_budget)
    return out


def _chunk_job(args):
    return _dfs(*args)


def enumerate_exponents(vectors, d, threads: int = 1):
    """Lattice points of {n >= 0 : sum n_g v_g <= d}, sorted lexicographically."""
    vectors = tuple(tuple(v) for v in vectors)
    d = tuple(d)
    y = _weights_for(vectors)
    weights = [sum(a * b for a, b in zip(y, v)) for v in vectors]
    budget = sum(a * b for a, b in zip(y, d))
    if budget < 0:
        return []
    if threads <= 1 or not vectors:
        return _dfs(vectors, weights, d, None, budget)
    top = budget // weights[0]
    chunks = [range(k, top + 1, threads) for k in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = pool.map(_chunk_job, [(vectors, weights, d, c, budget) for c in chunks])
        merged = [pt for part in parts for pt in part]
    return sorted(merged)


@dataclass(frozen=True)
class SectionEnumeration:
    """Sections of the divisor class ``d``.

    ``exponents`` are exponent vectors over ``surface.generators``; ``E_prime``
    maps each (a, b) to its lex-minimal witness.  ``M[j]`` is None when the
    section space is empty.
    """

    d: tuple
    exponents: tuple
    E_prime: dict
    M: tuple
    M_witness: tuple

    @property
    def dim(self) -> int:
        return len(self.E_prime)

    def value(self, n, surface: Surface) -> tuple:
        return _value(n, surface.values)


def _value(n, values):
    N = len(values[0])
    return tuple(sum(k * values[g][i] for g, k in enumerate(n)) for i in range(N))


def section_index(surface: Surface, n):
    """Split an exponent vector into (alpha, beta, gamma) with gamma keyed by (i, j).

    A deduplicated generator is credited to its first (i, j); y-equal f_ij
    fold into beta.
    """
    alpha, beta = n[0], n[1]
    gamma = {key: 0 for key in surface.family_keys}
    seen = set()
    for key in surface.family_keys:
        g = surface.family_gen[key]
        if g in seen:
            continue
        seen.add(g)
        if g >= 2:
            gamma[key] = n[g]
    return alpha, beta, gamma


def monomial(surface: Surface, n) -> LaurentPoly2:
    out = LaurentPoly2.const(1)
    for g, k in zip(surface.generators, n):
        if k:
            out = out * g ** k
    return out


def check_recession(surface: Surface):
    return _weights_for(tuple(surface.values))


def enumerate_sections(surface: Surface, d, threads: int = 1) -> SectionEnumeration:
    d = tuple(int(v) for v in d)
    if len(d) != surface.N:
        raise ValueError(f"divisor class needs {surface.N} entries, got {len(d)}")
    pts = enumerate_exponents(surface.values, d, threads)
    degs = [g.deg_y() for g in surface.generators]
    E_prime = {}
    M = [None] * surface.N
    W = [None] * surface.N
    for n in pts:
        key = (n[0], sum(k * dy for k, dy in zip(n[1:], degs[1:])))
        E_prime.setdefault(key, n)
        val = _value(n, surface.values)
        for j in range(surface.N):
            if M[j] is None or val[j] > M[j]:
                M[j], W[j] = val[j], n
    return SectionEnumeration(d=d, exponents=tuple(pts), E_prime=dict(sorted(E_prime.items())),
                              M=tuple(M), M_witness=tuple(W))


def dimension(surface: Surface, d, threads: int = 1) -> int:
    return enumerate_sections(surface, d, threads).dim


def basis(surface: Surface, d, threads: int = 1):
    """[((a, b), exponent vector, polynomial)] in (a, b) order."""
    en = enumerate_sections(surface, d, threads)
    return [(ab, n, monomial(surface, n)) for ab, n in en.E_prime.items()]


def enriques_member(surface: Surface, d, threads: int = 1):
    """(member?, per-j witness exponent vectors or None)."""
    en = enumerate_sections(surface, d, threads)
    if not en.exponents:
        return False, None
    ok = all(m == v for m, v in zip(en.M, en.d))
    return ok, (en.M_witness if ok else None)


# ---------------------------------------------------------------------------
# tropical closure


def tropical_closure(generators, box, lower=None):
    """Smallest set in the box holding 0 and the generators, closed under + and max.

    ``box`` is the per-coordinate upper bound; ``lower`` defaults to 0.
    """
    box = tuple(box)
    lower = tuple(lower) if lower is not None else (0,) * len(box)

    def inside(v):
        return all(lo <= a <= hi for a, lo, hi in zip(v, lower, box))

    zero = tuple(0 for _ in box)
    members = {zero} if inside(zero) else set()
    todo = [tuple(g) for g in generators if inside(tuple(g))]
    members.update(todo)
    todo = list(members)
    while todo:
        a = todo.pop()
        for b in list(members):
            for c in (tuple(x + y for x, y in zip(a, b)), tuple(max(x, y) for x, y in zip(a, b))):
                if c not in members and inside(c):
                    members.add(c)
                    todo.append(c)
    return members
