"""Surfaces assembled from semidegrees: curvette families, neighborhoods, Omega."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd

from .errors import InvalidBranch, InvalidFamily, InvalidSemidegree, NotInSpol
from .field import ZERO
from .keyforms import dwps_roots, key_forms
from .laurent import LaurentPoly2
from .semidegree import Semidegree
from .series import Dwps, analyze, conjugates, minpoly


@dataclass
class Surface:
    """A compactification described by semidegrees delta_1..delta_N (0-based here).

    ``family[(i, j)]`` is f_ij for 0 <= j <= l_i.  ``generators`` lists x, y
    and the distinct f_ij; ``family_gen[(i, j)]`` is the generator index of
    f_ij, so deduplication never loses the per-(i, j) view.
    """

    semidegrees: tuple
    family: dict
    family_keys: tuple
    generators: tuple
    family_gen: dict
    neighborhoods: tuple
    c_pow: dict
    c_ii: tuple
    partitions: tuple
    omega: tuple
    values: tuple = field(repr=False)  # values[g][i] = delta_i(generator g)
    lcs: tuple = field(repr=False)     # lcs[g][i] = lc_i(generator g)

    @property
    def N(self) -> int:
        return len(self.semidegrees)

    @property
    def N_prime(self) -> int:
        return len(self.family_keys)

    def last_form(self, i) -> LaurentPoly2:
        return self.family[(i, self.semidegrees[i].l)]

    def p_tilde(self, i) -> int:
        return self.semidegrees[i].p_tilde

    def p(self, i) -> int:
        return self.semidegrees[i].p

    def P(self, i) -> int:
        return self.semidegrees[i].P

    def delta_vector(self, f: LaurentPoly2) -> tuple:
        return tuple(d.eval(f) for d in self.semidegrees)


def truncated_semidegree(delta: Semidegree, j: int) -> Semidegree:
    """delta_ij: generic series [phi]_{>r_{j+1}} + xi x^{r_{j+1}}."""
    r = delta.formal.char_exps[j]
    return Semidegree(delta.phi.truncate_above(r), r)


def curvette_family(semidegrees) -> dict:
    """Auto-generated f_ij (last key forms of the truncations)."""
    family = {}
    for i, delta in enumerate(semidegrees):
        for j in range(delta.l + 1):
            seq = key_forms(truncated_semidegree(delta, j))
            if not seq.last_is_polynomial:
                raise NotInSpol(f"key form {seq.last} of semidegree {i} is not a polynomial")
            family[(i, j)] = seq.last
    return family


def validate_family_member(delta: Semidegree, j: int, f: LaurentPoly2) -> None:
    """f must have one place at infinity with root agreeing with phi above r_{j+1}."""
    r = delta.formal.char_exps[j]
    head = delta.phi.truncate_above(r)
    where = f"f[{j}] = {f}"
    if f.is_zero() or not f.is_polynomial():
        raise InvalidFamily(f"{where} is not a nonzero polynomial")
    if f.deg_y() != head.polydromy():
        raise InvalidFamily(f"{where} has y-degree {f.deg_y()}, expected {head.polydromy()}")
    try:
        res = dwps_roots(f, r - 1)
    except ValueError as exc:
        raise InvalidFamily(f"{where}: {exc}") from None
    if len(res.groups) != 1 or res.x_power != 0:
        raise InvalidFamily(f"{where} does not have one place at infinity")
    roots = res.groups[0]
    if sum(m for _, m in roots) != f.deg_y():
        raise InvalidFamily(f"{where} does not have one place at infinity")
    if not any(root.truncate_above(r) == head for root, _ in roots):
        raise InvalidFamily(f"{where} has no root agreeing with {head} above {r}")


def _in_ball(outer: Semidegree, inner: Semidegree) -> bool:
    if inner.r > outer.r:
        return False
    return any((c - outer.phi).deg() <= outer.r for c in conjugates(inner.phi))


def build_surface(semidegrees, family=None) -> Surface:
    semidegrees = tuple(semidegrees)
    if not semidegrees:
        raise InvalidSemidegree("a surface needs at least one semidegree")
    for a in range(len(semidegrees)):
        for b in range(a):
            if semidegrees[a].same_as(semidegrees[b]):
                raise InvalidSemidegree(f"semidegrees {b} and {a} coincide")
    auto = curvette_family(semidegrees)
    if family is not None:
        family = dict(family)
        if set(family) != set(auto):
            raise InvalidFamily(f"family must be indexed by exactly {sorted(auto)}")
        for (i, j), f in family.items():
            validate_family_member(semidegrees[i], j, f)
    else:
        family = auto
    keys = tuple(sorted(family))

    gens = [LaurentPoly2.x(), LaurentPoly2.y()]
    index = {g: k for k, g in enumerate(gens)}
    family_gen = {}
    for key in keys:
        f = family[key]
        if f not in index:
            index[f] = len(gens)
            gens.append(f)
        family_gen[key] = index[f]

    leads = [[d.leading(g) for d in semidegrees] for g in gens]
    values = tuple(tuple(int(e * d.p_tilde) for (e, _), d in zip(row, semidegrees))
                   for row in leads)
    lcs = tuple(tuple(lc for _, lc in row) for row in leads)

    N = len(semidegrees)
    last_gen = [family_gen[(i, semidegrees[i].l)] for i in range(N)]
    nbhd = tuple(frozenset(k for k in range(N) if _in_ball(semidegrees[i], semidegrees[k]))
                 for i in range(N))
    c_pow = {}
    for i in range(N):
        for k in nbhd[i]:
            lc = lcs[last_gen[k]][i]
            try:
                _, _, c, _ = lc.shape(semidegrees[i].P)
            except ValueError:
                raise InvalidFamily(
                    f"lc of f[{k}] under semidegree {i} is {lc}, not of the form "
                    f"xi^s (xi^{semidegrees[i].P} - c)^t") from None
            c_pow[(i, k)] = c
    c_ii = tuple(c_pow[(i, i)] if semidegrees[i].P == 1 else ZERO for i in range(N))
    partitions = []
    for i in range(N):
        groups = {}
        for k in sorted(nbhd[i] - {i}):
            groups.setdefault(c_pow[(i, k)], []).append(k)
        partitions.append({c: frozenset(v) for c, v in groups.items()})

    omega = []
    for i in range(N):
        row = []
        for j in range(N):
            dj = semidegrees[j]
            if i not in nbhd[j]:
                w = dj.P * values[last_gen[j]][i]
            else:
                w = Fraction(dj.P * semidegrees[i].p_tilde * values[last_gen[j]][j], dj.p_tilde)
                assert w.denominator == 1, "non-integral omega entry"
                w = int(w)
            row.append(w)
        omega.append(tuple(row))

    for i in range(N):
        for k in nbhd[i]:
            assert semidegrees[k].p_tilde % semidegrees[i].p == 0, "p_i must divide p~_k"
        if c_ii[i]:
            assert semidegrees[i].P == 1

    return Surface(semidegrees=semidegrees, family=family, family_keys=keys,
                   generators=tuple(gens), family_gen=family_gen, neighborhoods=nbhd,
                   c_pow=c_pow, c_ii=c_ii, partitions=tuple(partitions),
                   omega=tuple(omega), values=values, lcs=lcs)


# ---------------------------------------------------------------------------
# one-place branches


@dataclass(frozen=True)
class OnePlaceData:
    """Combinatorics of the surface resolving a pencil with one place at infinity.

    ``g`` is g_0 = x, g_1, ..., g_{s+1}; ``e[(k1, k2)]`` = deg g_k2 / deg g_k1.
    Node 0 is the degree; ``B`` holds the nodes on the horizontal trunk.
    ``j_nodes[q-1]`` is the trivalent node for the q-th characteristic
    exponent, ``i_nodes[q-1]`` the bottom of its vertical segment (the last
    entry being the final node), and ``i_prime[q-1]`` the first node of
    stage q.  ``positions`` places every node as (column, depth).
    """

    branch: Dwps
    g: tuple
    e: dict
    B: frozenset
    l: tuple
    j_nodes: tuple
    i_nodes: tuple
    i_prime: tuple
    positions: tuple
    exponents: tuple
    s: int


def _stern_brocot(lo: int, target: Fraction):
    """Mediants strictly between lo and lo+1 visited while descending to target."""
    below, above = [], []
    L, H = Fraction(lo), Fraction(lo + 1)
    while True:
        m = Fraction(L.numerator + H.numerator, L.denominator + H.denominator)
        if m == target:
            return below, above
        if m < target:
            below.append(m)
            L = m
        else:
            above.append(m)
            H = m


def from_one_place_branch(psi: Dwps, family=None):
    """Surface and combinatorial data for the branch y = psi at infinity."""
    if psi and psi.deg() > 1:
        raise InvalidBranch(f"branch {psi} has degree > 1")
    g_last = minpoly(psi)
    if not g_last.is_polynomial():
        raise InvalidBranch(f"minimal polynomial {g_last} of {psi} is not a polynomial")
    pd = analyze(psi)
    exps = pd.char_exps
    s = len(exps)

    nodes = [(Dwps(), Fraction(1), "h", None)]
    i_prime, j_nodes, i_nodes = [], [], []
    rho, D = Fraction(1), 1
    for q, (e, (_, pq)) in enumerate(zip(exps, pd.pairs), 1):
        i_prime.append(len(nodes) - 1 if q == 1 else len(nodes))
        while rho - Fraction(1, D) > e:
            rho -= Fraction(1, D)
            nodes.append((psi.truncate_above(rho), rho, "h", None))
        lo = floor(e * D)
        below, above = _stern_brocot(lo, e * D)
        head = psi.truncate_above(e)
        for m in above:
            nodes.append((head, m / D, "h", None))
        j_nodes.append(len(nodes))
        nodes.append((head, e, "h", None))
        for m in sorted(below + [Fraction(lo)], reverse=True):
            nodes.append((head, m / D, "v", q))
        i_nodes.append(len(nodes) - 1)
        rho, D = e, D * pq
    rho_N = -sum((psi - c).deg() for c in conjugates(psi)[1:]) if s else Fraction(0)
    if not rho_N < rho or (rho_N * D).denominator != 1:
        raise InvalidBranch(f"final exponent {rho_N} is inconsistent with the branch")
    i_prime.append(len(nodes))
    while rho > rho_N:
        rho -= Fraction(1, D)
        nodes.append((psi.truncate_above(rho), rho, "h", None))
    i_nodes.append(len(nodes) - 1)

    semidegrees = [Semidegree(phi, r) for phi, r, _, _ in nodes]

    g = [LaurentPoly2.x()]
    for e in exps:
        g.append(key_forms(Semidegree(psi.truncate_above(e), e)).last)
    g.append(g_last)
    if family is None:
        family = {(k, j): g[j + 1] for k, d in enumerate(semidegrees) for j in range(d.l + 1)}
    surface = build_surface(semidegrees, family)

    degs = [f.total_degree() for f in g]
    e_ratio = {(a, b): Fraction(degs[b], degs[a])
               for a in range(1, s + 2) for b in range(a, s + 2)}

    col, positions = 0, []
    for idx, (_, _, kind, q) in enumerate(nodes):
        if kind == "h":
            positions.append((col, 0))
            col += 1
        else:
            top = positions[j_nodes[q - 1]][0]
            depth = 1 + sum(1 for k in range(j_nodes[q - 1] + 1, idx) if nodes[k][3] == q)
            positions.append((top, depth))
    B = frozenset(k for k, (_, _, kind, _) in enumerate(nodes) if kind == "h")

    data = OnePlaceData(branch=psi, g=tuple(g), e=e_ratio, B=B,
                        l=tuple(d.l for d in semidegrees), j_nodes=tuple(j_nodes),
                        i_nodes=tuple(i_nodes), i_prime=tuple(i_prime),
                        positions=tuple(positions), exponents=tuple(exps), s=s)
    _check_one_place(surface, data)
    return surface, data


def _check_one_place(surface: Surface, data: OnePlaceData) -> None:
    last = surface.semidegrees[-1]
    if last.eval(data.g[-1]) != 0:
        raise InvalidBranch("final semidegree does not vanish on the branch polynomial")
    for d in surface.semidegrees:
        vals = [d.eval(f) for f in data.g]
        pairs = d.formal.pairs
        for j in range(1, d.l + 2):
            ratio = Fraction(gcd(*vals[:j]), gcd(*vals[:j + 1]))
            if ratio != pairs[j - 1][1]:
                raise InvalidBranch(f"gcd identity fails for {d} at j={j}")
    for i, d in enumerate(surface.semidegrees):
        if d.eval(surface.last_form(i)) < 0:
            raise InvalidBranch(f"{d} has a negative value on its last key form")
