"""Seeded random generators and invariant checks shared by the property and acceptance suites.

Each ``check_*`` draws one case from ``rng`` and raises AssertionError on a
counterexample.  ``run_property`` drives a check over many cases.
"""

import random
from fractions import Fraction
from math import lcm

from c2compact.field import FieldElem, root_of_unity
from c2compact.laurent import LaurentPoly2
from c2compact.semidegree import Semidegree
from c2compact.series import Dwps, analyze, conjugates, minpoly, star

DENOMS = (1, 2, 3, 4, 6)
SEED = 20261017
CASES = 1000


def rand_coef(rng, roots=True):
    c = FieldElem.rational(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3])))
    if roots and rng.random() < 0.2:
        c = c * root_of_unity(rng.choice([3, 4]), rng.randint(1, 2))
    return c


def rand_dwps(rng, max_terms=3, lo=-2, hi=3, roots=True):
    """Nonzero series with exponents on the grid 1/D for one D in DENOMS."""
    D = rng.choice(DENOMS)
    grid = [Fraction(k, D) for k in range(lo * D, hi * D + 1)]
    exps = rng.sample(grid, rng.randint(1, max_terms))
    return Dwps([(e, rand_coef(rng, roots)) for e in exps])


def rand_semidegree(rng, max_grid=None):
    """Random semidegree; ``max_grid`` bounds the common denominator of phi and r."""
    while True:
        phi = rand_dwps(rng, roots=False) if rng.random() < 0.85 else Dwps()
        top = phi.ord() if phi else Fraction(2)
        r = top - Fraction(rng.randint(1, 6), rng.choice(DENOMS))
        if max_grid is None or lcm(phi.polydromy(), r.denominator) <= max_grid:
            return Semidegree(phi, r)


def rand_poly(rng, terms=3):
    out = {}
    for _ in range(rng.randint(1, terms)):
        key = (rng.randint(-2, 3), rng.randint(0, 3))
        out[key] = rand_coef(rng, roots=False)
    f = LaurentPoly2(out)
    return f if f else LaurentPoly2.const(1)


def near_series(rng, delta):
    """phi plus a term at x^r: its minimal polynomial has a non-monomial lc."""
    return delta.phi + Dwps.monomial(rand_coef(rng, roots=False), delta.r)


def eval_at_series(f, psi):
    """f(x, psi(x)) by plain series arithmetic."""
    out = Dwps()
    for b in range(f.deg_y() + 1):
        coef = Dwps([(a, c) for a, c in f.y_coefficient(b).items()])
        term = coef
        for _ in range(b):
            term = term * psi
        out = out + term
    return out


# -- checks ------------------------------------------------------------------------

def check_star_composition(rng):
    phi = rand_dwps(rng)
    p = phi.polydromy()
    d, e = rng.randint(1, 3), rng.randint(1, 3)
    c = rand_coef(rng)
    lhs = star(c, p * d * e, phi)
    assert lhs == star(c ** e, p * d, phi) == star(c ** (d * e), p, phi), (phi, c, d, e)


def check_conjugates_are_stars(rng):
    phi = rand_dwps(rng)
    p = phi.polydromy()
    conj = conjugates(phi)
    assert len(conj) == p and conj[0] == phi
    for k, psi in enumerate(conj):
        assert psi == star(root_of_unity(p, k), p, phi), (phi, k)


def check_pairs_conjugacy_invariant(rng):
    phi = rand_dwps(rng)
    pd = analyze(phi)
    for psi in conjugates(phi):
        assert analyze(psi) == pd, (phi, psi)


def check_delta_multiplicative(rng):
    delta = rand_semidegree(rng)
    f, g = rand_poly(rng), rand_poly(rng)
    ef, lf = delta.leading(f)
    eg, lg = delta.leading(g)
    efg, lfg = delta.leading(f * g)
    assert efg == ef + eg, (delta, f, g)
    assert lfg == lf * lg, (delta, f, g)
    assert (efg * delta.p_tilde).denominator == 1


def check_lc_shape(rng):
    delta = rand_semidegree(rng, max_grid=6)
    f = rand_poly(rng, terms=4)
    if rng.random() < 0.5:
        f = f * minpoly(near_series(rng, delta))
    lc = delta.lc(f)
    powers = [k for k in range(lc.deg() + 1) if lc.coefficient(k)]
    assert all((k - powers[0]) % delta.P == 0 for k in powers), (delta, f, lc)


def check_delta_of_minpoly(rng):
    """deg_x g(x, phi + xi x^r) for g = minpoly(psi) is a sum over the conjugates of psi."""
    delta = rand_semidegree(rng, max_grid=6)
    if rng.random() < 0.5:
        psi = near_series(rng, delta)
    else:
        psi = rand_dwps(rng, max_terms=2, roots=False)
    g = minpoly(psi)
    expected = Fraction(0)
    for conj in conjugates(psi):
        diff = delta.phi - conj
        expected += max(diff.deg(), delta.r) if diff else delta.r
    assert delta.eval_norm(g) == expected, (delta, psi)


def _branch_near(rng, delta):
    """phi cut at a random exponent plus one lower term, so distances to phi vary."""
    cut = rng.choice([e for e, _ in delta.phi.terms] + [delta.r]) if delta.phi else delta.r
    head = delta.phi.truncate_above(cut)
    D = rng.choice((1, 2, 3))
    e = Fraction(int(cut * D) - rng.randint(-1, 2), D)
    return head + Dwps.monomial(rand_coef(rng, roots=False), e)


def _epsilon(delta, psi):
    dists = []
    for conj in conjugates(psi):
        diff = delta.phi - conj
        dists.append(max(diff.deg(), delta.r) if diff else delta.r)
    return min(dists)


def check_delta_comparison(rng):
    delta = rand_semidegree(rng, max_grid=6)
    psis = [_branch_near(rng, delta) for _ in range(2)]
    psis.sort(key=lambda psi: _epsilon(delta, psi), reverse=True)
    g1, g2 = (minpoly(psi) for psi in psis)
    assert delta.eval_norm(g1) / g1.deg_y() >= delta.eval_norm(g2) / g2.deg_y(), (delta, psis)


def check_minpoly_vanishes(rng):
    psi = rand_dwps(rng)
    g = minpoly(psi)
    assert g.is_monic_in_y() and g.deg_y() == psi.polydromy()
    assert eval_at_series(g, psi).is_zero(), psi


PROPERTIES = {
    "star composition": check_star_composition,
    "conjugates as roots of unity": check_conjugates_are_stars,
    "Puiseux pairs under conjugation": check_pairs_conjugacy_invariant,
    "value and lc multiplicative": check_delta_multiplicative,
    "lc xi-exponents congruent mod P": check_lc_shape,
    "value of a minimal polynomial": check_delta_of_minpoly,
    "value comparison by distance": check_delta_comparison,
    "minimal polynomial vanishes": check_minpoly_vanishes,
}


def run_property(check, cases=CASES, seed=SEED):
    rng = random.Random(seed)
    for _ in range(cases):
        check(rng)
    return cases
