from fractions import Fraction as F

import pytest

from c2compact.errors import InvalidBranch, InvalidFamily, InvalidSemidegree, NotInSpol
from c2compact.field import ONE, ZERO
from c2compact.laurent import parse_poly
from c2compact.semidegree import Semidegree
from c2compact.series import Dwps, parse_dwps
from c2compact.surface import build_surface, from_one_place_branch
from c2compact.xipoly import XiPoly
from surfaces import degree_surface, phi32_surface, two_delta_surface


def test_degree_surface():
    S = degree_surface()
    assert S.family == {(0, 0): parse_poly("y")}
    assert S.omega == ((1,),)
    assert S.N_prime == 1


def test_phi32_family_and_omega():
    S = phi32_surface()
    assert S.family == {(0, 0): parse_poly("y"), (0, 1): parse_poly("y^2 - x^3")}
    assert S.omega == ((4,),)
    assert S.values == ((2,), (3,), (4,))
    assert S.lcs[2][0] == XiPoly([0, 2])


def test_two_delta_surface():
    S = two_delta_surface()
    assert S.family[(1, 1)] == parse_poly("y^3 - x^2")
    assert S.family[(0, 0)] == parse_poly("y") == S.family[(1, 0)]
    assert S.neighborhoods == (frozenset({0, 1}), frozenset({1}))
    assert S.c_pow[(0, 1)] == ONE
    assert S.c_ii == (ZERO, ZERO)
    assert S.omega == ((6, 6), (6, 5))
    assert S.values == ((3, 3), (2, 2), (6, 5))
    assert S.lcs[2] == (XiPoly([-1, 0, 0, 1]), XiPoly([0, 3]))
    # deduplication keeps the per-(i, j) view
    assert S.family_gen[(0, 0)] == S.family_gen[(1, 0)] == 1


def test_not_in_spol():
    with pytest.raises(NotInSpol):
        build_surface([Semidegree(parse_dwps("x^(5/2) + x^-1 + x^(-3/2)"), F(-5, 2))])


def test_duplicate_semidegrees_rejected():
    a = Semidegree(parse_dwps("x^(1/2)"), F(-1))
    b = Semidegree(parse_dwps("-x^(1/2)"), F(-1))
    with pytest.raises(InvalidSemidegree):
        build_surface([a, b])


def test_user_family_validated():
    delta = [Semidegree(parse_dwps("x^(3/2)"), F(1, 2))]
    S = build_surface(delta, {(0, 0): parse_poly("y + 1"), (0, 1): parse_poly("y^2 - x^3 + x")})
    assert S.omega == ((4,),)
    with pytest.raises(InvalidFamily):
        build_surface(delta, {(0, 0): parse_poly("y"), (0, 1): parse_poly("y^2 - 4*x^3")})
    with pytest.raises(InvalidFamily):
        build_surface(delta, {(0, 0): parse_poly("y"), (0, 1): parse_poly("(y^2 - x^3)*(y + x^2)")})


def test_i_in_own_neighborhood_and_transitive():
    S, _ = from_one_place_branch(parse_dwps("x^(3/4) + x^(1/4)"))
    N = S.neighborhoods
    for i in range(S.N):
        assert i in N[i]
        assert N[i] == frozenset({i}).union(*S.partitions[i].values()) if S.partitions[i] else N[i] == {i}
        for k in N[i]:
            assert N[k] <= N[i]


def test_branch_two_thirds():
    S, D = from_one_place_branch(parse_dwps("x^(2/3)"))
    assert S.N == 10
    expected = [("0", 1), ("0", F(2, 3)), ("0", F(1, 2)), ("0", 0)] + [
        ("x^(2/3)", r) for r in (F(1, 3), 0, F(-1, 3), F(-2, 3), -1, F(-4, 3))]
    assert [(str(d.phi), d.r) for d in S.semidegrees] == [(p, F(r)) for p, r in expected]
    assert S.semidegrees[-1].eval(parse_poly("y^3 - x^2")) == 0
    assert D.g == (parse_poly("x"), parse_poly("y"), parse_poly("y^3 - x^2"))
    assert D.e[(1, 2)] == 3
    assert D.j_nodes == (1,) and D.i_nodes == (3, 9)
    assert 2 not in D.B and 3 not in D.B and {0, 1, 4, 9} <= D.B


def test_branch_line():
    S, D = from_one_place_branch(parse_dwps("3*x"))
    assert S.N == 2
    assert D.g[1] == parse_poly("y - 3*x")


def test_branch_equisingular_same_omega():
    A, _ = from_one_place_branch(parse_dwps("x^(2/3) + x^(1/3)"))
    B, _ = from_one_place_branch(parse_dwps("x^(2/3) + 5*x^(1/3)"))
    assert A.N == B.N and A.omega == B.omega


def test_branch_too_steep():
    with pytest.raises(InvalidBranch):
        from_one_place_branch(parse_dwps("x^2"))


def test_one_place_lemma_neighborhoods():
    # membership matches "below and/or to the right" along the trunk
    S, D = from_one_place_branch(parse_dwps("x^(3/4) + x^(1/4)"))
    pos = D.positions
    for i in range(S.N):
        for k in range(S.N):
            if k == i:
                continue
            if i in D.B:
                expect = pos[k][0] > pos[i][0] or (pos[k][0] == pos[i][0] and pos[k][1] > pos[i][1])
            else:
                expect = pos[k][0] == pos[i][0] and pos[k][1] > pos[i][1]
            assert (k in S.neighborhoods[i]) == expect, (i, k)


def test_one_place_lc_shapes():
    import random

    S, D = from_one_place_branch(parse_dwps("x^(2/3) + x^(1/3)"))
    rng = random.Random(5)
    for _ in range(30):
        alpha = [rng.randint(0, 2) for _ in range(D.s + 2)]
        f = parse_poly("1")
        for g, a in zip(D.g, alpha):
            f = f * g ** a
        for k, delta in enumerate(S.semidegrees):
            lc = delta.lc(f)
            l1 = D.l[k] + 1
            if k not in D.B:
                assert lc.deg() == alpha[l1]
                assert lc.ord_at(S.c_ii[k]) == alpha[l1]
            elif k in D.j_nodes:
                q = D.j_nodes.index(k) + 1
                assert lc.ord_at_zero() == alpha[q]
            else:
                total = sum(alpha[i] * D.e[(l1, i)] for i in range(l1, D.s + 2))
                assert lc.deg() == total and lc.ord_at(S.c_ii[k]) == total
