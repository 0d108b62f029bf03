from fractions import Fraction as F

import pytest

from c2compact.errors import RootNotSolvable
from c2compact.field import FieldElem, root_of_unity
from c2compact.keyforms import classify_semidegree, classify_surface, dwps_roots, key_forms
from c2compact.laurent import parse_poly
from c2compact.semidegree import Semidegree
from c2compact.series import Dwps, conjugates, minpoly, parse_dwps

ROWS = [
    (Semidegree(Dwps(), F(3, 2)), ["x", "y"]),
    (Semidegree(parse_dwps("x^(5/2)"), F(-1)), ["x", "y", "y^2 - x^5"]),
    (Semidegree(parse_dwps("x^(5/2) + x^(-3/2)"), F(-5, 2)),
     ["x", "y", "y^2 - x^5", "y^2 - x^5 - 2*x"]),
    (Semidegree(parse_dwps("x^(5/2) + x^-1 + x^(-3/2)"), F(-5, 2)),
     ["x", "y", "y^2 - x^5", "y^2 - x^5 - 2*x^-1*y", "y^2 - x^5 - 2*x^-1*y - 2*x"]),
]


@pytest.mark.parametrize("delta, expected", ROWS)
def test_table_rows(delta, expected):
    assert list(key_forms(delta).forms) == [parse_poly(t) for t in expected]


@pytest.mark.parametrize("c", [FieldElem.rational(3), FieldElem.rational(F(-1, 2)),
                               root_of_unity(3), root_of_unity(4) * 2])
def test_second_row_with_coefficient(c):
    delta = Semidegree(Dwps([(F(5, 2), c)]), F(-1))
    forms = key_forms(delta).forms
    assert forms[-1] == parse_poly("y^2") - parse_poly("x^5") * c ** 2


def test_second_row_other_exponents():
    delta = Semidegree(parse_dwps("x^(2/3)"), F(-2))
    assert key_forms(delta).forms[-1] == parse_poly("y^3 - x^2")


def test_classification_flags():
    assert classify_semidegree(ROWS[2][0]).last_polynomial
    assert classify_semidegree(ROWS[2][0]).delta_of_last == 0
    c4 = classify_semidegree(ROWS[3][0])
    assert not c4.last_polynomial and c4.delta_of_last == 0
    bad = classify_semidegree(Semidegree(parse_dwps("x^(-1/2)"), F(-1)))
    assert not bad.last_polynomial and not bad.nonneg


def test_classify_surface():
    cls = classify_surface([ROWS[2][0]])
    assert cls.in_S_num and cls.in_S_pol and cls.in_S_pol_plus
    cls = classify_surface([ROWS[3][0]])
    assert cls.in_S_num and not cls.in_S_pol
    cls = classify_surface([Semidegree(parse_dwps("x^(-1/2)"), F(-1))])
    assert not cls.in_S_num


def test_all_polynomial_iff_last_polynomial():
    for delta, _ in ROWS:
        seq = key_forms(delta)
        assert seq.all_polynomial == seq.last_is_polynomial


def test_y_degrees_nondecreasing_and_divide():
    delta = Semidegree(parse_dwps("x^(3/4) + x^(1/4) + x^(-1/8)"), F(-1, 4))
    seq = key_forms(delta)
    degs = [f.deg_y() for f in seq.forms[1:]]
    assert degs == sorted(degs) and all(degs[-1] % d == 0 for d in degs)
    assert degs[-1] == 8


def test_roots_of_binomial():
    res = dwps_roots(parse_poly("y^2 - x^5"), -10)
    roots = {r for r, _ in res.all_roots()}
    assert roots == {parse_dwps("x^(5/2)"), parse_dwps("-x^(5/2)")}
    assert len(res.groups) == 1


def test_roots_row3_expansion():
    res = dwps_roots(parse_poly("y^2 - x^5 - 2*x"), -6)
    roots = {r for r, _ in res.all_roots()}
    assert parse_dwps("x^(5/2) + x^(-3/2) - 1/2*x^(-11/2)") in roots


def test_linear_root():
    res = dwps_roots(parse_poly("y - x"), -3)
    assert res.all_roots() == [(parse_dwps("x"), 1)]


def test_minpoly_roots_are_conjugates():
    phi = parse_dwps("x^(2/3) + x^(1/3)")
    res = dwps_roots(minpoly(phi), phi.ord() - 1)
    assert {r for r, _ in res.all_roots()} == set(conjugates(phi))


def test_groups_split_distinct_branches():
    f = parse_poly("(y^2 - x^3)*(y - x)")
    res = dwps_roots(f, -2)
    assert sorted(len(g) for g in res.groups) == [1, 2]


def test_unsolvable_edge_polynomial():
    with pytest.raises(RootNotSolvable) as exc:
        dwps_roots(parse_poly("y^2 - 2*x^2"), -1)
    assert exc.value.poly is not None


def test_value_two_ways():
    # direct substitution against the product over roots of the last key form
    delta = ROWS[2][0]
    f = key_forms(delta).forms[-1]
    res = dwps_roots(f, delta.r - 4)
    total = F(0)
    for root, mult in res.all_roots():
        diff = delta.phi - root
        top = max(diff.deg(), delta.r) if diff else delta.r
        total += mult * top
    assert delta.eval(f) == total * delta.p_tilde
