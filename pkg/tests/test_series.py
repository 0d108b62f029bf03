from fractions import Fraction as F

import pytest

from c2compact.field import ONE, root_of_unity
from c2compact.laurent import LaurentPoly2, parse_poly
from c2compact.series import NEG_INF, Dwps, analyze, conjugates, format_dwps, minpoly, parse_dwps, star


def test_parse_and_format_round_trip():
    for text in ["x^(5/2) + x^(-3/2)", "2*x^(2/3) - 5", "x", "-x^(1/3)", "0"]:
        assert format_dwps(parse_dwps(text)) == text


def test_degree_of_zero():
    assert Dwps().deg() is NEG_INF
    assert NEG_INF < F(-1000)


def test_analyze_pairs():
    pd = analyze(parse_dwps("x^(5/2) + x^(-3/2)"))
    assert pd.polydromy == 2
    assert pd.pairs == ((5, 2),)
    pd = analyze(parse_dwps("x^(3/4) + x^(1/2) + x^(1/8)"))
    assert pd.pairs == ((3, 4), (1, 2))
    assert pd.char_exps == (F(3, 4), F(1, 8))


def test_conjugates_count_and_distinct():
    phi = parse_dwps("x^(2/3) + x^(1/3)")
    cs = conjugates(phi)
    assert len(cs) == 3 and len(set(cs)) == 3 and cs[0] == phi


def test_star_matches_conjugates():
    phi = parse_dwps("x^(3/4) + 2*x^(1/4)")
    z = root_of_unity(4)
    assert [star(z ** k, 4, phi) for k in range(4)] == conjugates(phi)


def test_star_rejects_bad_r():
    with pytest.raises(ValueError):
        star(ONE, 3, parse_dwps("x^(1/2)"))


@pytest.mark.parametrize("series, poly", [
    ("x^(5/2) + x^(-3/2)", "y^2 - x^5 - 2*x - x^-3"),
    ("x^(2/3) + x^(1/3)", "y^3 - 3*x*y - x^2 - x"),
    ("x^(3/4) + x^(1/4)", "y^4 - 4*x*y^2 - x^3 + 2*x^2 - x"),
    ("2*x", "y - 2*x"),
])
def test_minpoly(series, poly):
    assert minpoly(parse_dwps(series)) == parse_poly(poly)


def test_truncations():
    phi = parse_dwps("x^(5/2) + x - x^(-3/2)")
    assert phi.truncate_above(1) == parse_dwps("x^(5/2)")
    assert phi.truncate_geq(1) == parse_dwps("x^(5/2) + x")


def test_declared_grid_validation():
    with pytest.raises(ValueError):
        Dwps([(F(1, 2), 1)], p=3)
