import itertools
import random

import pytest

from c2compact.errors import NotEquisingular
from c2compact.sections import enriques_member
from c2compact.series import parse_dwps
from c2compact.surface import from_one_place_branch
from c2compact.zariski import (equisingular_compare, is_bpf_at_infinity, one_place_is_bpf,
                               one_place_mu_nu, semigroup_member_bounded, solve_for_a,
                               zariski_data)
from surfaces import degree_surface, phi32_surface, two_delta_surface


@pytest.fixture(scope="module")
def x23():
    return from_one_place_branch(parse_dwps("x^(2/3)"))


@pytest.mark.parametrize("a, d, m", [((1, 0), (6, 6), (3, 0)),
                                     ((0, 1), (6, 5), (3, 1)),
                                     ((0, 0), (0, 0), (0, 0))])
def test_zariski_data_two_delta(a, d, m):
    zd = zariski_data(two_delta_surface(), a)
    assert zd.d == d and zd.m == m


def test_zariski_data_rejects_negative():
    with pytest.raises(ValueError):
        zariski_data(two_delta_surface(), (-1, 0))


def test_solve_for_a_roundtrip():
    S = two_delta_surface()
    for a in itertools.product(range(4), repeat=2):
        assert solve_for_a(S, zariski_data(S, a).d) == [a]
    assert solve_for_a(S, (3, 3)) == []


def test_bpf_two_delta():
    S = two_delta_surface()
    rep = is_bpf_at_infinity(S, (6, 6))
    assert rep.bpf and rep.a == (1, 0)
    assert is_bpf_at_infinity(S, (6, 5)).bpf


@pytest.mark.parametrize("k", range(6))
def test_degree_surface_every_class_bpf(k):
    assert is_bpf_at_infinity(degree_surface(), (k,)).bpf


def test_no_a_reported():
    rep = is_bpf_at_infinity(phi32_surface(), (3,))
    assert not rep.bpf and rep.violated == "no-a" and rep.a is None
    assert rep.to_json()["violated"] == "no-a"


def test_condition_violation_reported(x23):
    S, data = x23
    a = tuple(int(k == 8) for k in range(S.N))
    d = zariski_data(S, a).d
    rep = is_bpf_at_infinity(S, d)
    assert (rep.bpf, rep.a, rep.violated, rep.index) == (False, a, "min-xi", 8)
    assert (rep.expected, rep.actual) == (0, 1)
    assert one_place_is_bpf(S, data, d).violated == "min-xi"


def test_semigroup_member():
    S = two_delta_surface()
    assert semigroup_member_bounded(S, (6, 6), 20).status == "true"
    res = semigroup_member_bounded(S, (12, 12), 20)
    assert res.status == "true"
    assert tuple(map(sum, zip(*res.certificate))) == (12, 12)
    assert semigroup_member_bounded(S, (0, 0), 20).status == "true"
    assert semigroup_member_bounded(S, (1, 0), 20).status == "false-within-bound"


def test_mu_nu_hand_values(x23):
    # values derived by hand from e, l, B and the node list of this branch
    _, data = x23
    assert data.l[2] == 0 and 2 not in data.B
    assert one_place_mu_nu(data, (0, 1, 0), 2) == (1, 1)
    assert one_place_mu_nu(data, (0, 0, 1), 0) == (3, 3)
    assert one_place_mu_nu(data, (0, 0, 1), 1) == (3, 0)
    assert one_place_mu_nu(data, (2, 1, 1), 4) == (1, 1)
    assert one_place_mu_nu(data, (0, 0, 0), 5) == (0, 0)


def test_mu_nu_argument_checks(x23):
    _, data = x23
    with pytest.raises(ValueError):
        one_place_mu_nu(data, (0, 0), 0)
    with pytest.raises(IndexError):
        one_place_mu_nu(data, (0, 0, 0), 99)


def test_one_place_test_agrees_with_general(x23):
    S, data = x23
    rng = random.Random(7)
    for _ in range(30):
        a = tuple(rng.randint(0, 1) for _ in range(S.N))
        d = zariski_data(S, a).d
        assert is_bpf_at_infinity(S, d).bpf == one_place_is_bpf(S, data, d).bpf


def test_bpf_implies_enriques():
    S = two_delta_surface()
    for d in itertools.product(range(13), repeat=2):
        if is_bpf_at_infinity(S, d).bpf:
            assert enriques_member(S, d)[0], d


def test_not_equisingular():
    with pytest.raises(NotEquisingular):
        equisingular_compare(parse_dwps("x^(2/3)"), parse_dwps("x^(3/4)"), 3)


def test_same_branch_compares_identical():
    phi = parse_dwps("x^(2/3)")
    rep = equisingular_compare(phi, phi, 2, sample=30, seed=1, bpf=False)
    assert rep.identical and not rep.exhaustive and rep.checked >= 30
