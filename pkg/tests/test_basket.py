from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reidbound.basket import (
    ADMISSIBLE_INDICES, Basket, BasketError, OrbifoldPoint, admissible_points, basket_from_json,
    basket_to_json, cartier_index, check_chi_index, chi_of, enumerate_baskets, format_basket,
    parse_basket, validate_point,
)
from reidbound.oracle import brute_force_baskets


def test_validate_point():
    assert validate_point(1, 2)
    assert validate_point(3, 8)
    assert not validate_point(2, 4)  # not coprime
    assert not validate_point(3, 5)  # not normalised, b > r/2
    assert not validate_point(0, 5)
    assert not validate_point(1, 1)


def test_point_rejects_bad_data():
    with pytest.raises(BasketError):
        OrbifoldPoint(2, 6)


def test_chi_of_case3_basket():
    b = parse_basket("5x(1,2) 4x(1,3) 1x(1,6)")
    assert chi_of(b) == 1
    assert cartier_index(b) == 6
    assert len(b) == 10


def test_chi_of_empty():
    assert chi_of(Basket()) == 0
    assert cartier_index(Basket()) == 1


def test_parse_variants():
    a = parse_basket("{2x(1,2), (2,5)}")
    b = parse_basket("1x(2,5) 2×(1,2)")
    assert a == b
    assert format_basket(a) == "2x(1,2) 1x(2,5)"
    assert parse_basket("{}") == Basket()


@pytest.mark.parametrize("text", ["2x(1,4", "x(1,2)", "(1,2,3)", "3x(2,4)", "foo"])
def test_parse_malformed(text):
    with pytest.raises(BasketError):
        parse_basket(text)


def test_json_roundtrip():
    b = parse_basket("3x(1,2) 1x(1,4) 1x(1,8) 1x(3,8)")
    assert basket_to_json(b) == [[1, 2, 3], [1, 4, 1], [1, 8, 1], [3, 8, 1]]
    assert basket_from_json(basket_to_json(b)) == b
    with pytest.raises(BasketError):
        basket_from_json("[[1, 2]]")


def test_admissible_points():
    assert [str(p) for p in admissible_points(12)] == [
        "(1,2)", "(1,3)", "(1,4)", "(1,6)", "(1,12)", "(5,12)"]
    assert [str(p) for p in admissible_points(10)] == ["(1,2)", "(1,5)", "(2,5)", "(1,10)", "(3,10)"]


def test_check_chi_index():
    check_chi_index(4, 6)
    for chi, iX in ((2, 5), (1, 7), (5, 2), (0, 2)):
        with pytest.raises(BasketError):
            check_chi_index(chi, iX)
    with pytest.raises(BasketError):
        enumerate_baskets(2, 8)


# frozen counts; the index-5/8/10/12 ones are the Morrison lists
FROZEN_COUNTS = {
    (1, 2): 1, (1, 3): 1, (1, 5): 6, (1, 6): 1, (1, 8): 3, (1, 10): 6, (1, 12): 2,
}


@pytest.mark.parametrize("chi_iX,count", FROZEN_COUNTS.items())
def test_enumeration_counts(chi_iX, count):
    assert len(enumerate_baskets(*chi_iX)) == count


def test_case3_basket_is_unique():
    assert [format_basket(b) for b in enumerate_baskets(1, 6)] == ["5x(1,2) 4x(1,3) 1x(1,6)"]


def test_morrison_filter_drops_index12_without_full_point():
    raw = enumerate_baskets(1, 12, morrison=False)
    kept = enumerate_baskets(1, 12)
    assert len(raw) == 3 and len(kept) == 2
    (dropped,) = set(raw) - set(kept)
    assert format_basket(dropped) == "4x(1,3) 2x(1,4) 1x(1,6)"


@pytest.mark.parametrize("chi,iX", [(c, i) for i in (2, 3, 4, 6) for c in (1, 2)] + [(1, i) for i in (5, 8, 10, 12)])
def test_enumeration_matches_brute_force(chi, iX):
    got = {tuple((p.b, p.r) for p in b) for b in enumerate_baskets(chi, iX, morrison=False)}
    assert got == brute_force_baskets(chi, iX)


@pytest.mark.parametrize("chi,iX", [(c, i) for i in (2, 3, 4, 6) for c in (1, 2, 3, 4)])
def test_enumeration_invariants(chi, iX):
    found = enumerate_baskets(chi, iX)
    assert len(set(found)) == len(found)
    for b in found:
        assert chi_of(b) == chi
        assert cartier_index(b) == iX


points = st.sampled_from(sorted({p for i in ADMISSIBLE_INDICES for p in admissible_points(i)}))
baskets = st.lists(points, max_size=12).map(Basket)


@given(baskets)
def test_format_parse_roundtrip(b):
    assert parse_basket(format_basket(b)) == b
    assert basket_from_json(basket_to_json(b)) == b


@given(baskets, baskets)
def test_chi_additive(a, b):
    assert chi_of(Basket(a.points + b.points)) == chi_of(a) + chi_of(b)


@given(st.lists(points, max_size=8))
def test_order_independent(pts):
    assert Basket(pts) == Basket(reversed(pts))
    assert chi_of(Basket(pts)) == sum((Q(p.r ** 2 - 1, 24 * p.r) for p in pts), Q(0))
