from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reidbound.wps import (
    WORKED_EXAMPLES, WeightedVariety, cross_check_reid, degree_L3, fit_invariants,
    hilbert_coeffs, parse_variety, worked_example,
)


def test_parse():
    v = parse_variety("X2,6 in P(1,1,1,1,1,3)")
    assert v.degrees == (2, 6) and v.weights == (1, 1, 1, 1, 1, 3)
    assert str(v) == "X2,6 in P(1,1,1,1,1,3)"
    assert parse_variety("X_{10} ⊂ P(1,1,1,2,5)").degrees == (10,)
    for bad in ("X10 in P(1,1,1,2)", "X9 in P(1,1,1,2,5)", "Y10 in P(1,1,1,2,5)", "X10 in P(0,1,1,2,6)"):
        with pytest.raises(ValueError):
            parse_variety(bad)


def test_frozen_hilbert():
    assert hilbert_coeffs(parse_variety("X10 in P(1,1,1,2,5)"), 6) == [1, 3, 7, 13, 22, 35, 53]
    assert hilbert_coeffs(parse_variety("X5 in P(1,1,1,1,1)"), 3) == [1, 5, 15, 35]
    with pytest.raises(ValueError):
        hilbert_coeffs(parse_variety("X5 in P(1,1,1,1,1)"), -1)


def test_degrees():
    assert degree_L3(parse_variety("X10 in P(1,1,1,2,5)")) == 1
    assert degree_L3(parse_variety("X8 in P(1,1,1,1,4)")) == 2
    assert degree_L3(parse_variety("X2,6 in P(1,1,1,1,1,3)")) == 4


def test_fit():
    n = fit_invariants(parse_variety("X8 in P(1,1,1,1,4)"))
    assert (n.L3, n.lam, n.chi, len(n.basket)) == (2, 4, 0, 0)


def test_fit_rejects_singular_ambient():
    # P(1,1,2,2,2) has a curve of 1/2 points: no smooth fit works
    v = WeightedVariety((1, 1, 2, 2, 2), (8,))
    assert not cross_check_reid(v, 10)
    with pytest.raises(ValueError):
        fit_invariants(v)


@pytest.mark.parametrize("text,source,bound", WORKED_EXAMPLES)
def test_worked_examples(text, source, bound):
    r = worked_example(parse_variety(text), source)
    assert r["bound"] == bound
    assert cross_check_reid(parse_variety(text), 20)


def test_worked_zeta_values():
    assert worked_example(parse_variety("X10 in P(1,1,1,2,5)"), "lattice")["zeta"] == 1
    assert worked_example(parse_variety("X8 in P(1,1,1,1,4)"), "L3")["zeta"] == 2
    with pytest.raises(ValueError):
        worked_example(parse_variety("X8 in P(1,1,1,1,4)"), "other")


@given(st.integers(1, 25))
def test_quintic_matches_reid(m):
    # smooth quintic, lambda = h0(L) = 5
    n = fit_invariants(parse_variety("X5 in P(1,1,1,1,1)"))
    assert n.chi + n.lam_multiple(m) == hilbert_coeffs(parse_variety("X5 in P(1,1,1,1,1)"), m)[m]
    assert n.L3 == Q(5)
