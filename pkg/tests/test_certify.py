from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from reidbound.basket import ADMISSIBLE_INDICES, parse_basket
from reidbound.certify import (
    CertificationError, birational_from, case_analysis, case_table, global_bound, mu0_upper,
    non_pencil_certified, rho0_bound, verify_certificate, zeta_lower,
)
from reidbound.reid import FREE, Fixed, Numerics

PAPER = {2: 11, 3: 16, 4: 14, 5: 14, 6: 16, 8: 16, 10: 17, 12: 17}


def test_scalar_examples():
    assert birational_from(1, 1, 1, 1, 1) == 5
    assert birational_from(4, 8, Q(3, 2), 5, Q(3, 10)) == 17
    assert mu0_upper(6, 5, True) == Q(3, 2)
    assert mu0_upper(6, 5, False) == 6
    assert zeta_lower(10, Q(3, 2), 8) == Q(3, 10)
    assert zeta_lower(5, 1, 6) == Q(2, 5)
    assert zeta_lower(2, 2, 4) == Q(1, 2)
    with pytest.raises(CertificationError):
        mu0_upper(4, 1, True)
    with pytest.raises(CertificationError):
        birational_from(1, 1, 1, 1, 0)
    with pytest.raises(CertificationError):
        zeta_lower(5, 0, 1)


@given(st.integers(1, 10), st.integers(1, 10), st.fractions(min_value=Q(1, 12), max_value=10),
       st.integers(1, 8), st.fractions(min_value=Q(1, 12), max_value=2))
def test_birational_from_is_least(m0, m1, mu0, rho0, zeta):
    m = birational_from(m0, m1, mu0, rho0, zeta)
    assert m > m0 + m1 + rho0 - 1 and m > mu0 + m1 + 2 / zeta
    assert not (m - 1 > m0 + m1 + rho0 - 1 and m - 1 > mu0 + m1 + 2 / zeta)


@given(st.sampled_from(ADMISSIBLE_INDICES), st.fractions(min_value=Q(1, 20), max_value=20), st.integers(1, 30))
def test_zeta_on_lattice(iX, mu0, m1):
    z = zeta_lower(iX, mu0, m1)
    assert (iX * z).denominator == 1 and 0 < z <= 1


def test_rho0_frozen():
    assert {i: rho0_bound(i) for i in ADMISSIBLE_INDICES} == {
        2: 4, 3: 4, 4: 5, 5: 3, 6: 6, 8: 4, 10: 5, 12: 5}
    with pytest.raises(CertificationError):
        rho0_bound(7)


def test_non_pencil_case3():
    b = parse_basket("5x(1,2) 4x(1,3) 1x(1,6)")
    res = [FREE] * 9 + [Fixed(0)]
    ok, form = non_pencil_certified(b, 7, res, mode="paper")
    assert ok and form.minimum(6) > 0
    ok3, _ = non_pencil_certified(b, 3, res, mode="paper")
    assert not ok3
    n = Numerics(b, Q(1, 6), Q(1, 6))
    assert non_pencil_certified(b, 7, res, numerics=n)[0]


def test_case_table_paper():
    assert case_table("paper") == PAPER
    assert global_bound("paper") == 17


@pytest.mark.parametrize("iX", ADMISSIBLE_INDICES)
def test_sharp_never_worse(iX):
    assert case_analysis(iX, "sharp").case_bound <= PAPER[iX]


def test_case_bad_input():
    with pytest.raises(CertificationError):
        case_analysis(7)
    with pytest.raises(CertificationError):
        case_analysis(6, "loose")


def test_case10_branches():
    cert = case_analysis(10, "paper")
    got = [(s.m0, s.m1, s.mu0_upper, s.zeta_lb, s.final_m) for s in cert.scenarios]
    assert got == [(4, 8, Q(3, 2), Q(3, 10), 17), (4, 6, Q(4), Q(3, 10), 17)]
    assert cert.scenarios[0].h0_floor == {4: 2, 6: 5, 8: 10}
    assert cert.rho0 == 5


def test_case5_three_branches():
    cert = case_analysis(5, "paper")
    assert [(s.m1, s.mu0_upper) for s in cert.scenarios] == [(6, 1), (5, 2), (4, 4)]
    assert cert.case_bound == 14


def test_case6_two_families():
    cert = case_analysis(6, "paper")
    fams = {s.family for s in cert.scenarios}
    assert len(fams) == 2
    assert cert.chis == (1, 2, 3, 4)


def test_verify_catches_tampering():
    cert = case_analysis(8, "paper")
    verify_certificate(cert)
    cert.scenarios[0].final_m += 1
    with pytest.raises(CertificationError):
        verify_certificate(cert)
    cert = case_analysis(8, "paper")
    cert.case_bound = 99
    with pytest.raises(CertificationError):
        verify_certificate(cert)
    cert = case_analysis(8, "paper")
    cert.scenarios[0].zeta_lb = Q(1)
    with pytest.raises(CertificationError):
        verify_certificate(cert)


def test_json_lines_shape():
    rows = case_analysis(12, "paper").to_json_lines()
    assert len(rows) == 2
    assert all(r["case_bound"] == 17 and r["iX"] == 12 for r in rows)
    assert rows[0]["mu0_upper"] == "3/2" and rows[0]["zeta_lb"] == "1/3"
