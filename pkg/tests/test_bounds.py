from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relcomm.bounds import (
    DegenerateCenter,
    NotNested,
    bound_report,
    image_bound,
    inequality_family_check,
    m_and_M,
    monotonicity_check,
    smallest_prime_divisor,
)
from relcomm.catalog import catalog, designated_subrings
from relcomm.commutators import relative_center
from relcomm.probability import pr_brute
from relcomm.ring import enumerate_subrings, matrix_ring, ring_zn, upper_triangular_ring


def by_name(rep):
    return {b.name: b for b in rep.bounds}


@pytest.mark.parametrize("n,p", [(16, 2), (81, 3), (35, 5), (2, 2), (49, 7)])
def test_smallest_prime_divisor(n, p):
    assert smallest_prime_divisor(n) == p


def test_m_and_M_examples():
    T, M = upper_triangular_ring(2, 2), matrix_ring(2, 2)
    assert m_and_M(T.full(), T) == (2, 2)
    assert m_and_M(M.full(), M) == (4, 4)
    with pytest.raises(DegenerateCenter):
        m_and_M(ring_zn(6).full(), ring_zn(6))


def test_report_t_at_e12():
    T = upper_triangular_ring(2, 2)
    rep = bound_report(T.full(), T, T.generator(1))
    b = by_name(rep)["noncentral-over-p"]
    assert b.value == Fraction(8 - 2, 2 * 8) == Fraction(3, 8)
    assert rep.exact == Fraction(3, 8)
    assert b.holds and b.tight
    assert "image-lower" not in by_name(rep)


def test_report_t_at_zero_is_equality_case():
    T = upper_triangular_ring(2, 2)
    rep = by_name(bound_report(T.full(), T, 0))
    assert rep["image-lower"].value == rep["image-upper"].value == Fraction(5, 8)
    assert rep["image-lower"].tight and rep["image-upper"].tight
    assert "noncentral-over-p" not in rep


def test_report_m2_at_zero():
    M = matrix_ring(2, 2)
    rep = bound_report(M.full(), M, 0)
    b = by_name(rep)
    assert b["prior-upper"].value == Fraction((2 - 1) * 2 + 16, 2 * 16) == Fraction(9, 16)
    assert b["image-upper"].value == Fraction(1, 4) * (1 + Fraction(3, 8)) == Fraction(11, 32) == rep.exact
    assert b["image-upper"].value <= b["prior-upper"].value
    assert rep.all_hold


def test_report_central_subring_is_vacuous():
    R = ring_zn(6)
    rep = by_name(bound_report(R.full(), R, 0))
    assert rep["image-lower"].vacuous and rep["image-upper"].vacuous
    assert rep["image-lower"].holds


def test_monotonicity_examples():
    T = upper_triangular_ring(2, 2)
    full = T.full()
    left, right, ok = monotonicity_check(full, full, T, T.generator(1))
    assert left == right and ok
    Z = relative_center(full, T)
    left, right, ok = monotonicity_check(Z, full, T, T.generator(1))
    assert left == 0 and right == 4 * Fraction(3, 8) and ok
    with pytest.raises(NotNested):
        monotonicity_check(full, Z, T, 0)


def test_monotonicity_strict_at_zero():
    M = matrix_ring(2, 2)
    subs = enumerate_subrings(M)
    for S1 in subs:
        for S2 in subs:
            if S1.issubset(S2) and S1 != S2:
                left, right, ok = monotonicity_check(S1, S2, M, 0)
                assert ok and left < right


@pytest.mark.parametrize("R", catalog(), ids=lambda R: R.name)
def test_every_bound_holds(R):
    subs = enumerate_subrings(R) if R.size <= 64 else [S for _, S in designated_subrings(R)]
    for S in subs:
        for r in range(R.size):
            rep = bound_report(S, R, r)
            assert rep.all_hold, (R.name, S.count, r, rep.failures())
            if r != 0:
                assert rep.exact < pr_brute(S, R, 0) or rep.exact == 0 < pr_brute(S, R, 0)


@given(st.integers(1, 64), st.integers(1, 64), st.integers(1, 64))
def test_image_bound_family(n, m, c):
    n, m = min(n, m), max(n, m)
    assert inequality_family_check(n, m, c)
    assert (image_bound(n, c) == image_bound(m, c)) == (n == m or c == 1)
