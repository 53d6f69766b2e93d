from fractions import Fraction

import pytest

from relcomm.catalog import get_ring
from relcomm.commutators import commutator_subgroup, relative_center
from relcomm.isoclinism import (
    InvalidWitness,
    NotCommutativeFactor,
    ROutsideCommutatorSubgroup,
    ShapeMismatch,
    ZIsoclinismWitness,
    build_product_isoclinism,
    central_shift_invariant,
    identity_witness,
    parse_witness,
    pr_quotient_formula,
    theorem41_check,
    verify_isoclinism,
)
from relcomm.probability import pr_image_formula
from relcomm.ring import enumerate_subrings, matrix_ring, ring_zn, subring_closure, upper_triangular_ring
from relcomm.verify import corrupt_beta, negate_beta


@pytest.fixture(scope="module")
def T():
    return upper_triangular_ring(2, 2)


def test_identity_witness_passes(T):
    w = identity_witness(T.full())
    assert verify_isoclinism(w).passed
    for r in commutator_subgroup(T.full(), T).indices:
        p1, p2 = theorem41_check(w, r)
        assert p1 == p2


def test_product_with_zero_ring(T):
    w = build_product_isoclinism(T.full(), T, ring_zn(1))
    assert w.R2.size == T.size
    assert verify_isoclinism(w).passed


def test_product_t_z3(T):
    w = build_product_isoclinism(T.full(), T, ring_zn(3))
    assert verify_isoclinism(w).passed
    assert w.q1.subgroup.count == 2 and w.q2.subgroup.count == 6
    assert T.size // w.q1.subgroup.count == 4 == w.R2.size // w.q2.subgroup.count
    p1, p2 = theorem41_check(w, T.generator(1))
    assert p1 == p2 == Fraction(3, 8)
    p1, p2 = theorem41_check(w, 0)
    assert p1 == p2 == Fraction(5, 8)


def test_product_upper_in_m2():
    M = matrix_ring(2, 2)
    U = subring_closure(M, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)])
    w = build_product_isoclinism(U, M, ring_zn(2))
    assert verify_isoclinism(w).passed


def test_noncommutative_factor_rejected(T):
    with pytest.raises(NotCommutativeFactor):
        build_product_isoclinism(T.full(), T, T)


def test_non_additive_beta_rejected():
    M = matrix_ring(2, 2)
    S = subring_closure(M, [(1, 0, 0, 0)])
    assert commutator_subgroup(S, M).count == 4
    w = build_product_isoclinism(S, M, ring_zn(2))
    assert verify_isoclinism(w).passed
    report = verify_isoclinism(corrupt_beta(w))
    assert not report.passed
    assert "beta-additive" in report.failed()
    with pytest.raises(InvalidWitness):
        theorem41_check(corrupt_beta(w), 0)


def test_additive_but_incompatible_beta_rejected():
    T3 = upper_triangular_ring(3, 2)
    w = build_product_isoclinism(T3.full(), T3, ring_zn(2))
    report = verify_isoclinism(negate_beta(w))
    assert report.failed() == ["compatibility", "well-defined"]


def _swap_alpha(w, a, b):
    alpha = list(w.alpha)
    alpha[a], alpha[b] = alpha[b], alpha[a]
    return ZIsoclinismWitness(w.S1, w.S2, w.q1, w.q2, tuple(alpha), w.beta)


def test_alpha_moving_zero_coset_rejected(T):
    w = build_product_isoclinism(T.full(), T, ring_zn(3))
    assert "alpha-additive" in verify_isoclinism(_swap_alpha(w, 0, 1)).failed()


def test_swapping_generator_cosets_is_another_isoclinism_over_z2(T):
    # over Z_2 every automorphism of T/Z(T) preserves [x, y] = E12 for x, y independent
    w = build_product_isoclinism(T.full(), T, ring_zn(3))
    assert verify_isoclinism(_swap_alpha(w, 1, 2)).passed


def test_swapping_generator_cosets_over_z3_breaks_compatibility():
    T3 = upper_triangular_ring(3, 2)
    w = build_product_isoclinism(T3.full(), T3, ring_zn(2))
    # the linear map a*E11 + b*E12 -> b*E11 + a*E12 has determinant -1, so it negates commutators
    alpha = []
    for rep in w.q1.reps:
        a, b, _ = (int(c) for c in T3.coeffs[rep])
        alpha.append(w.q2.coset(T3.element([b, a, 0]).index))
    swapped = ZIsoclinismWitness(w.S1, w.S2, w.q1, w.q2, tuple(alpha), w.beta)
    assert verify_isoclinism(swapped).failed() == ["compatibility", "well-defined"]
    # composing with negation on the commutator side repairs it
    assert verify_isoclinism(negate_beta(swapped)).passed


def test_shape_mismatch(T):
    M = matrix_ring(2, 2)
    w = identity_witness(T.full())
    other = identity_witness(M.full())
    with pytest.raises(ShapeMismatch):
        verify_isoclinism(ZIsoclinismWitness(w.S1, other.S2, w.q1, other.q2, w.alpha, w.beta))


def test_r_outside_commutator_subgroup(T):
    w = identity_witness(T.full())
    with pytest.raises(ROutsideCommutatorSubgroup):
        theorem41_check(w, T.generator(0))


def test_serialize_roundtrip(T):
    w = build_product_isoclinism(T.full(), T, ring_zn(3))
    back = parse_witness(w.serialize(), w.S1, w.S2)
    assert back.alpha == w.alpha and back.beta == w.beta
    assert verify_isoclinism(back).passed


def test_alternate_representatives_accepted(T):
    w = build_product_isoclinism(T.full(), T, ring_zn(3))
    for seed in range(5):
        assert verify_isoclinism(w, seed=seed).passed


@pytest.mark.parametrize("name", ["T2_Z2", "M2_Z2", "T2_Z3", "N3_Z2", "T2_Z2xZ3"])
def test_product_witnesses_and_invariance(name):
    R = get_ring(name)
    for S in enumerate_subrings(R):
        if relative_center(S, R) == S:
            continue
        for A in (ring_zn(2), ring_zn(3), ring_zn(4)):
            w = build_product_isoclinism(S, R, A)
            report = verify_isoclinism(w)
            assert report.passed, report
            for r in commutator_subgroup(S, R).indices:
                p1, p2 = theorem41_check(w, r, report=report)
                assert p1 == p2


@pytest.mark.parametrize("name", ["T2_Z2", "M2_Z2", "T2_Z3", "M2_Z2xZ2"])
def test_quotient_form_and_central_shift(name):
    R = get_ring(name)
    for S in enumerate_subrings(R):
        assert central_shift_invariant(S)
        for r in range(R.size):
            assert pr_quotient_formula(S, r) == pr_image_formula(S, R, r)
