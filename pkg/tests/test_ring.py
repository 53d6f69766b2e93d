import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import mat_comm, mat_mul, subgroups_by_subsets
from relcomm.catalog import catalog, get_ring
from relcomm.commutators import relative_center
from relcomm.ring import (
    CoefficientOutOfRange,
    EnumerationBoundExceeded,
    NotAssociative,
    NotWellDefined,
    RingSpec,
    additive_index,
    build_ring,
    direct_product,
    elem_add,
    elem_commutator,
    elem_mul,
    elem_neg,
    enumerate_subrings,
    is_subring,
    make_subring,
    matrix_ring,
    ring_zn,
    subring_closure,
    upper_triangular_ring,
)

# first table in lexicographic order, found by checking all 4^3 element
# triples of every 2-generator table over Z_2 + Z_2: e2*e1 = e2, rest zero
NON_ASSOCIATIVE = (((0, 0), (0, 0)), ((0, 1), (0, 0)))


def test_build_zn_spec():
    R = build_ring(RingSpec("Z6", (6,), (((1,),),)))
    assert R.size == 6
    assert R.element([5]).index == 5


def test_pinned_non_associative_table():
    with pytest.raises(NotAssociative) as exc:
        build_ring(RingSpec("bad", (2, 2), NON_ASSOCIATIVE))
    assert len(exc.value.triple) == 3


def test_spec_example_table_is_actually_associative():
    # e1*e1 = e2 with all other products zero
    R = build_ring(RingSpec("ok", (2, 2), (((0, 1), (0, 0)), ((0, 0), (0, 0)))))
    assert R.size == 4


def _brute_assoc(table):
    vecs = list(itertools.product(range(2), repeat=2))

    def mul(x, y):
        out = [0, 0]
        for i, j, l in itertools.product(range(2), repeat=3):
            out[l] = (out[l] + x[i] * y[j] * table[i][j][l]) % 2
        return tuple(out)

    return all(mul(mul(x, y), z) == mul(x, mul(y, z)) for x, y, z in itertools.product(vecs, repeat=3))


def test_generator_triples_agree_with_element_triples():
    vecs = list(itertools.product(range(2), repeat=2))
    for prods in itertools.product(vecs, repeat=4):
        table = ((prods[0], prods[1]), (prods[2], prods[3]))
        spec = RingSpec("t", (2, 2), table)
        if _brute_assoc(table):
            build_ring(spec)
        else:
            with pytest.raises(NotAssociative):
                build_ring(spec)


def test_z4_doubling_product():
    R = build_ring(RingSpec("Z4d", (4,), (((2,),),)))
    one = R.element([1])
    assert elem_mul(R, one, one).coeffs == (2,)
    assert elem_mul(R, R.element([3]), R.element([3])).coeffs == (2,)  # 9 * 2 = 18 = 2 mod 4


def test_coefficient_out_of_range():
    with pytest.raises(CoefficientOutOfRange):
        build_ring(RingSpec("bad", (3,), (((3,),),)))


def test_not_well_defined():
    # e1 of order 2 cannot square to a generator of order 4
    with pytest.raises(NotWellDefined) as exc:
        build_ring(RingSpec("bad", (2, 4), (((0, 1), (0, 0)), ((0, 0), (0, 0)))))
    assert exc.value.triple == (1, 1, 2)


@pytest.mark.parametrize("n", [1, 2, 6])
def test_ring_zn(n):
    R = ring_zn(n)
    assert R.size == n
    assert R.is_commutative
    if n == 2:
        e = R.element([1])
        assert elem_mul(R, e, e) == e


@pytest.mark.parametrize("n,d,size", [(2, 2, 16), (2, 1, 2), (3, 2, 81)])
def test_matrix_ring_sizes(n, d, size):
    assert matrix_ring(n, d).size == size


def test_m2_z2_matches_matrix_multiplication():
    R = matrix_ring(2, 2)
    for a, b in itertools.product(range(R.size), repeat=2):
        A = tuple(R.coeffs[a])
        B = tuple(R.coeffs[b])
        ma = (A[0:2], A[2:4])
        mb = (B[0:2], B[2:4])
        prod = mat_mul(ma, mb, 2)
        assert tuple(R.coeffs[R.mul(a, b)]) == prod[0] + prod[1]


def test_m2_z3_noncommutative():
    R = matrix_ring(3, 2)
    e12, e21 = R.generator(1), R.generator(2)
    assert elem_mul(R, e12, e21) != elem_mul(R, e21, e12)


def test_m1_is_z2():
    R = matrix_ring(2, 1)
    assert R.size == 2 and R.is_commutative
    e = R.generator(0)
    assert elem_mul(R, e, e) == e


@pytest.mark.parametrize("n,d,size", [(2, 2, 8), (3, 2, 27), (2, 3, 64)])
def test_upper_triangular_sizes(n, d, size):
    assert upper_triangular_ring(n, d).size == size


def test_commutator_e12_e21():
    R = matrix_ring(2, 2)
    e12, e21 = R.generator(1), R.generator(2)
    # oracle: explicit matrices
    expected = mat_comm(((0, 1), (0, 0)), ((0, 0), (1, 0)), 2)
    got = elem_commutator(R, e12, e21)
    assert got.coeffs == expected[0] + expected[1] == (1, 0, 0, 1)


def test_elem_ops_basic():
    R = ring_zn(6)
    x, y = R.element([4]), R.element([5])
    assert elem_add(R, x, y).coeffs == (3,)
    assert elem_neg(R, x).coeffs == (2,)
    assert elem_mul(R, x, y).coeffs == (2,)
    assert elem_commutator(R, x, y) == R.zero


def test_direct_product_small():
    P = direct_product(ring_zn(2), ring_zn(3))
    assert P.size == 6 and P.is_commutative


def test_direct_product_center_brute_force():
    P = direct_product(upper_triangular_ring(2, 2), ring_zn(3))
    assert P.size == 24
    center = [x for x in range(P.size) if all(P.mul(x, y) == P.mul(y, x) for y in range(P.size))]
    assert len(center) == 6
    assert relative_center(P.full(), P.full()).count == 6


def test_direct_product_with_zero_ring():
    T = upper_triangular_ring(2, 2)
    P = direct_product(ring_zn(1), T)
    assert P.size == T.size
    assert np.array_equal(P.comm_table, T.comm_table)


def test_direct_product_commutator_componentwise():
    T, M = upper_triangular_ring(2, 2), matrix_ring(2, 2)
    P = direct_product(T, M)
    rng = np.random.default_rng(1)
    for _ in range(500):
        x1, y1 = rng.integers(0, T.size, 2)
        x2, y2 = rng.integers(0, M.size, 2)
        got = P.commutator(x1 + T.size * x2, y1 + T.size * y2)
        assert got == T.commutator(x1, y1) + T.size * M.commutator(x2, y2)


def test_subring_closure_examples():
    R = matrix_ring(2, 2)
    assert subring_closure(R, []).count == 1
    U = subring_closure(R, [R.generator(0), R.generator(1), R.generator(3)])
    assert U.count == 8
    assert subring_closure(R, R.elements()).is_full


def test_upper_closure_matches_hand_enumeration():
    R = matrix_ring(2, 2)
    U = subring_closure(R, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)])
    expected = {R.element(v).index for v in itertools.product(range(2), range(2), [0], range(2))}
    assert set(U.indices.tolist()) == expected


def test_is_subring_examples():
    R = matrix_ring(2, 2)
    e11, e12 = R.generator(0), R.generator(1)
    assert is_subring(R, [R.zero])
    assert is_subring(R, [R.zero, e12])
    assert not is_subring(R, [R.zero, e11, e12])


def _zn_subrings_bruteforce(n):
    def ok(s):
        return 0 in s and all((a + b) % n in s and (a * b) % n in s and (-a) % n in s for a in s for b in s)

    return subgroups_by_subsets(n, ok)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_enumerate_zn_matches_subset_bruteforce(n):
    got = {frozenset(S.indices.tolist()) for S in enumerate_subrings(ring_zn(n))}
    assert got == set(_zn_subrings_bruteforce(n))


def test_enumerate_examples():
    assert len(enumerate_subrings(ring_zn(4))) == 3
    for p in (2, 3, 5, 7, 11):
        assert len(enumerate_subrings(ring_zn(p))) == 2
    assert len(enumerate_subrings(ring_zn(1))) == 1


def test_enumerate_bound():
    with pytest.raises(EnumerationBoundExceeded):
        enumerate_subrings(matrix_ring(3, 2))


def test_enumerate_truncation_warns():
    with pytest.warns(UserWarning):
        subs = enumerate_subrings(matrix_ring(2, 2), cap=5)
    assert len(subs) == 5


def test_enumerated_subrings_distinct_and_valid():
    R = get_ring("M2_Z2xZ2")
    subs = enumerate_subrings(R)
    assert len({S.key for S in subs}) == len(subs)
    for S in subs:
        assert is_subring(R, S.members)
        assert R.size % S.count == 0


def test_additive_index():
    R = matrix_ring(2, 2)
    assert additive_index(R, R.full()) == 1
    assert additive_index(R, subring_closure(R, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)])) == 2
    Z6 = ring_zn(6)
    assert additive_index(Z6, Z6.zero_subring()) == 6


def test_make_subring_rejects():
    R = matrix_ring(2, 2)
    with pytest.raises(ValueError):
        make_subring(R, [R.zero, R.generator(0), R.generator(1)])


def test_mul_table_matches_on_demand_product():
    spec = matrix_ring(3, 2).spec
    dense = build_ring(spec)
    sparse = build_ring(spec, dense_threshold=10)
    assert sparse.mul_table is None
    idx = np.arange(dense.size)
    assert np.array_equal(sparse.mul(idx[:, None], idx[None, :]), dense.mul_table)
    assert np.array_equal(sparse.comm_table, dense.comm_table)


def test_index_coeff_roundtrip():
    R = get_ring("T2_Z2xZ3")
    for i in range(R.size):
        e = R.element(i)
        assert R.element(e.coeffs).index == i
    assert R.element([1, 0, 0, 0]).index == 1
    assert R.element([0, 0, 0, 1]).index == 8


def test_tables_are_readonly():
    R = ring_zn(4)
    with pytest.raises(ValueError):
        R.mul_table[0, 0] = 1


small_rings = [R for R in catalog() if 1 < R.size <= 16]
large_rings = [R for R in catalog() if R.size > 16]


@pytest.mark.parametrize("R", small_rings, ids=lambda R: R.name)
def test_ring_axioms_exhaustive(R):
    x, y, z = (a.ravel() for a in np.meshgrid(*[np.arange(R.size)] * 3, indexing="ij"))
    assert np.array_equal(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z)))
    assert np.array_equal(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z)))
    assert np.array_equal(R.mul(R.add(y, z), x), R.add(R.mul(y, x), R.mul(z, x)))
    assert np.array_equal(R.commutator(R.add(x, y), z), R.add(R.commutator(x, z), R.commutator(y, z)))


@pytest.mark.parametrize("R", large_rings, ids=lambda R: R.name)
def test_ring_axioms_sampled(R):
    rng = np.random.default_rng(7)
    x, y, z = rng.integers(0, R.size, size=(3, 10_000))
    assert np.array_equal(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z)))
    assert np.array_equal(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z)))
    assert np.array_equal(R.mul(R.add(y, z), x), R.add(R.mul(y, x), R.mul(z, x)))
    assert np.array_equal(R.commutator(R.add(x, y), z), R.add(R.commutator(x, z), R.commutator(y, z)))


@pytest.mark.parametrize("R", catalog(), ids=lambda R: R.name)
def test_anticommutative(R):
    assert np.array_equal(R.comm_table, R.neg[R.comm_table.T])


ring_names = st.sampled_from([R.name for R in catalog()])


@settings(max_examples=60, deadline=None)
@given(ring_names, st.lists(st.integers(min_value=0, max_value=10_000), max_size=3))
def test_closure_is_subring(name, raw):
    R = get_ring(name)
    S = subring_closure(R, [g % R.size for g in raw])
    assert is_subring(R, S.members)
    assert R.size % S.count == 0
    for g in raw:
        assert (g % R.size) in S
