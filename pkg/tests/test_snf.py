import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchhom.snf import (
    HermiteBasis,
    ResourceCaps,
    ResourceLimitError,
    SparseIntMatrix,
    cokernel_torsion_basis,
    invariant_factors,
    kernel_basis,
    lattices_equal,
    rank_mod_p,
    reduce_against_image,
    smith_normal_form,
)

from _brute import dense_smith_factors


def dense(rows):
    return SparseIntMatrix.from_dense(rows)


def test_invariant_factors_hand_example():
    # gcd of entries is 2 and |det| = 8, so the diagonal is (2, 4).
    assert invariant_factors(dense([[2, 4], [6, 8]])) == (2, 4)


def test_identity_factors():
    assert invariant_factors(SparseIntMatrix.identity(5)) == (1,) * 5


def test_zero_matrix():
    assert invariant_factors(SparseIntMatrix(3, 4)) == ()
    assert rank_mod_p(SparseIntMatrix(3, 4), 2) == 0


@settings(max_examples=120, deadline=None)
@given(st.data())
def test_factors_match_dense_textbook_oracle(data):
    nrows = data.draw(st.integers(min_value=1, max_value=8))
    ncols = data.draw(st.integers(min_value=1, max_value=8))
    rows = [
        [data.draw(st.integers(min_value=-9, max_value=9)) for _ in range(ncols)]
        for _ in range(nrows)
    ]
    expected = dense_smith_factors(rows)
    assert list(invariant_factors(dense(rows))) == expected


def test_factors_match_oracle_random_30x30():
    rng = random.Random(20240229)
    for _ in range(3):
        rows = [
            [rng.randint(-9, 9) for _ in range(30)] for _ in range(30)
        ]
        assert list(invariant_factors(dense(rows))) == dense_smith_factors(rows)


def _is_diagonal_with(factors, m):
    want = {(t, t): d for t, d in enumerate(factors)}
    got = {(i, j): v for i, j, v in m.entries()}
    return got == want


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_transforms_are_unimodular_and_diagonalize(data):
    nrows = data.draw(st.integers(min_value=1, max_value=6))
    ncols = data.draw(st.integers(min_value=1, max_value=6))
    rows = [
        [data.draw(st.integers(min_value=-6, max_value=6)) for _ in range(ncols)]
        for _ in range(nrows)
    ]
    m = dense(rows)
    form = smith_normal_form(m, want_transforms=True)
    product = form.U.matmul(m).matmul(form.V)
    assert _is_diagonal_with(form.factors, product)
    assert abs(_det(form.U.to_dense())) == 1
    assert abs(_det(form.V.to_dense())) == 1


def _det(a):
    # Fraction-free Bareiss determinant, local to the tests.
    a = [row[:] for row in a]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def test_rank_mod_p_detects_torsion_drop():
    m = dense([[3, 0], [0, 1]])
    assert rank_mod_p(m, 3) == 1
    assert rank_mod_p(m, 2) == 2
    assert len(invariant_factors(m)) == 2


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_rank_mod_p_matches_exact_rank_generic_prime(data):
    nrows = data.draw(st.integers(min_value=1, max_value=7))
    ncols = data.draw(st.integers(min_value=1, max_value=7))
    rows = [
        [data.draw(st.integers(min_value=-5, max_value=5)) for _ in range(ncols)]
        for _ in range(nrows)
    ]
    factors = invariant_factors(dense(rows))
    p = 2_147_483_647
    assert all(d % p for d in factors)
    assert rank_mod_p(dense(rows), p) == len(factors)


def test_kernel_basis_properties():
    rng = random.Random(7)
    for _ in range(20):
        nrows = rng.randint(1, 7)
        ncols = rng.randint(1, 7)
        rows = [[rng.randint(-4, 4) for _ in range(ncols)] for _ in range(nrows)]
        m = dense(rows)
        k = kernel_basis(m)
        assert k.nrows == ncols
        assert m.matmul(k).is_zero()
        r = len(invariant_factors(m))
        assert k.ncols == ncols - r
        if k.ncols:
            # Saturated: the basis itself has all invariant factors 1.
            assert set(invariant_factors(k)) <= {1}


def test_reduce_against_image_membership_and_order():
    m = dense([[2, 0], [0, 3], [0, 0]])
    vecs = [
        {0: 2},          # in the image
        {0: 1},          # order 2 in the cokernel
        {1: 1},          # order 3
        {0: 1, 1: 1},    # order 6
        {2: 1},          # infinite order
    ]
    red = reduce_against_image(m, vecs)
    assert red.in_image(0)
    assert red.order_in_cokernel(1) == 2
    assert red.order_in_cokernel(2) == 3
    assert red.order_in_cokernel(3) == 6
    assert red.order_in_cokernel(4) is None


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_reduce_against_image_agrees_with_direct_search(data):
    nrows = data.draw(st.integers(min_value=1, max_value=5))
    ncols = data.draw(st.integers(min_value=1, max_value=5))
    rows = [
        [data.draw(st.integers(min_value=-3, max_value=3)) for _ in range(ncols)]
        for _ in range(nrows)
    ]
    m = dense(rows)
    coeffs = [data.draw(st.integers(min_value=-2, max_value=2)) for _ in range(ncols)]
    target = {}
    for j, c in enumerate(coeffs):
        if c:
            for i, row in enumerate(rows):
                if row[j]:
                    target[i] = target.get(i, 0) + c * row[j]
    target = {i: v for i, v in target.items() if v}
    red = reduce_against_image(m, [target])
    assert red.in_image(0)


def test_cokernel_torsion_basis_orders():
    m = dense([[2, 0, 0], [0, 6, 0], [0, 0, 1]])
    got = cokernel_torsion_basis(m)
    orders = sorted(d for _, d in got)
    assert orders == [2, 6]
    for vec, d in got:
        # d * vec must lie in the column span, smaller multiples must not.
        red = reduce_against_image(m, [vec])
        assert red.order_in_cokernel(0) == d


def test_cokernel_torsion_basis_after_mixing():
    rng = random.Random(99)
    base = [[2, 0, 0], [0, 6, 0], [0, 0, 1], [0, 0, 0]]
    # Random unimodular row/column mixing preserves the cokernel.
    m = base
    for _ in range(12):
        i, j = rng.sample(range(4), 2)
        q = rng.randint(-2, 2)
        for col in range(3):
            m[i][col] += q * m[j][col]
    for _ in range(12):
        i, j = rng.sample(range(3), 2)
        q = rng.randint(-2, 2)
        for row in m:
            row[i] += q * row[j]
    sm = dense(m)
    got = cokernel_torsion_basis(sm)
    assert sorted(d for _, d in got) == [2, 6]
    for vec, d in got:
        assert reduce_against_image(sm, [vec]).order_in_cokernel(0) == d


def test_hermite_basis_membership_and_canonical():
    h = HermiteBasis.from_columns(3, [{0: 2, 1: 1}, {1: 3}])
    assert h.contains({0: 2, 1: 4})
    assert not h.contains({0: 1})
    assert not h.contains({2: 1})
    other = HermiteBasis.from_columns(3, [{0: 2, 1: 4}, {1: 3}, {0: 4, 1: 2}])
    assert h.canonical() == other.canonical()


def test_hermite_solve_round_trip():
    cols = [{0: 2, 2: 1}, {1: 3, 2: 5}]
    h = HermiteBasis.from_columns(3, cols)
    vec = {}
    for c, q in zip(h.columns, (3, -2)):
        for i, v in c.items():
            vec[i] = vec.get(i, 0) + q * v
    sol = h.solve(vec)
    assert sol is not None
    rebuilt = {}
    for t, q in sol.items():
        for i, v in h.columns[t].items():
            rebuilt[i] = rebuilt.get(i, 0) + q * v
    assert {i: v for i, v in rebuilt.items() if v} == {
        i: v for i, v in vec.items() if v
    }


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_lattices_equal_invariant_under_generator_shuffle(data):
    dim = data.draw(st.integers(min_value=1, max_value=4))
    gens = []
    for _ in range(data.draw(st.integers(min_value=1, max_value=4))):
        g = {
            i: data.draw(st.integers(min_value=-4, max_value=4)) for i in range(dim)
        }
        gens.append({i: v for i, v in g.items() if v})
    shuffled = list(reversed(gens))
    extra = {}
    for g in gens:
        for i, v in g.items():
            extra[i] = extra.get(i, 0) + 2 * v
    shuffled.append({i: v for i, v in extra.items() if v})
    assert lattices_equal(dim, gens, shuffled)


def test_resource_cap_entries():
    rng = random.Random(5)
    rows = [[rng.randint(-9, 9) for _ in range(20)] for _ in range(20)]
    with pytest.raises(ResourceLimitError):
        invariant_factors(dense(rows), caps=ResourceCaps(max_entries=10))


def test_determinism_repeated_runs():
    rng = random.Random(11)
    rows = [[rng.randint(-9, 9) for _ in range(15)] for _ in range(12)]
    m1 = dense(rows)
    m2 = dense(rows)
    assert invariant_factors(m1) == invariant_factors(m2)
    k1 = kernel_basis(dense(rows))
    k2 = kernel_basis(dense(rows))
    assert k1 == k2
