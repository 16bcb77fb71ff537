import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchhom.chains import (
    Chain,
    FreeChainComplex,
    boundary_chain,
    boundary_of_simplex,
    canonical_oriented,
    chain_from_text,
    chain_to_text,
    sort_with_parity,
    wedge,
    wedge_many,
)
from matchhom.complexes import bounded, matching

from _brute import matching_face_count


def test_sort_with_parity():
    assert sort_with_parity([(3, 4), (1, 2)]) == (((1, 2), (3, 4)), -1)
    assert sort_with_parity([(1, 2), (3, 4)]) == (((1, 2), (3, 4)), 1)
    assert sort_with_parity([(1, 2), (1, 2)]) == (((1, 2), (1, 2)), 0)


def test_canonicalize_involution():
    # Two inversions: even permutation.
    s, sign = canonical_oriented([(5, 6), (2, 1), (3, 4)])
    assert (s, sign) == ((((1, 2), (3, 4), (5, 6))), 1)
    # One swap: odd.
    _, sign = canonical_oriented([(3, 4), (1, 2), (5, 6)])
    assert sign == -1
    s2, sign2 = canonical_oriented(s)
    assert (s2, sign2) == (s, 1)


@settings(max_examples=200, deadline=None)
@given(st.permutations(list(range(5))))
def test_sort_parity_matches_inversion_count(perm):
    items = [(p + 1, p + 2) for p in perm]
    _, sign = sort_with_parity(items)
    inversions = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    assert sign == (-1) ** inversions


def test_boundary_of_triple_wedge():
    # 12^34^56 -> 34^56 - 12^56 + 12^34
    s = ((1, 2), (3, 4), (5, 6))
    b = boundary_of_simplex(s)
    assert b.terms == {
        ((3, 4), (5, 6)): 1,
        ((1, 2), (5, 6)): -1,
        ((1, 2), (3, 4)): 1,
    }


def test_boundary_of_vertex_is_augmentation():
    b = boundary_of_simplex(((1, 2),))
    assert b.terms == {(): 1}
    assert b.degree == -1


def test_boundary_squared_zero_on_chains():
    c = Chain.from_edge_lists(
        2,
        [
            ([(1, 2), (3, 4), (5, 6)], 1),
            ([(1, 4), (2, 3), (5, 6)], -2),
        ],
    )
    assert boundary_chain(boundary_chain(c)).is_zero()


def test_wedge_bilinearity():
    u = Chain.from_edge_lists(0, [([(1, 2)], 1)])
    v = Chain.from_edge_lists(0, [([(3, 4)], 1), ([(4, 5)], -1)])
    w = wedge(u, v)
    assert w.terms == {((1, 2), (3, 4)): 1, ((1, 2), (4, 5)): -1}


def test_wedge_rejects_shared_vertices():
    u = Chain.from_edge_lists(0, [([(1, 2)], 1)])
    v = Chain.from_edge_lists(0, [([(2, 3)], 1)])
    with pytest.raises(ValueError):
        wedge(u, v)


def test_wedge_of_cycles_is_cycle():
    # A reduced 0-cycle wedged with another: Leibniz kills the boundary.
    u = Chain.from_edge_lists(0, [([(1, 2)], 1), ([(1, 3)], -1)])
    v = Chain.from_edge_lists(0, [([(4, 5)], 1), ([(4, 6)], -1)])
    assert boundary_chain(u).is_zero()
    w = wedge(u, v)
    assert boundary_chain(w).is_zero()
    triple = wedge_many([u, v, Chain.from_edge_lists(0, [([(7, 8)], 1), ([(7, 9)], -1)])])
    assert boundary_chain(triple).is_zero()


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_wedge_leibniz_on_random_chains(data):
    # d(u ^ v) = du ^ v + (-1)^(deg u + 1) u ^ dv for single simplices.
    left_edges = [(1, 2), (3, 4), (5, 6)][: data.draw(st.integers(1, 3))]
    right_edges = [(7, 8), (9, 10)][: data.draw(st.integers(1, 2))]
    u = Chain.from_edge_lists(len(left_edges) - 1, [(left_edges, 1)])
    v = Chain.from_edge_lists(len(right_edges) - 1, [(right_edges, 1)])
    lhs = boundary_chain(wedge(u, v))
    sign = (-1) ** len(left_edges)
    rhs = wedge(boundary_chain(u), v) + wedge(u, boundary_chain(v)).scaled(sign)
    # Degree -1 factors collapse to the empty simplex, which shares no
    # vertices, so the identity stays well-formed.
    assert lhs == rhs


def test_boundary_matrix_matching4():
    fcc = FreeChainComplex(matching(4))
    m = fcc.boundary_matrix(1)
    assert m.ncols == 3
    for j in range(3):
        col = m.column(j)
        assert len(col) == 2
        assert set(col.values()) <= {1, -1}


def test_boundary_matrix_point():
    fcc = FreeChainComplex(matching(2))
    m = fcc.boundary_matrix(0)
    assert m.to_dense() == [[1]]


def test_boundary_matrix_matching7_shape_and_sparsity():
    fcc = FreeChainComplex(matching(7))
    m = fcc.boundary_matrix(2)
    assert (m.nrows, m.ncols) == (105, 105)
    assert matching_face_count(7, 3) == 105
    for j in range(m.ncols):
        assert len(m.column(j)) == 3


def test_column_sparsity_rule():
    fcc = FreeChainComplex(bounded(4, (2, 2, 2, 2)))
    for d in range(0, fcc.top_dimension() + 1):
        m = fcc.boundary_matrix(d)
        for j in range(m.ncols):
            col = m.column(j)
            assert len(col) == d + 1
            assert set(col.values()) <= {1, -1}


def test_check_d_squared():
    assert FreeChainComplex(matching(7)).check_d_squared()
    assert FreeChainComplex(bounded(5, (2, 2, 2, 1, 1))).check_d_squared()


def test_check_d_squared_negative_control():
    fcc = FreeChainComplex(matching(5))
    m = fcc.boundary_matrix(1)
    # Corrupt one sign in a cached matrix: the axiom must now fail.
    j = 0
    col = m.column(j)
    i = sorted(col)[0]
    m.rows[i][j] = -m.rows[i][j]
    assert not fcc.check_d_squared()


def test_chain_text_round_trip():
    c = Chain.from_edge_lists(
        1, [([(1, 2), (3, 4)], 3), ([(1, 4), (2, 3)], -12345678901234567890)]
    )
    text = chain_to_text(c)
    assert chain_from_text(text) == c
    assert chain_to_text(chain_from_text(text)) == text


def test_chain_text_rejects_garbage():
    with pytest.raises(ValueError):
        chain_from_text("degree 1\n1 1-2 3-4\n")
