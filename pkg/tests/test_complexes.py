import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchhom.complexes import (
    FaceTable,
    ParallelEdgeError,
    bounded,
    consecutive_blocks,
    contract_simplex,
    delta_part,
    enumerate_faces,
    face_counts,
    format_face_lines,
    gamma_part,
    interleaved_blocks,
    is_face,
    lift_simplex,
    make_simplex,
    matching,
    matching_minus_edge,
)

from _brute import (
    brute_bounded_faces,
    brute_matching_faces,
    has_collision,
    matching_face_count,
)

BLOCKS22 = consecutive_blocks((2, 2))
BLOCKS222 = consecutive_blocks((2, 2, 2))


def test_make_simplex_sorts_and_rejects_duplicates():
    assert make_simplex([(3, 4), (2, 1)]) == ((1, 2), (3, 4))
    with pytest.raises(ValueError):
        make_simplex([(1, 2), (2, 1)])


def test_is_face_matching():
    m4 = matching(4)
    assert is_face(m4, ((1, 2), (3, 4)))
    assert not is_face(m4, ((1, 2), (1, 3)))
    with pytest.raises(ValueError):
        is_face(m4, ((1, 5),))


def test_is_face_delta_parallel_pair():
    # 1,2 in the first block and 3,4 in the second: {13, 24} is a
    # parallel pair, {12, 34} contracts to two distinct loops.
    d = delta_part(BLOCKS22)
    assert is_face(d, ((1, 3), (2, 4)))
    assert is_face(d, ((1, 4), (2, 3)))
    assert not is_face(d, ((1, 2), (3, 4)))
    g = gamma_part(BLOCKS22)
    assert is_face(g, ((1, 2), (3, 4)))
    assert not is_face(g, ((1, 3), (2, 4)))


def test_is_face_bounded_loop_counts_twice():
    b = bounded(3, (2, 2, 2))
    assert is_face(b, ((1, 1),))
    assert not is_face(b, ((1, 1), (1, 2)))
    assert is_face(b, ((1, 1), (2, 3)))


def test_is_face_matching_minus_edge():
    spec = matching_minus_edge(4)
    assert is_face(spec, ((1, 2),))
    assert not is_face(spec, ((3, 4),))
    assert not is_face(spec, ((1, 2), (3, 4)))
    assert is_face(spec, ((1, 3), (2, 4)))


@pytest.mark.parametrize(
    "n,d,count",
    [
        (5, 1, 15),     # pairs of disjoint edges in K_5
        (12, 5, 10395),  # 12!/(2^6 6! 0!) six-edge matchings
        (2, 0, 1),
    ],
)
def test_matching_face_counts(n, d, count):
    assert matching_face_count(n, d + 1) == count
    assert sum(1 for _ in enumerate_faces(matching(n), d)) == count


def test_bounded_zero_faces_count():
    assert len(enumerate_faces(bounded(7, (2,) * 7), 0)) == 28  # 21 edges + 7 loops


def test_face_counts_matching7():
    assert face_counts(matching(7)) == (1, 21, 105, 105)


def test_face_counts_matching4():
    assert face_counts(matching(4)) == (1, 6, 3)


def test_face_counts_matching2():
    assert face_counts(matching(2)) == (1, 1)


def test_enumeration_matches_bruteforce_matching():
    for n in range(2, 7):
        for d in range(-1, n // 2):
            got = enumerate_faces(matching(n), d)
            if d == -1:
                assert got == [()]
            else:
                assert got == brute_matching_faces(n, d)


def test_enumeration_matches_bruteforce_bounded():
    for bounds in [(2, 2, 2), (2, 1, 2, 1), (1, 1, 1, 1), (2, 2, 1, 1, 1)]:
        n = len(bounds)
        spec = bounded(n, bounds)
        for d in range(0, sum(bounds) // 2):
            assert enumerate_faces(spec, d) == brute_bounded_faces(n, bounds, d)


def test_enumeration_is_lexicographic_and_deterministic():
    faces = enumerate_faces(matching(6), 1)
    assert faces == sorted(faces)
    assert faces == enumerate_faces(matching(6), 1)


def test_partition_identity_gamma_plus_delta():
    for blocks in [BLOCKS22, BLOCKS222, consecutive_blocks((2, 1, 1)),
                   interleaved_blocks((2, 2, 2))]:
        n = sum(len(b) for b in blocks)
        m = matching(n)
        g = gamma_part(blocks)
        d = delta_part(blocks)
        for dim in range(-1, n // 2):
            fm = enumerate_faces(m, dim)
            fg = enumerate_faces(g, dim)
            fd = enumerate_faces(d, dim)
            assert len(fm) == len(fg) + len(fd)
            assert sorted(fg + fd) == fm


def test_downward_closure():
    for spec in [matching(6), bounded(4, (2, 2, 1, 2)), gamma_part(BLOCKS222),
                 matching_minus_edge(6)]:
        for d in range(1, 3):
            for face in enumerate_faces(spec, d):
                for i in range(len(face)):
                    sub = face[:i] + face[i + 1:]
                    assert is_face(spec, sub)


def test_delta_upward_closed_in_matching():
    d = delta_part(BLOCKS222)
    m = matching(6)
    for dim in (1, 2):
        for face in enumerate_faces(d, dim):
            for sup in enumerate_faces(m, dim + 1):
                if set(face) <= set(sup):
                    assert is_face(d, sup)


def test_contract_simplex_basic():
    s = ((1, 3), (5, 6))
    assert contract_simplex(s, BLOCKS222) == ((1, 2), (3, 3))


def test_contract_simplex_parallel_error():
    with pytest.raises(ParallelEdgeError):
        contract_simplex(((1, 3), (2, 4)), BLOCKS222)


def test_lift_simplex_smallest_unused():
    assert lift_simplex(((1, 2),), BLOCKS22) == ((1, 3),)
    assert lift_simplex(((3, 3),), BLOCKS222) == ((5, 6),)
    with pytest.raises(ValueError):
        lift_simplex(((1, 1), (1, 2)), BLOCKS22)


def test_contract_lift_round_trip_exhaustive_small():
    blocks = BLOCKS22
    spec = bounded(2, (2, 2))
    for d in range(0, 2):
        for t in enumerate_faces(spec, d):
            s = lift_simplex(t, blocks)
            assert contract_simplex(s, blocks) == t
            assert len(s) == len(t)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_contract_lift_round_trip_random(data):
    sizes = data.draw(
        st.lists(st.integers(min_value=1, max_value=2), min_size=2, max_size=5)
    )
    blocks = consecutive_blocks(sizes)
    spec = bounded(len(sizes), tuple(sizes))
    top = sum(sizes) // 2 - 1
    d = data.draw(st.integers(min_value=0, max_value=max(top, 0)))
    faces = enumerate_faces(spec, d)
    if not faces:
        return
    t = faces[data.draw(st.integers(min_value=0, max_value=len(faces) - 1))]
    s = lift_simplex(t, blocks)
    assert contract_simplex(s, blocks) == t
    assert has_collision(s, blocks) is False


def test_interleaved_blocks_paper_partition():
    assert interleaved_blocks((2,) * 7) == tuple((i, i + 7) for i in range(1, 8))


def test_face_table_ordinals():
    t = FaceTable(matching(5))
    faces = t.faces(1)
    assert len(faces) == 15
    for i, s in enumerate(faces):
        assert t.ordinal(1, s) == i
    assert t.top_dimension() == 1
    assert t.faces(-1) == ((),)


def test_format_face_lines():
    lines = list(format_face_lines(matching(4), [1]))
    assert lines[0] == "dim 1"
    assert lines[1:] == ["1-2 3-4", "1-3 2-4", "1-4 2-3"]
