import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matchhom.chains import Chain, FreeChainComplex, boundary_chain
from matchhom.complexes import bounded, matching
from matchhom.homology import (
    AbelianGroup,
    betti_mod_p,
    class_order,
    euler_characteristic_ok,
    extract_torsion_generators,
    homology_free,
    universal_coefficients_ok,
)


def test_abelian_group_str_and_factors():
    g = AbelianGroup.from_factors((1, 1, 3), free_rank=42)
    assert g.invariant_factors == (3,)
    assert str(g) == "Z^42 + Z/3"
    assert str(AbelianGroup(0)) == "0"
    assert str(AbelianGroup(1)) == "Z"


def test_abelian_group_rejects_broken_chain():
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))


def test_direct_sum_recombines_divisors():
    a = AbelianGroup(1, (2,))
    b = AbelianGroup(2, (3,))
    assert a.direct_sum(b) == AbelianGroup(3, (6,))
    c = AbelianGroup(0, (3,)).direct_sum(AbelianGroup(0, (3,)))
    assert c == AbelianGroup(0, (3, 3))


def test_elementary_divisors_round_trip():
    g = AbelianGroup(0, (2, 6, 12))
    assert g.elementary_divisors() == (2, 2, 3, 3, 4)
    back = AbelianGroup.from_elementary_divisors(g.elementary_divisors(), 0)
    assert back == g


# -- frozen expectations for small matching complexes; reduced homology of
#    the complex of matchings of K_n, independently well known for small n
#    and recomputed here from scratch.


def table_group(free, factors=()):
    return AbelianGroup.from_factors(factors, free)


SMALL_MATCHING = {
    3: {0: table_group(2)},
    4: {0: table_group(2)},
    5: {1: table_group(6)},
    6: {1: table_group(16)},
    7: {1: table_group(0, (3,)), 2: table_group(20)},
}


@pytest.mark.parametrize("n", sorted(SMALL_MATCHING))
def test_matching_homology_small(n):
    summary = homology_free(FreeChainComplex(matching(n)))
    for d in summary.degrees():
        expected = SMALL_MATCHING[n].get(d, AbelianGroup(0))
        assert summary.group(d) == expected, (n, d, str(summary.group(d)))


def test_matching2_is_acyclic():
    summary = homology_free(FreeChainComplex(matching(2)))
    assert summary.nonzero_degrees() == []


def test_euler_characteristic_matching7():
    fcc = FreeChainComplex(matching(7))
    # -1 + 21 - 105 + 105 = 20 must equal the alternating free-rank sum.
    assert -1 + 21 - 105 + 105 == 20
    assert euler_characteristic_ok(fcc, homology_free(fcc))


def test_rank_nullity_bound():
    fcc = FreeChainComplex(matching(7))
    from matchhom.snf import invariant_factors

    for d in range(0, fcc.top_dimension()):
        r_d = len(invariant_factors(fcc.boundary_matrix(d)))
        r_next = len(invariant_factors(fcc.boundary_matrix(d + 1)))
        assert r_d + r_next <= fcc.rank(d)


def test_betti_mod_p_matching7():
    fcc = FreeChainComplex(matching(7))
    mod3 = betti_mod_p(fcc, 3)
    assert mod3.mod_p_dimensions[1] == 1
    assert mod3.mod_p_dimensions[2] == 21
    mod5 = betti_mod_p(fcc, 5)
    assert mod5.mod_p_dimensions[1] == 0
    assert mod5.mod_p_dimensions[2] == 20


def test_betti_mod_p_rejects_composite():
    with pytest.raises(ValueError):
        betti_mod_p(FreeChainComplex(matching(4)), 6)


@pytest.mark.parametrize("n", [5, 6, 7])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_universal_coefficients_small(n, p):
    fcc = FreeChainComplex(matching(n))
    assert universal_coefficients_ok(homology_free(fcc), betti_mod_p(fcc, p), p)


def test_class_order_of_boundaries_is_one():
    fcc = FreeChainComplex(matching(7))
    faces = fcc.table.faces(2)
    z = boundary_chain(Chain(2, {faces[0]: 1, faces[10]: -2}))
    assert class_order(z, fcc) == 1


def test_class_order_requires_cycle():
    fcc = FreeChainComplex(matching(7))
    faces = fcc.table.faces(2)
    with pytest.raises(ValueError):
        class_order(Chain(2, {faces[0]: 1}), fcc)


def test_torsion_generator_matching7():
    fcc = FreeChainComplex(matching(7))
    gens = extract_torsion_generators(fcc, 1)
    assert len(gens) == 1
    chain, order = gens[0]
    assert order == 3
    assert class_order(chain, fcc) == 3
    assert class_order(chain.scaled(3), fcc) == 1
    assert class_order(chain.scaled(2), fcc) == 3


def test_no_torsion_generators_matching6():
    fcc = FreeChainComplex(matching(6))
    assert extract_torsion_generators(fcc, 1) == []


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=7))
def test_class_order_scaling_law(k):
    from math import gcd

    fcc = FreeChainComplex(matching(7))
    chain, order = extract_torsion_generators(fcc, 1)[0]
    expected = order // gcd(k, order)
    got = class_order(chain.scaled(k), fcc)
    assert got == max(expected, 1)
