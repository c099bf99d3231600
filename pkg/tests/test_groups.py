"""
Unit tests for permutation groups: orders, derived series, composition factors and W(E6).

Run: python -m pytest tests/test_groups.py -v
"""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from rdlab.errors import InvalidInputError, ResourceLimitError
from rdlab.rng import SeedTree
from rdlab.groups import (
    Perm,
    PermGroup,
    alternating_group,
    combinatorial_adjacency,
    commutator,
    composition_factors,
    cremona_involution,
    cyclic_group,
    derived_series,
    derived_subgroup,
    is_simple,
    line_labels,
    normal_closure,
    symmetric_group,
    weyl_e6_on_lines,
)

# PSL(2,7) on the projective line over F_7: z -> z + 1 and z -> -1/z, with infinity as point 7.
PSL27_GENERATORS = [[1, 2, 3, 4, 5, 6, 0, 7], [7, 6, 3, 2, 5, 4, 1, 0]]


@st.composite
def _generator_sets(draw):
    n = draw(st.integers(min_value=2, max_value=7))
    gens = draw(st.lists(st.permutations(list(range(n))), min_size=1, max_size=3))
    return n, gens


def test_perm_product_acts_left_to_right():
    """Test that (p * q)[i] = q[p[i]]."""
    p = Perm([1, 2, 0])
    q = Perm([0, 2, 1])
    assert (p * q).images == (2, 1, 0), f"Unexpected product {(p * q).images}"
    assert (p * p.inverse()).is_identity, "p * p^-1 should be the identity"


def test_perm_rejects_non_bijection():
    """Test that repeated images are rejected."""
    with pytest.raises(InvalidInputError):
        Perm([0, 0, 1])


def test_perm_cycle_data():
    """Test cycles, cycle type, sign and order of (0 1 2)(3 4)."""
    p = Perm.from_cycles(6, [(0, 1, 2), (3, 4)])
    assert p.cycle_type() == (3, 2, 1), f"Unexpected cycle type {p.cycle_type()}"
    assert p.sign == -1, "A 3-cycle times a transposition is odd"
    assert p.order() == 6, f"Order should be 6, got {p.order()}"
    assert (p**6).is_identity, "p^6 should be the identity"


def test_standard_group_orders():
    """Test the orders of S_n, A_n and C_n."""
    assert symmetric_group(6).order() == 720
    assert alternating_group(7).order() == 2520
    assert alternating_group(6).order() == 360
    assert cyclic_group(9).order() == 9


@settings(max_examples=40, deadline=None)
@given(_generator_sets())
def test_order_matches_sympy(data):
    """Test that the Schreier-Sims order agrees with sympy on random generator sets."""
    n, gens = data
    group = PermGroup.from_images(gens, n)
    expected = PermutationGroup([Permutation(g) for g in gens]).order()
    assert group.order() == expected, f"Order mismatch for {gens}"


@settings(max_examples=30, deadline=None)
@given(_generator_sets())
def test_derived_subgroup_matches_sympy(data):
    """Test that the derived subgroup order agrees with sympy."""
    n, gens = data
    group = PermGroup.from_images(gens, n)
    expected = PermutationGroup([Permutation(g) for g in gens]).derived_subgroup().order()
    assert derived_subgroup(group).order() == expected, f"Derived subgroup mismatch for {gens}"


def test_membership():
    """Test that A5 contains 3-cycles and not transpositions."""
    a5 = alternating_group(5)
    assert a5.contains(Perm.from_cycles(5, [(0, 3, 4)])), "3-cycle should be in A5"
    assert Perm.from_cycles(5, [(0, 1)]) not in a5, "Transposition should not be in A5"


def test_normal_closure_of_transposition_is_whole_symmetric_group():
    """Test that the normal closure of (0 1) in S5 is S5."""
    s5 = symmetric_group(5)
    assert normal_closure(s5, [Perm.from_cycles(5, [(0, 1)])]).order() == 120


def test_normal_closure_rejects_non_members():
    """Test that normal closure refuses an element outside the group."""
    with pytest.raises(InvalidInputError):
        normal_closure(alternating_group(4), [Perm.from_cycles(4, [(0, 1)])])


def test_commutator_of_commuting_elements_is_trivial():
    """Test that disjoint cycles commute."""
    a = Perm.from_cycles(5, [(0, 1)])
    b = Perm.from_cycles(5, [(2, 3, 4)])
    assert commutator(a, b).is_identity, "Disjoint cycles should commute"


def test_derived_series():
    """Test the derived series of S4 (solvable) and S5 (not solvable)."""
    orders, solvable = derived_series(symmetric_group(4))
    assert orders == [24, 12, 4, 1] and solvable, f"Unexpected S4 series {orders}"
    orders, solvable = derived_series(symmetric_group(5))
    assert orders == [120, 60, 60] and not solvable, f"Unexpected S5 series {orders}"


def test_composition_factors_of_small_groups():
    """Test factor labels of S6, C6 and PSL(2,7)."""
    assert composition_factors(symmetric_group(6)) == ["C2", "A6"]
    assert composition_factors(cyclic_group(6)) == ["C2", "C3"]
    assert composition_factors(symmetric_group(4)) == ["C2", "C3", "C2", "C2"]
    assert composition_factors(PermGroup.from_images(PSL27_GENERATORS)) == ["PSL(2,7)"]


def test_composition_factors_budget():
    """Test that a group above the order budget raises ResourceLimitError."""
    with pytest.raises(ResourceLimitError):
        composition_factors(symmetric_group(8), budget=1000)


def test_line_labels():
    """Test the 27 blow-up labels."""
    labels = line_labels()
    assert len(labels) == 27 and len(set(labels)) == 27, "Expected 27 distinct labels"
    assert labels[:2] == ["a0", "a1"] and labels[-1] == "c45", f"Unexpected labels {labels}"


def test_combinatorial_adjacency_is_ten_regular():
    """Test that every line meets exactly ten others."""
    adj = combinatorial_adjacency()
    assert adj.shape == (27, 27)
    assert (adj.sum(axis=1) == 10).all(), "Each of the 27 lines meets 10 others"
    assert not adj.diagonal().any(), "No line meets itself"


def test_weyl_e6_preserves_incidence():
    """Test that every W(E6) generator is an automorphism of the incidence graph."""
    adj = combinatorial_adjacency()
    for g in weyl_e6_on_lines().generators:
        for i in range(27):
            for j in range(27):
                assert adj[g[i], g[j]] == adj[i, j], f"{g!r} breaks incidence at ({i}, {j})"


def test_cremona_is_an_involution():
    """Test that the Cremona label permutation squares to the identity."""
    c = cremona_involution()
    assert not c.is_identity and (c * c).is_identity, "Cremona move should be an involution"


def test_weyl_e6_order_and_factors():
    """Test |W(E6)| = 51840, |W(E6)'| = 25920 and its composition factors."""
    w = weyl_e6_on_lines()
    assert w.order() == 51840, f"Unexpected W(E6) order {w.order()}"
    assert derived_subgroup(w).order() == 25920, "Derived subgroup should have index 2"
    assert composition_factors(w) == ["C2", "W(E6)+"], f"Unexpected factors {composition_factors(w)}"


def test_is_simple_tests_every_element_of_a_shared_cycle_type():
    """Test that two generators with the same cycle type are both checked.

    S4 acts on {0..3} and on its three pair partitions {4, 5, 6}. The
    transposition (0 1) becomes (0 1)(5 6), the same cycle type as the
    Klein four element (0 1)(2 3), yet only the latter has a proper
    normal closure.
    """
    a = Perm.from_cycles(7, [[0, 1], [5, 6]])
    b = Perm.from_cycles(7, [[0, 1, 2, 3], [4, 6]])
    v = Perm.from_cycles(7, [[0, 1], [2, 3]])
    assert a.cycle_type() == v.cycle_type()
    group = PermGroup(7, [a, b, v])
    assert group.order() == 24
    assert normal_closure(group, [a]).order() == 24 and normal_closure(group, [v]).order() == 4
    assert not is_simple(group, SeedTree(0).child("simple").generator(), samples=0), "S4 is not simple"


def test_is_simple_on_simple_groups():
    """Test that A5 and PSL(2,7) are still certified simple."""
    rng = SeedTree(0).child("simple").generator()
    assert is_simple(alternating_group(5), rng)
    assert is_simple(PermGroup.from_images(PSL27_GENERATORS), rng)
    assert not is_simple(symmetric_group(5), rng)
