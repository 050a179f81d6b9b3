import pytest
from fractions import Fraction
from hypothesis import given, strategies as st
from plane_matroids.core.families import (
    Arrangement, GroupSpec, Permutation, abelian_groups, arrangement_vertex,
    build_group_matroid, build_m_prime, build_m_sigma, cycle_restriction,
    derangements, group_to_sigma, realize_f, realize_four_cycles, sigma_graph, tau_relabel
)
from plane_matroids.core.matroid import rename

class TestPermutation:
    def test_parse_cycle_notation(self):
        sigma = Permutation.parse(4, "(1 3)(2 4)")
        assert sigma.images == (3, 4, 1, 2)
        assert sigma.cycle_notation() == "(1 3)(2 4)"

    def test_identity_notation(self):
        assert Permutation.parse(3, "()") == Permutation.identity(3)
        assert Permutation.identity(3).cycle_notation() == "()"

    def test_inverse(self):
        sigma = Permutation.parse(4, "(1 2 3 4)")
        assert sigma.inverse() == Permutation.parse(4, "(4 3 2 1)")

    def test_cycles_include_fixed_points(self):
        assert Permutation.parse(4, "(2 4)").cycles() == [(1,), (2, 4), (3,)]

    def test_point_outside_range(self):
        with pytest.raises(ValueError, match="outside"):
            Permutation.parse(3, "(1 4)")

    def test_repeated_point(self):
        with pytest.raises(ValueError, match="twice"):
            Permutation.parse(4, "(1 2)(2 3)")

    def test_not_a_bijection(self):
        with pytest.raises(ValueError, match="not a permutation"):
            Permutation((1, 1, 2))

    def test_derangement_counts(self):
        """1, 2, 9 and 44 derangements of [2], [3], [4], [5]"""
        assert [len(list(derangements(n))) for n in (2, 3, 4, 5)] == [1, 2, 9, 44]

    @given(st.integers(1, 7).flatmap(lambda n: st.permutations(range(1, n + 1))))
    def test_cycle_notation_round_trip(self, images):
        sigma = Permutation(tuple(images))
        assert Permutation.parse(sigma.n, sigma.cycle_notation()) == sigma

class TestSigmaGraph:
    def test_two_four_cycles(self):
        assert sigma_graph(Permutation.parse(4, "(1 3)(2 4)")).cycle_lengths == (4, 4)

    def test_cycle_of_length_eight(self):
        assert sigma_graph(Permutation.parse(4, "(1 2 3 4)")).cycle_lengths == (8,)

    def test_mixed_cycles(self):
        assert sigma_graph(Permutation.parse(5, "(1 2)(3 4 5)")).cycle_lengths == (4, 6)

    def test_cycle_walk(self):
        graph = sigma_graph(Permutation.parse(2, "(1 2)"))
        assert graph.cycles == (("a_1", "b_1", "a_2", "b_2"),)

    def test_fixed_point_rejected(self):
        with pytest.raises(ValueError, match="sigma not a derangement"):
            sigma_graph(Permutation.parse(3, "(1 2)"))

    def test_edge_count(self):
        graph = sigma_graph(Permutation.parse(5, "(1 2)(3 4 5)"))
        assert len(graph.vertices) == 10
        assert len(graph.edges) == 10

class TestGroups:
    def test_parse(self):
        G = GroupSpec.parse("Z2xZ4")
        assert G.orders == (2, 4)
        assert G.order == 8
        assert str(G) == "Z2xZ4"

    def test_bad_group(self):
        with pytest.raises(ValueError, match="not a group"):
            GroupSpec.parse("S3")

    def test_elements_lexicographic(self):
        assert GroupSpec((2, 2)).elements() == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_parse_element(self):
        G = GroupSpec((2, 4))
        assert G.parse_element("1,3") == (1, 3)
        assert G.parse_element("(1,3)") == (1, 3)
        with pytest.raises(ValueError, match="not an element"):
            G.parse_element("2,0")

    def test_element_order(self):
        G = GroupSpec((2, 4))
        assert G.element_order((1, 1)) == 4
        assert G.element_order((0, 2)) == 2
        assert G.element_order((0, 0)) == 1

    def test_subtraction(self):
        G = GroupSpec((6,))
        assert G.sub((1,), (4,)) == (3,)

    def test_abelian_groups_up_to_eight(self):
        names = [str(G) for G in abelian_groups(8)]
        assert len(names) == 10
        assert {"Z8", "Z2xZ4", "Z2xZ2xZ2", "Z6"} <= set(names)
        assert "Z2xZ3" not in names

    def test_abelian_groups_include_odd_orders(self):
        """Odd cyclic groups and Z3xZ3 are listed in invariant-factor order"""
        names = [str(G) for G in abelian_groups(9)]
        assert names == ["Z2", "Z3", "Z2xZ2", "Z4", "Z5", "Z6", "Z7", "Z2xZ2xZ2", "Z2xZ4", "Z8", "Z3xZ3", "Z9"]

class TestConstructors:
    def test_m_prime_sizes(self):
        M = build_m_prime(4)
        assert len(M.elements) == 9
        assert len(M.flats) == 6

    def test_m_prime_too_small(self):
        with pytest.raises(ValueError, match="n too small"):
            build_m_prime(1)

    def test_m_sigma_sizes(self):
        M = build_m_sigma(4, Permutation.parse(4, "(1 3)(2 4)"))
        assert len(M.elements) == 10
        assert len(M.flats) == 10

    def test_m_sigma_fixed_point(self):
        with pytest.raises(ValueError, match="sigma not a derangement"):
            build_m_sigma(3, Permutation.parse(3, "(1 2)"))

    def test_mac_lane(self):
        M = build_group_matroid(GroupSpec((3,)), (0,), (1,))
        assert len(M.elements) == 8
        assert len(M.flats) == 8

    def test_z5(self):
        M = build_group_matroid(GroupSpec((5,)), (0,), (1,))
        assert (len(M.elements), len(M.flats)) == (12, 12)

    def test_klein_four(self):
        M = build_group_matroid(GroupSpec((2, 2)), (0, 0), (1, 0))
        assert (len(M.elements), len(M.flats)) == (10, 10)
        assert "a_(1,0)" in M.elements

    def test_equal_group_elements(self):
        with pytest.raises(ValueError, match="need two distinct group elements"):
            build_group_matroid(GroupSpec((3,)), (1,), (1,))

class TestGroupTranslation:
    def test_z3_gives_three_cycle(self):
        translation = group_to_sigma(GroupSpec((3,)), (0,), (1,))
        assert translation.n == 3
        assert translation.sigma.cycle_notation() == "(1 2 3)"

    def test_z4_gives_two_transpositions(self):
        translation = group_to_sigma(GroupSpec((4,)), (0,), (2,))
        assert translation.sigma.cycle_type() == (2, 2)

    def test_renaming_reproduces_group_matroid(self):
        G = GroupSpec((6,))
        translation = group_to_sigma(G, (1,), (4,))
        renamed = rename(build_m_sigma(translation.n, translation.sigma), translation.renaming)
        assert renamed == build_group_matroid(G, (1,), (4,))

class TestTauRelabel:
    def test_two_steps(self):
        tau = tau_relabel(4, Permutation.parse(4, "(1 3)(2 4)"))
        assert tau.images == (1, 2, 4, 3)

    def test_single_step(self):
        assert tau_relabel(2, Permutation.parse(2, "(1 2)")) == Permutation.identity(2)

    def test_three_steps(self):
        tau = tau_relabel(6, Permutation.parse(6, "(1 4)(2 5)(3 6)"))
        assert tau.images == (1, 2, 3, 6, 5, 4)

    def test_requires_involution(self):
        with pytest.raises(ValueError, match="tau requires an involution"):
            tau_relabel(3, Permutation.parse(3, "(1 2 3)"))

class TestArrangements:
    def test_four_cycle_lines(self):
        arr = realize_four_cycles(4, Permutation.parse(4, "(1 3)(2 4)"))
        assert len(arr) == 10
        assert arr.line("a_1") == (-1, -1, -1)
        assert arr.line("c_0") == (0, 0, 1)
        assert arr.line("c_1") == (1, 0, 0)

    def test_c1_vertices_on_vertical_axis(self):
        sigma = Permutation.parse(4, "(1 3)(2 4)")
        arr = realize_four_cycles(4, sigma)
        for i in range(1, 5):
            vertex = arrangement_vertex(arr, f"a_{i}", f"b_{sigma(i)}")
            assert vertex.affine[0] == 0

    def test_four_cycles_needs_involution(self):
        with pytest.raises(ValueError, match="tau requires an involution"):
            realize_four_cycles(4, Permutation.parse(4, "(1 2 3 4)"))

    def test_f_pairs_are_parallel(self):
        arr = realize_f(4, Permutation.identity(4))
        for i in range(1, 5):
            vertex = arrangement_vertex(arr, f"a_{i}", f"b_{i}")
            assert vertex.affine is None
            assert vertex.homogeneous[2] == 0

    def test_f_vertex_coordinates(self):
        """X_{1,3} = (1/(tau(1)-tau(3)), tau(1)/(tau(1)-tau(3)))"""
        arr = realize_f(4, Permutation.identity(4))
        vertex = arrangement_vertex(arr, "a_1", "b_3")
        assert vertex.affine == (Fraction(-1, 2), Fraction(-1, 2))

    def test_vertex_of_a_line_with_itself(self):
        arr = realize_f(4, Permutation.identity(4))
        with pytest.raises(ValueError, match="lines coincide"):
            arrangement_vertex(arr, "a_1", "a_1")

    def test_proportional_lines(self):
        with pytest.raises(ValueError, match="degenerate arrangement"):
            Arrangement(("x", "y", "z"), ((1, 2, 3), (2, 4, 6), (0, 0, 1)))

    def test_float_coefficients_rejected(self):
        with pytest.raises(ValueError, match="integer"):
            Arrangement(("x", "y", "z"), ((1.0, 0, 0), (0, 1, 0), (0, 0, 1)))

class TestCycleRestriction:
    def test_restriction_is_cyclic_member(self):
        sigma = Permutation.parse(5, "(1 2)(3 4 5)")
        restricted, renaming = cycle_restriction(5, sigma, 3)
        assert len(restricted.elements) == 8
        assert rename(restricted, renaming) == build_m_sigma(3, Permutation.parse(3, "(1 2 3)"))
