import pytest
from itertools import combinations, permutations
from hypothesis import assume, given, settings, strategies as st
from plane_matroids.core.families import Arrangement, Permutation, build_m_sigma
from plane_matroids.core.orientability import (
    check_certificate, chirotope_of_arrangement, cyclic_extension_feasible, extension_feasible,
    find_chirotope, gp_check, triple_extension_feasible
)

pytestmark = pytest.mark.integration

def same_part(first, second, third):
    """Direct S+/S- test: seen from the middle vertex the outer two share a part"""
    (i1, j1), (i2, j2), (i3, j3) = sorted((first, second, third))
    return ((i1 - i2) * (j1 - j2) > 0) == ((i3 - i2) * (j3 - j2) > 0)

class TestExtensionCriteria:
    @pytest.mark.parametrize("n", range(3, 7))
    def test_triples_agree_with_monotone_rule(self, n):
        for rows in combinations(range(1, n + 1), 3):
            for cols in permutations(range(1, n + 1), 3):
                vertices = list(zip(rows, cols))
                monotone = extension_feasible(n, dict(vertices))
                assert triple_extension_feasible(n, *vertices) == monotone
                assert same_part(*vertices) == monotone

    @pytest.mark.parametrize("n", range(2, 7))
    def test_reversal_invariance(self, n):
        """Reading F(n) right to left keeps feasibility"""
        for cols in permutations(range(1, n + 1)):
            f = dict(zip(range(1, n + 1), cols))
            mirrored = {n + 1 - i: j for i, j in f.items()}
            assert extension_feasible(n, f) == extension_feasible(n, mirrored)

    @pytest.mark.parametrize("n", range(2, 8))
    def test_cyclic_maps(self, n):
        """Full-support cyclic maps admit an extension only for n = 2"""
        cyclic = [sigma for sigma in map(Permutation, permutations(range(1, n + 1)))
                  if len(sigma.cycles()) == 1]
        assert cyclic
        assert all(cyclic_extension_feasible(alpha) == (n == 2) for alpha in cyclic)

line_coefficients = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))

class TestChirotopeSources:
    @settings(max_examples=60, deadline=None)
    @given(st.lists(line_coefficients, min_size=4, max_size=7))
    def test_straight_line_arrangements_satisfy_grassmann_pluecker(self, lines):
        names = tuple(f"e_{k}" for k in range(len(lines)))
        try:
            chi = chirotope_of_arrangement(Arrangement(names, tuple(lines)))
        except ValueError:
            assume(False)
        assert gp_check(chi) == True

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.sampled_from(["a_1", "a_2", "b_1", "b_2", "c_0", "c_1"]), unique=True))
    def test_reoriented_certificates_stay_valid(self, flips):
        M = build_m_sigma(2, Permutation.parse(2, "(1 2)"))
        chi = find_chirotope(M, budget=100_000).chirotope
        for e in flips:
            chi = chi.reorient(e)
        assert check_certificate(M, chi) == True

    def test_search_zero_pattern_matches_dependents(self):
        M = build_m_sigma(4, Permutation.parse(4, "(1 4)(2 3)"))
        found = find_chirotope(M, budget=1_000_000).chirotope
        assert {frozenset(t) for t in found.zero_triples()} == set(M.dependent_set)
