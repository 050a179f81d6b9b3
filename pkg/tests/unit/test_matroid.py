import pytest
from plane_matroids.core.families import Permutation, build_m_prime, build_m_sigma
from plane_matroids.core.gf import make_field
from plane_matroids.core.matroid import (
    LineMatroid, delete_element, dependent, dependent_triples, from_dependent_triples,
    is_embedding, max_flat_size, natural_key, rank, rename, require_valid, restrict, validate
)
from plane_matroids.core.projplane import ProjPoint
from plane_matroids.core.types import Diagnosis

def line_matroid(elements, *flats):
    return LineMatroid(tuple(elements), tuple(frozenset(flat) for flat in flats))

class TestValidation:
    def test_uniform_four_points(self):
        """Four points with no three collinear form a valid line space"""
        assert validate(line_matroid("abcd")) == True

    def test_single_line_has_rank_two(self):
        diagnosis = validate(line_matroid("abc", "abc"))
        assert diagnosis == False
        assert diagnosis.reason == "rank < 3"

    def test_too_few_elements(self):
        assert validate(line_matroid("ab")).reason == "rank < 3"

    def test_flats_sharing_two_elements(self):
        diagnosis = validate(line_matroid("abcde", "abc", "abd"))
        assert diagnosis.reason.startswith("two flats share two elements")
        assert diagnosis.witness == ("a", "b")

    def test_small_flat(self):
        assert validate(line_matroid("abcd", "ab")).reason == "flat has fewer than 3 elements"

    def test_unknown_element(self):
        assert "unknown element" in validate(line_matroid("abcd", "abz")).reason

    def test_duplicate_element(self):
        assert "duplicate element" in validate(line_matroid("abca")).reason

    def test_require_valid_raises(self):
        with pytest.raises(ValueError, match="invalid matroid: rank < 3"):
            require_valid(line_matroid("abc", "abc"))

    def test_equality_ignores_order(self):
        assert line_matroid("abcd", "abc") == line_matroid("dcba", "cba")

class TestDiagnosis:
    def test_compares_with_bool(self):
        assert Diagnosis(True) == True
        assert Diagnosis(False, "rank < 3") == False
        assert Diagnosis(False, "rank < 3") != True

    def test_compares_fields_with_diagnosis(self):
        assert Diagnosis(False, "rank < 3") == Diagnosis(False, "rank < 3")
        assert Diagnosis(False, "rank < 3") != Diagnosis(False, "duplicate flat")

    def test_hash_matches_bool(self):
        assert {Diagnosis(True), True} == {True}

class TestQueries:
    def test_dependent_triple(self):
        M = build_m_prime(3)
        assert dependent(M, ["a_1", "b_1", "c_0"]) == True
        assert dependent(M, ["a_1", "b_2", "c_0"]) == False

    def test_bad_triple(self):
        with pytest.raises(ValueError, match="bad triple"):
            dependent(build_m_prime(3), ["a_1", "b_1"])

    def test_rank(self):
        M = build_m_prime(3)
        assert rank(M, ["a_1", "a_2", "a_3"]) == 2
        assert rank(M, ["a_1", "b_2", "c_0"]) == 3
        assert rank(M, ["a_1"]) == 1

    def test_dependent_triples_count(self):
        """M'(3): A and B contribute one triple each, X_1..X_3 one each"""
        assert len(dependent_triples(build_m_prime(3))) == 5

    def test_max_flat_size(self):
        assert max_flat_size(build_m_prime(5)) == 5
        assert max_flat_size(line_matroid("abcd")) == 2

    def test_natural_order(self):
        assert sorted(["a_10", "a_2", "a_1"], key=natural_key) == ["a_1", "a_2", "a_10"]

    def test_triples_determine_flats(self):
        M = build_m_sigma(4, Permutation.parse(4, "(1 2)(3 4)"))
        assert from_dependent_triples(M.elements, dependent_triples(M)) == M

class TestMinors:
    def test_deleting_c1_gives_m_prime(self):
        sigma = Permutation.parse(3, "(1 2 3)")
        assert delete_element(build_m_sigma(3, sigma), "c_1") == build_m_prime(3)

    def test_delete_unknown(self):
        with pytest.raises(ValueError, match="no such element"):
            delete_element(build_m_prime(2), "z")

    def test_deletion_keeps_order(self):
        M = delete_element(build_m_prime(2), "a_1")
        assert M.elements == ("a_2", "b_1", "b_2", "c_0")

    def test_restrict_below_rank(self):
        with pytest.raises(ValueError, match="restriction below rank"):
            restrict(build_m_prime(4), ["a_1", "a_2", "a_3", "a_4"])

    def test_rename(self):
        M = line_matroid("abcd", "abc")
        renamed = rename(M, {"a": "w", "b": "x", "c": "y", "d": "z"})
        assert renamed == line_matroid("wxyz", "wxy")

    def test_rename_must_be_injective(self):
        with pytest.raises(ValueError, match="not injective"):
            rename(line_matroid("abcd"), {"a": "x", "b": "x", "c": "y", "d": "z"})

class TestEmbedding:
    def setup_method(self):
        self.spec = make_field(3)
        self.M = line_matroid("abcd", "abc")
        self.img = {
            "a": ProjPoint.from_values(self.spec, 0, 0, 1),
            "b": ProjPoint.from_values(self.spec, 1, 0, 1),
            "c": ProjPoint.from_values(self.spec, 2, 0, 1),
            "d": ProjPoint.from_values(self.spec, 0, 1, 1),
        }

    def test_valid_embedding(self):
        assert is_embedding(self.M, self.img, self.spec) == True

    def test_map_not_total(self):
        del self.img["d"]
        assert is_embedding(self.M, self.img, self.spec).reason == "map is not total"

    def test_not_injective(self):
        self.img["d"] = self.img["a"]
        diagnosis = is_embedding(self.M, self.img, self.spec)
        assert diagnosis.reason.startswith("not injective")
        assert diagnosis.witness == ("a", "d")

    def test_extra_collinearity(self):
        self.img["d"] = ProjPoint.from_values(self.spec, 1, 0, 0)
        diagnosis = is_embedding(self.M, self.img, self.spec)
        assert diagnosis.reason == "collinear but independent"
        assert diagnosis.witness == ("a", "b", "d")

    def test_missing_collinearity(self):
        self.img["c"] = ProjPoint.from_values(self.spec, 1, 1, 1)
        diagnosis = is_embedding(self.M, self.img, self.spec)
        assert diagnosis.reason == "dependent but not collinear"
        assert diagnosis.witness == ("a", "b", "c")
