from plane_matroids.core.validation import (
    is_derangement, is_prime, valid_bijection, valid_cycle_notation, valid_cyclic_orders,
    valid_element_name, valid_group_notation, valid_tolerances
)

class TestIsPrime:
    def test_small_primes(self):
        assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_square_of_prime(self):
        assert is_prime(49) == False

class TestPermutationInputs:
    def test_valid_bijection(self):
        assert valid_bijection([2, 3, 1]) == True
        assert valid_bijection([1, 1, 3]) == False
        assert valid_bijection([0, 1, 2]) == False

    def test_derangement(self):
        assert is_derangement([2, 1]) == True
        assert is_derangement([2, 1, 3]) == False

    def test_cycle_notation(self):
        """Empty input and "()" both denote the identity"""
        assert valid_cycle_notation("(1 3)(2 4)") == True
        assert valid_cycle_notation(" ( 1 2 ) ") == True
        assert valid_cycle_notation("()") == True
        assert valid_cycle_notation("") == True

    def test_bad_cycle_notation(self):
        assert valid_cycle_notation("(1,2)") == False
        assert valid_cycle_notation("1 2") == False
        assert valid_cycle_notation("(1 2") == False

class TestGroupInputs:
    def test_group_notation(self):
        assert valid_group_notation("Z3") == True
        assert valid_group_notation("Z2xZ4") == True
        assert valid_group_notation("Z2 x Z2") == True

    def test_bad_group_notation(self):
        assert valid_group_notation("Z") == False
        assert valid_group_notation("Z2*Z3") == False
        assert valid_group_notation("S3") == False

    def test_cyclic_orders(self):
        assert valid_cyclic_orders([2, 4]) == True
        assert valid_cyclic_orders([1]) == False
        assert valid_cyclic_orders([]) == False

class TestOtherInputs:
    def test_element_name(self):
        assert valid_element_name("a_(1,0)") == True
        assert valid_element_name("") == False
        assert valid_element_name("a_é") == False
        assert valid_element_name(3) == False

    def test_tolerances(self):
        assert valid_tolerances(1e-9, 1e-6) == True
        assert valid_tolerances(1e-6, 1e-6) == False
        assert valid_tolerances(0, 1e-6) == False
