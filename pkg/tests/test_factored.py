import random
from fractions import Fraction

import pytest

from arrlab.arrangement import LineArrangement, builtin
from arrlab.factored import (
    Factorization,
    find_factorization,
    find_factorization_bruteforce,
    is_valid_factorization,
    propagation_trace,
)
from arrlab.scalar import RATIONAL

from oracles import random_line_arrangement


def test_two_generic_lines():
    arr = builtin("boolean2")
    fac = find_factorization(arr)
    assert fac is not None
    assert is_valid_factorization(arr, fac)
    assert {fac.part1, fac.part2} == {frozenset({0}), frozenset({1})}


def test_two_parallel_lines():
    arr = LineArrangement(((Fraction(1), Fraction(0), Fraction(0)),
                           (Fraction(1), Fraction(0), Fraction(1))),
                          RATIONAL)
    assert find_factorization(arr) is None
    assert find_factorization_bruteforce(arr) is None


def test_lid_not_factored(lid):
    assert find_factorization(lid) is None


def test_lid_propagation_finds_contradiction(lid):
    steps, contradiction = propagation_trace(lid)
    assert contradiction is not None
    assert steps[0] == (0, 1, "seed")


def test_single_line_rejected():
    arr = LineArrangement(((Fraction(1), Fraction(0), Fraction(0)),),
                          RATIONAL)
    with pytest.raises(ValueError):
        find_factorization(arr)


def test_vertical_plus_horizontals_is_factored():
    # x = 0 against the parallel pair y = 0, y = 1: every double point
    # splits 1-1 and the parallel pair shares a part
    arr = LineArrangement(((Fraction(1), Fraction(0), Fraction(0)),
                           (Fraction(0), Fraction(1), Fraction(0)),
                           (Fraction(0), Fraction(1), Fraction(1))),
                          RATIONAL)
    fac = find_factorization(arr)
    assert fac is not None
    assert is_valid_factorization(arr, fac)
    assert {fac.part1, fac.part2} == {frozenset({0}), frozenset({1, 2})}


def test_generic_triangle_not_factored():
    # double points pairwise force opposite parts: an odd cycle, so none
    arr = builtin("generic3")
    assert find_factorization(arr) is None
    assert find_factorization_bruteforce(arr) is None


def test_validator_rejects_bad_partitions():
    arr = builtin("generic3")
    assert not is_valid_factorization(
        arr, Factorization(frozenset({0, 1, 2}), frozenset()))
    assert not is_valid_factorization(
        arr, Factorization(frozenset({0}), frozenset({1})))


def test_search_agrees_with_bruteforce():
    rng = random.Random(99)
    for trial in range(40):
        arr = random_line_arrangement(rng, rng.randint(2, 6))
        fast = find_factorization(arr)
        slow = find_factorization_bruteforce(arr)
        assert (fast is None) == (slow is None), arr
        if fast is not None:
            assert is_valid_factorization(arr, fast)
            assert is_valid_factorization(arr, slow)


def test_relabeling_preserves_existence():
    rng = random.Random(42)
    for _ in range(15):
        arr = random_line_arrangement(rng, rng.randint(3, 6))
        exists = find_factorization(arr) is not None
        perm = list(arr.lines)
        rng.shuffle(perm)
        shuffled = LineArrangement(tuple(perm), arr.field)
        assert (find_factorization(shuffled) is not None) == exists
