import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from fixsum.combinatorics import (
    PASCAL_LIMIT, binomial, binomial_inversion, binomial_transform, exp_formula_counts,
    parity_split_counts,
)
from fixsum.errors import DecompositionViolation
from oracles import cycle_count, set_partitions

derangement_w = lambda m: 0 if m == 1 else math.factorial(m - 1)
permutation_w = lambda m: math.factorial(m - 1)


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (4, 1, 4), (3, 5, 0), (5, -1, 0), (-2, 1, 0), (0, 0, 1)])
def test_binomial_examples(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_symmetry_and_math_comb():
    for n in range(201):
        for k in range(n + 1):
            assert binomial(n, k) == binomial(n, n - k) == math.comb(n, k)


def test_binomial_beyond_cache():
    n = PASCAL_LIMIT + 37
    assert binomial(n, 20) == math.comb(n, 20)


def test_exp_formula_derangements_and_permutations():
    assert exp_formula_counts(derangement_w, 3)[3] == 2
    assert exp_formula_counts(permutation_w, 8) == [math.factorial(n) for n in range(9)]


def test_exp_formula_no_singleton_partitions_against_brute_force():
    brute = sum(1 for p in set_partitions(range(4)) if all(len(b) > 1 for b in p))
    assert brute == 4
    assert exp_formula_counts(lambda m: int(m >= 2), 4)[4] == brute


def test_exp_formula_accepts_sequences():
    assert exp_formula_counts([0, 1, 1, 1, 1], 4) == exp_formula_counts(lambda m: 1, 4)
    with pytest.raises(ValueError):
        exp_formula_counts([0, 1], 4)


@pytest.mark.parametrize("base", [derangement_w, lambda m: int(m >= 2), lambda m: m ** (m - 1) if m > 1 else 0])
@pytest.mark.parametrize("t", [1, 2])
def test_marking_singletons_is_a_binomial_transform(base, t):
    D = exp_formula_counts(base, 20)
    G = exp_formula_counts(lambda m: base(m) + (t if m == 1 else 0), 20)
    assert G == [sum(math.comb(n, k) * t**k * D[n - k] for k in range(n + 1)) for n in range(21)]


def test_parity_split_permutations_brute_force():
    for n in range(7):
        odd = sum(cycle_count(p) % 2 for p in itertools.permutations(range(n)))
        even, odd_seq = parity_split_counts(permutation_w, n)
        assert odd_seq[n] == odd
        assert even[n] == math.factorial(n) - odd
    even, odd = parity_split_counts(permutation_w, 3)
    assert (even[3], odd[3]) == (3, 3)
    assert (even[0], odd[0]) == (1, 0)


@pytest.mark.parametrize("weights", [
    permutation_w, derangement_w, lambda m: 1, lambda m: int(m >= 2), lambda m: int(m <= 2),
    lambda m: math.factorial(m - 1) if m % 2 else 0, lambda m: m ** (m - 1), lambda m: m ** max(m - 2, 0),
])
def test_parity_split_sums_to_total(weights):
    even, odd = parity_split_counts(weights, 30)
    total = exp_formula_counts(weights, 30)
    assert [e + o for e, o in zip(even, odd)] == total
    assert all(v >= 0 for v in even + odd)


def test_binomial_inversion_examples():
    G = [math.factorial(n) for n in range(6)]
    brute = sum(1 for p in itertools.permutations(range(5)) if all(p[i] != i for i in range(5)))
    assert binomial_inversion(G, 1, 5)[5] == brute == 44
    assert binomial_inversion(G, 0, 5) == G
    rooted = [(m + 1) ** (m - 1) if m else 1 for m in range(6)]
    assert binomial_inversion(rooted, 1, 5)[2] == 2


def test_binomial_inversion_detects_violation():
    with pytest.raises(DecompositionViolation):
        binomial_inversion([1, 0, 0], 1, 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 10**30), min_size=31, max_size=31), st.sampled_from([1, 2, 3]))
def test_inversion_undoes_transform(D, C):
    assert binomial_inversion(binomial_transform(D, C, 30), C, 30) == D
