import itertools
import math
from collections import Counter

import pytest

from fixsum.combinatorics import binomial, exp_formula_counts, parity_split_counts
from fixsum.errors import DomainError, UnknownFamily
from fixsum.families import (
    FAMILY_IDS, family_D, family_G, family_g, family_Gk, get_family, idealized_g, list_families,
)
from oracles import count_forests, set_partitions

EXACT_C1 = ["permutations", "involutions", "set_partitions", "odd_cycle_permutations",
            "rooted_forests", "unrooted_forests"]


def test_registry():
    fams = list_families()
    assert len(fams) == 9
    assert [f.id for f in fams] == list(FAMILY_IDS)
    assert [f.id for f in list_families()] == list(FAMILY_IDS)  # deterministic order
    assert "permutations" in FAMILY_IDS
    assert all(f.supports_bruteforce_up_to >= 4 for f in fams)
    assert get_family("involutions").exact_C_decomposable == 1
    assert {f.id for f in fams if f.supports_sampling} == {"permutations", "all_functions", "partial_functions"}
    assert {f.id for f in fams if f.exact_C_decomposable == 1} == set(EXACT_C1)
    assert all(f.g_depends_only_on_k for f in fams)
    assert get_family("permutations").metadata()["id"] == "permutations"


def test_unknown_family():
    with pytest.raises(UnknownFamily):
        get_family("bogus")
    with pytest.raises(UnknownFamily):
        family_G("bogus", 3)


def test_domain_errors():
    with pytest.raises(DomainError):
        family_g("permutations", 5, 4)
    with pytest.raises(DomainError):
        family_g("permutations", -1, 4)
    with pytest.raises(DomainError):
        family_G("permutations", -1)


@pytest.mark.parametrize("fid,n,expected", [
    ("all_functions", 3, 27), ("partial_functions", 2, 9), ("rooted_forests", 3, 16),
    ("permutations", 5, 120), ("set_partitions", 5, 52), ("involutions", 5, 26),
])
def test_family_G_examples(fid, n, expected):
    assert family_G(fid, n) == expected


@pytest.mark.parametrize("fid,n,expected", [
    ("permutations", 3, 2), ("involutions", 4, 3), ("all_functions", 3, 8), ("set_partitions", 4, 4),
])
def test_family_D_examples(fid, n, expected):
    assert family_D(fid, n) == expected


def test_empty_structure():
    for fid in FAMILY_IDS:
        if fid == "odd_cycle_count_permutations":
            # the empty permutation has zero cycles, an even number
            assert family_D(fid, 0) == family_G(fid, 0) == 0
        else:
            assert family_D(fid, 0) == family_G(fid, 0) == 1


def test_family_g_examples():
    assert family_g("permutations", 1, 4) == family_D("permutations", 3) == 2
    # functions on [3] fixing exactly {1}: f(1)=1, f(2) in {1,3}, f(3) in {1,2}
    hand = sum(1 for f in itertools.product(range(1, 4), repeat=3)
               if f[0] == 1 and f[1] != 2 and f[2] != 3)
    assert family_g("all_functions", 1, 3) == hand == 4
    # partial maps on [2] (None = undefined) whose fixed set is exactly {1}
    fixed = lambda f, x: f[x - 1] is None or f[x - 1] == x
    exactly_1 = sum(1 for f in itertools.product([None, 1, 2], repeat=2) if fixed(f, 1) and not fixed(f, 2))
    assert family_g("partial_functions", 1, 2) == exactly_1 == 2


def test_family_Gk_examples():
    brute = sum(1 for p in itertools.permutations(range(4)) if sum(p[i] == i for i in range(4)) == 1)
    assert family_Gk("permutations", 1, 4) == brute == 8
    assert family_Gk("permutations", 7, 7) == 1


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_counts_match_enumeration_for_every_fixed_set(fid):
    fam = get_family(fid)
    for n in range(fam.supports_bruteforce_up_to + 1):
        fixed_sets = Counter(fam.enumerate_fixed_sets(n))
        assert sum(fixed_sets.values()) == family_G(fid, n)
        assert fixed_sets[()] == family_D(fid, n)
        for k in range(n + 1):
            for K in itertools.combinations(range(1, n + 1), k):
                assert fixed_sets[K] == family_g(fid, k, n)


@pytest.mark.parametrize("fid", FAMILY_IDS)
def test_Gk_partition_G(fid):
    fam = get_family(fid)
    for n in range(max(13, fam.supports_bruteforce_up_to + 5)):
        assert sum(family_Gk(fid, k, n) for k in range(n + 1)) == family_G(fid, n)
        assert family_g(fid, 0, n) == family_D(fid, n)


@pytest.mark.parametrize("fid", EXACT_C1)
def test_exact_decomposition(fid):
    C = get_family(fid).exact_C_decomposable
    for n in range(26):
        for k in range(n + 1):
            assert family_g(fid, k, n) == C**k * family_D(fid, n - k) == idealized_g(fid, k, n)


def test_function_families_are_not_exactly_decomposable():
    # non-fixed points may map into the fixed set
    for fid in ("all_functions", "partial_functions"):
        assert family_g(fid, 1, 5) != idealized_g(fid, 1, 5)
        assert get_family(fid).exact_C_decomposable is None


def test_odd_cycle_count_total_matches_parity_split():
    odd_total = parity_split_counts(lambda m: math.factorial(m - 1), 12)[1]
    for n in range(13):
        assert sum(binomial(n, k) * family_g("odd_cycle_count_permutations", k, n)
                   for k in range(n + 1)) == odd_total[n]


def test_sequences_against_exp_formula_and_closed_forms():
    der = exp_formula_counts(lambda m: 0 if m == 1 else math.factorial(m - 1), 40)
    assert [family_D("permutations", n) for n in range(41)] == der
    inv_D = exp_formula_counts(lambda m: int(m == 2), 40)
    assert [family_D("involutions", n) for n in range(41)] == inv_D
    rooted = exp_formula_counts(lambda m: m ** (m - 1), 30)
    assert [family_G("rooted_forests", n) for n in range(31)] == rooted
    assert [family_G("all_functions", n) for n in range(1, 9)] == [n**n for n in range(1, 9)]


def test_set_partition_counts_against_enumeration():
    for n in range(8):
        parts = list(set_partitions(range(n)))
        assert len(parts) == family_G("set_partitions", n)
        assert sum(all(len(b) > 1 for b in p) for p in parts) == family_D("set_partitions", n)


def test_unrooted_forests_against_acyclic_graph_count():
    for n in range(9):
        assert family_G("unrooted_forests", n) == count_forests(n)
    # OEIS A001858, cross-checked by the backtracking count above
    assert [family_G("unrooted_forests", n) for n in range(9)] == [1, 1, 2, 7, 38, 291, 2932, 36961, 561948]


def test_unrooted_forest_growth():
    n = 60
    log_ratio = math.log(family_G("unrooted_forests", n)) - (0.5 + (n - 2) * math.log(n))
    assert abs(math.exp(log_ratio) - 1) < 0.10


def test_large_n_is_cached_and_consistent():
    d1000 = family_D("permutations", 1000)
    assert d1000 == 999 * (family_D("permutations", 999) + family_D("permutations", 998))
    assert family_g("partial_functions", 3, 10) == 8 * 9**7
