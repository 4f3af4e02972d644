"""Registry of labeled-structure families.

Each family knows, exactly, how many structures live on [n] (``G``), how
many have no fixed point (``D``), and how many have their fixed points at
exactly a prescribed k-set of labels (``g``). For every registered family
the last count depends only on the size of the set.

Every family also carries a brute-force enumerator used as an oracle at
small n; it yields, for each structure, the tuple of its fixed labels.
"""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterator, List, Optional, Tuple, Union

from .combinatorics import binomial, exp_formula_counts, parity_split_counts
from .errors import DomainError, UnknownFamily


class _Prefix:
    """An integer sequence computed in prefixes, extended by doubling."""

    def __init__(self, compute: Callable[[int], List[int]]):
        self._compute = compute
        self._values: List[int] = []
        self._lock = threading.Lock()

    def __getitem__(self, n: int) -> int:
        if n >= len(self._values):
            with self._lock:
                if n >= len(self._values):
                    self._values = self._compute(max(n, 2 * len(self._values), 16))
        return self._values[n]


def _derangements(n_max: int) -> List[int]:
    D = [1, 0]
    for n in range(2, n_max + 1):
        D.append((n - 1) * (D[-1] + D[-2]))
    return D[: n_max + 1]


def _cycle_weight(m: int) -> int:
    return math.factorial(m - 1)


def _tree_weight(m: int, rooted: bool) -> int:
    if m == 1:
        return 1
    return m ** (m - 1) if rooted else m ** (m - 2)


def _without_singletons(weight: Callable[[int], int]) -> Callable[[int], int]:
    return lambda m: 0 if m == 1 else weight(m)


def _involutions_without_fixed_points(n: int) -> int:
    if n % 2:
        return 0
    return math.factorial(n) // (2 ** (n // 2) * math.factorial(n // 2))


def _odd_cycle_weight(m: int) -> int:
    return math.factorial(m - 1) if m % 2 else 0


def _exp(weight: Callable[[int], int]) -> _Prefix:
    return _Prefix(lambda n_max: exp_formula_counts(weight, n_max))


# --- brute-force enumerators -------------------------------------------------

def _cycle_lengths(p) -> List[int]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if not seen[i]:
            j, size = i, 0
            while not seen[j]:
                seen[j] = True
                j = p[j]
                size += 1
            lengths.append(size)
    return lengths


def _fixed(p) -> Tuple[int, ...]:
    return tuple(i + 1 for i, v in enumerate(p) if v == i)


def _enum_permutations(n: int, keep=None) -> Iterator[Tuple[int, ...]]:
    for p in itertools.permutations(range(n)):
        if keep is None or keep(p):
            yield _fixed(p)


def _is_involution(p) -> bool:
    return all(p[v] == i for i, v in enumerate(p))


def _all_cycles_odd(p) -> bool:
    return all(c % 2 for c in _cycle_lengths(p))


def _odd_number_of_cycles(p) -> bool:
    return len(_cycle_lengths(p)) % 2 == 1


def _enum_functions(n: int) -> Iterator[Tuple[int, ...]]:
    for f in itertools.product(range(n), repeat=n):
        yield _fixed(f)


def _enum_partial_functions(n: int) -> Iterator[Tuple[int, ...]]:
    # value n encodes "undefined"; undefined points count as fixed
    for f in itertools.product(range(n + 1), repeat=n):
        yield tuple(i + 1 for i, v in enumerate(f) if v == i or v == n)


def _restricted_growth_strings(n: int) -> Iterator[List[int]]:
    if n == 0:
        yield []
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield prefix
            return
        for b in range(top + 2):
            yield from rec(prefix + [b], max(top, b))

    yield from rec([0], 0)


def _enum_set_partitions(n: int) -> Iterator[Tuple[int, ...]]:
    for rgs in _restricted_growth_strings(n):
        sizes = [0] * (max(rgs, default=-1) + 1)
        for b in rgs:
            sizes[b] += 1
        yield tuple(i + 1 for i, b in enumerate(rgs) if sizes[b] == 1)


def _enum_rooted_forests(n: int) -> Iterator[Tuple[int, ...]]:
    # parent[i] == n marks a root; keep the parent maps without cycles
    for parent in itertools.product(range(n + 1), repeat=n):
        acyclic = True
        for start in range(n):
            v, steps = start, 0
            while v != n and steps <= n:
                v = parent[v]
                steps += 1
            if v != n:
                acyclic = False
                break
        if not acyclic:
            continue
        has_child = [False] * n
        for v in parent:
            if v != n:
                has_child[v] = True
        yield tuple(i + 1 for i in range(n) if parent[i] == n and not has_child[i])


def _enum_unrooted_forests(n: int) -> Iterator[Tuple[int, ...]]:
    edges = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(edges)):
        root = list(range(n))

        def find(v):
            while root[v] != v:
                root[v] = root[root[v]]
                v = root[v]
            return v

        degree = [0] * n
        acyclic = True
        for e, (a, b) in enumerate(edges):
            if mask >> e & 1:
                ra, rb = find(a), find(b)
                if ra == rb:
                    acyclic = False
                    break
                root[ra] = rb
                degree[a] += 1
                degree[b] += 1
        if acyclic:
            yield tuple(i + 1 for i in range(n) if degree[i] == 0)


# --- registry ------------------------------------------------------------------

@dataclass(frozen=True)
class Family:
    id: str
    description: str
    # C with g(k, n) == C**k * D_{n-k} exactly, when such a C exists
    exact_C_decomposable: Optional[int]
    # the C the structure suggests (number of "kinds" of fixed point)
    nominal_C: int
    supports_sampling: bool
    supports_bruteforce_up_to: int
    g_depends_only_on_k: bool = True
    _G: Callable[[int], int] = field(repr=False, compare=False, default=None)
    _D: Callable[[int], int] = field(repr=False, compare=False, default=None)
    _g: Callable[[int, int], int] = field(repr=False, compare=False, default=None)
    _enumerate: Callable[[int], Iterator[Tuple[int, ...]]] = field(
        repr=False, compare=False, default=None)

    def metadata(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "g_depends_only_on_k": self.g_depends_only_on_k,
            "exact_C_decomposable": self.exact_C_decomposable,
            "nominal_C": self.nominal_C,
            "supports_sampling": self.supports_sampling,
            "supports_bruteforce_up_to": self.supports_bruteforce_up_to,
        }

    def enumerate_fixed_sets(self, n: int) -> Iterator[Tuple[int, ...]]:
        """Yield the fixed labels of every structure on [n], by brute force."""
        return self._enumerate(n)


def _build_registry() -> dict:
    perm_D = _Prefix(_derangements)
    inv_G = _exp(lambda m: 1 if m <= 2 else 0)
    set_G = _exp(lambda m: 1)
    set_D = _exp(_without_singletons(lambda m: 1))
    odd_G = _exp(_odd_cycle_weight)
    odd_D = _exp(_without_singletons(_odd_cycle_weight))
    rf_D = _exp(_without_singletons(lambda m: _tree_weight(m, True)))
    uf_G = _exp(lambda m: _tree_weight(m, False))
    uf_D = _exp(_without_singletons(lambda m: _tree_weight(m, False)))

    _all = _Prefix(lambda n_max: parity_split_counts(_cycle_weight, n_max)[1])
    _der_split = {}

    def der_parity(parity: int) -> _Prefix:
        # derangements split by parity of the cycle count
        if parity not in _der_split:
            _der_split[parity] = _Prefix(
                lambda n_max: parity_split_counts(_without_singletons(_cycle_weight), n_max)[parity])
        return _der_split[parity]

    def odd_count_g(k: int, n: int) -> int:
        # total cycle count k + c must be odd, so c has parity opposite to k
        return der_parity(1 - k % 2)[n - k]

    fams = [
        Family("permutations", "all permutations of [n]; fixed point = 1-cycle",
               1, 1, True, 8,
               _G=math.factorial, _D=perm_D.__getitem__,
               _g=lambda k, n: perm_D[n - k],
               _enumerate=_enum_permutations),
        Family("all_functions", "all maps [n] -> [n]; fixed point = x with f(x) = x",
               None, 1, True, 6,
               _G=lambda n: n**n, _D=lambda n: (n - 1) ** n,
               _g=lambda k, n: (n - 1) ** (n - k),
               _enumerate=_enum_functions),
        Family("partial_functions",
               "partial maps [n] -> [n]; fixed point = f(x) = x or f(x) undefined",
               None, 2, True, 5,
               _G=lambda n: (n + 1) ** n, _D=lambda n: (n - 1) ** n,
               _g=lambda k, n: 2**k * (n - 1) ** (n - k),
               _enumerate=_enum_partial_functions),
        Family("involutions", "permutations with cycles of length 1 and 2",
               1, 1, False, 8,
               _G=inv_G.__getitem__, _D=_involutions_without_fixed_points,
               _g=lambda k, n: _involutions_without_fixed_points(n - k),
               _enumerate=lambda n: _enum_permutations(n, _is_involution)),
        Family("set_partitions", "set partitions of [n]; fixed point = singleton block",
               1, 1, False, 9,
               _G=set_G.__getitem__, _D=set_D.__getitem__,
               _g=lambda k, n: set_D[n - k],
               _enumerate=_enum_set_partitions),
        Family("odd_cycle_permutations", "permutations whose cycle lengths are all odd",
               1, 1, False, 8,
               _G=odd_G.__getitem__, _D=odd_D.__getitem__,
               _g=lambda k, n: odd_D[n - k],
               _enumerate=lambda n: _enum_permutations(n, _all_cycles_odd)),
        Family("odd_cycle_count_permutations", "permutations with an odd number of cycles",
               None, 1, False, 8,
               _G=_all.__getitem__, _D=lambda n: der_parity(1)[n],
               _g=odd_count_g,
               _enumerate=lambda n: _enum_permutations(n, _odd_number_of_cycles)),
        Family("rooted_forests", "forests of rooted trees on [n]; fixed point = 1-vertex tree",
               1, 1, False, 5,
               _G=lambda n: (n + 1) ** (n - 1) if n else 1, _D=rf_D.__getitem__,
               _g=lambda k, n: rf_D[n - k],
               _enumerate=_enum_rooted_forests),
        Family("unrooted_forests", "forests of unrooted trees on [n]; fixed point = isolated vertex",
               1, 1, False, 5,
               _G=uf_G.__getitem__, _D=uf_D.__getitem__,
               _g=lambda k, n: uf_D[n - k],
               _enumerate=_enum_unrooted_forests),
    ]
    return {f.id: f for f in fams}


_REGISTRY = _build_registry()
FAMILY_IDS = tuple(_REGISTRY)

FamilyLike = Union[Family, str]


def list_families() -> List[Family]:
    return list(_REGISTRY.values())


def get_family(family: FamilyLike) -> Family:
    if isinstance(family, Family):
        return family
    try:
        return _REGISTRY[family]
    except KeyError:
        raise UnknownFamily(family) from None


def _check_n(n: int) -> None:
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")


def family_G(family: FamilyLike, n: int) -> int:
    """Number of structures on [n]."""
    fam = get_family(family)
    _check_n(n)
    return fam._G(n)


def family_D(family: FamilyLike, n: int) -> int:
    """Number of structures on [n] with no fixed point."""
    fam = get_family(family)
    _check_n(n)
    return fam._D(n)


def family_g(family: FamilyLike, k: int, n: int) -> int:
    """Number of structures on [n] whose fixed labels are exactly a given k-set."""
    fam = get_family(family)
    _check_n(n)
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    return fam._g(k, n)


def family_Gk(family: FamilyLike, k: int, n: int) -> int:
    """Number of structures on [n] with exactly k fixed points."""
    return binomial(n, k) * family_g(family, k, n)


def idealized_g(family: FamilyLike, k: int, n: int) -> int:
    """``nominal_C**k * D_{n-k}``, the count if the family decomposed exactly."""
    fam = get_family(family)
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    return fam.nominal_C**k * family_D(fam, n - k)
