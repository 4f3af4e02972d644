"""Counting k-subsets of [n] by element sum, plus the composition and
partition counters that appear alongside them.

All counters return 0 (rather than raising) for out-of-range arguments.
"""
from __future__ import annotations

import math
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from .combinatorics import binomial
from .errors import DomainError

_INT64_SAFE = 2**62


def default_k_max(r_max: int, n_max: int) -> int:
    """Largest k with k(k+1)/2 <= r_max (no bigger subset can fit), capped at n_max."""
    k = 0
    while (k + 1) * (k + 2) // 2 <= r_max and k + 1 <= n_max:
        k += 1
    return k


def _dtype_for(n_max: int, k_max: int):
    # every entry of layer n is bounded by binomial(n, k)
    peak = max(binomial(n_max, k) for k in range(k_max + 1))
    return np.int64 if peak < _INT64_SAFE else object


def iter_layers(n_max: int, r_max: int, k_max: int) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield ``(n, layer)`` for n = 0..n_max where ``layer[k, r] = E(r, k, n)``.

    The same array is updated in place between yields; copy it to keep it.
    """
    dtype = _dtype_for(n_max, k_max)
    layer = np.zeros((k_max + 1, r_max + 1), dtype=dtype)
    layer[0, 0] = 1
    yield 0, layer
    for x in range(1, n_max + 1):
        if x <= r_max and k_max >= 1:
            # RHS is evaluated from the old layer before assignment: 0/1 knapsack
            layer[1:, x:] = layer[1:, x:] + layer[:-1, : r_max + 1 - x]
        yield x, layer


class SubsetSumTable:
    """Table of E(r, k, n), the number of k-subsets of [n] summing to r.

    Built by adding the elements 1, 2, ..., n_max one at a time. Only the
    final layer is kept unless ``keep_layers`` is set.
    """

    def __init__(self, n_max: int, r_max: Optional[int] = None, k_max: Optional[int] = None,
                 keep_layers: bool = False):
        if n_max < 0:
            raise DomainError("n_max must be nonnegative")
        if r_max is None:
            r_max = n_max * (n_max + 1) // 2
        if k_max is None:
            k_max = default_k_max(r_max, n_max)
        self.n_max = n_max
        self.r_max = r_max
        self.k_max = min(k_max, n_max)
        self._layers: Dict[int, np.ndarray] = {}
        layer = None
        for n, layer in iter_layers(n_max, r_max, self.k_max):
            if keep_layers:
                self._layers[n] = layer.copy()
        self._layers[n_max] = layer

    @property
    def table(self) -> np.ndarray:
        """The final layer, indexed ``[k, r]``."""
        return self._layers[self.n_max]

    def layer(self, n: Optional[int] = None) -> np.ndarray:
        n = self.n_max if n is None else n
        try:
            return self._layers[n]
        except KeyError:
            raise DomainError(f"layer n={n} not stored") from None

    def count(self, r: int, k: int, n: Optional[int] = None) -> int:
        n = self.n_max if n is None else n
        if _out_of_support(r, k, n):
            return 0
        if r > self.r_max or k > self.k_max or n > self.n_max:
            raise DomainError(f"(r={r}, k={k}, n={n}) outside the table")
        return int(self.layer(n)[k, r])


def _out_of_support(r: int, k: int, n: int) -> bool:
    return k < 0 or k > n or r < k * (k + 1) // 2 or r > k * n - k * (k - 1) // 2


def count_subsets(r: int, k: int, n: int) -> int:
    """E(r, k, n): number of k-subsets of {1..n} with element sum r."""
    if n < 0 or _out_of_support(r, k, n):
        return 0
    if k == 0:
        return 1  # r == 0 here
    # labels above r cannot occur in the subset
    table = SubsetSumTable(min(n, r), r_max=r, k_max=k)
    return int(table.table[k, r])


def count_compositions_unrestricted(r: int, k: int) -> int:
    """Compositions of r into exactly k positive parts: binomial(r-1, k-1).

    The empty composition of 0 counts once.
    """
    if k == 0:
        return 1 if r == 0 else 0
    if k < 0 or r < k:
        return 0
    return binomial(r - 1, k - 1)


def _partitions_min_part_row(r: int, k: int, low: int) -> list:
    # t[j][s]: partitions of s into exactly j parts, each >= low.
    # Either every part exceeds low (drop one from each part) or one part equals low.
    t = [[0] * (r + 1) for _ in range(k + 1)]
    t[0][0] = 1
    for j in range(1, k + 1):
        cur, prev = t[j], t[j - 1]
        for s in range(r + 1):
            v = cur[s - j] if s >= j else 0
            if s >= low:
                v += prev[s - low]
            cur[s] = v
    return t[k]


def count_partitions(r: int, k: int) -> int:
    """Partitions of r into exactly k positive parts (p(r,k) = p(r-k,k) + p(r-1,k-1))."""
    if k < 0 or r < 0 or r < k:
        return 0
    if k == 0:
        return 1 if r == 0 else 0
    p = [[0] * (r + 1) for _ in range(k + 1)]
    p[0][0] = 1
    for j in range(1, k + 1):
        for s in range(j, r + 1):
            p[j][s] = p[j][s - j] + p[j - 1][s - 1]
    return p[k][r]


def count_partitions_min_part(r: int, k: int, n: int) -> int:
    """Partitions of r into exactly k parts, every part greater than n."""
    if k < 0 or r < 0:
        return 0
    if k == 0:
        return 1 if r == 0 else 0
    low = max(n, 0) + 1
    if r < k * low:
        return 0
    return _partitions_min_part_row(r, k, low)[r]


def count_compositions_distinct(r: int, k: int, n: Optional[int] = None) -> int:
    """Compositions of r into k distinct parts, each at most n (unbounded if None)."""
    if k < 0 or r < 0:
        return 0
    bound = r if n is None else n
    return math.factorial(k) * count_subsets(r, k, bound)
