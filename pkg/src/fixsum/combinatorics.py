"""Exact integer primitives: binomials, the exponential formula, parity
splitting and binomial inversion.

Everything here works on Python ints, so no result ever overflows.
"""
from __future__ import annotations

import math
import threading
from typing import Callable, List, Sequence, Tuple, Union

from .errors import DecompositionViolation

Weights = Union[Sequence[int], Callable[[int], int]]

# Rows of Pascal's triangle beyond this are not cached; math.comb is used.
PASCAL_LIMIT = 512

_pascal: List[Tuple[int, ...]] = [(1,)]
_pascal_lock = threading.Lock()


def _grow_pascal(n: int) -> None:
    with _pascal_lock:
        while len(_pascal) <= n:
            prev = _pascal[-1]
            row = (1,) + tuple(prev[i] + prev[i + 1] for i in range(len(prev) - 1)) + (1,)
            _pascal.append(row)


def binomial(n: int, k: int) -> int:
    """n choose k, and 0 whenever k < 0, k > n or n < 0."""
    if n < 0 or k < 0 or k > n:
        return 0
    if n > PASCAL_LIMIT:
        return math.comb(n, k)
    if n >= len(_pascal):
        _grow_pascal(n)
    return _pascal[n][k]


def falling(n: int, k: int) -> int:
    """Falling factorial n (n-1) ... (n-k+1)."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def weight_list(weights: Weights, n_max: int) -> List[int]:
    """Materialize component weights as ``[0, c_1, ..., c_{n_max}]``."""
    if callable(weights):
        return [0] + [int(weights(m)) for m in range(1, n_max + 1)]
    if len(weights) <= n_max:
        raise ValueError(f"weights defined only up to {len(weights) - 1}, need {n_max}")
    return [0] + [int(weights[m]) for m in range(1, n_max + 1)]


def exp_formula_counts(weights: Weights, n_max: int) -> List[int]:
    """Counts ``G_0..G_{n_max}`` of sets of components drawn from ``weights``.

    ``weights[m]`` (or ``weights(m)``) is the number of connected components
    on m labeled points. Uses the recurrence obtained by singling out the
    component that contains the largest label:

        G_n = sum_{m=1..n} binomial(n-1, m-1) c_m G_{n-m},   G_0 = 1.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    c = weight_list(weights, n_max)
    G = [1]
    for n in range(1, n_max + 1):
        total = 0
        for m in range(1, n + 1):
            if c[m]:
                total += binomial(n - 1, m - 1) * c[m] * G[n - m]
        G.append(total)
    return G


def parity_split_counts(weights: Weights, n_max: int) -> Tuple[List[int], List[int]]:
    """Split ``exp_formula_counts`` by the parity of the number of components.

    Running the recurrence with negated weights gives the signed total
    ``sum (-1)^{#components}``; half the sum and half the difference with the
    plain total are the even and odd parts.
    """
    c = weight_list(weights, n_max)
    plus = exp_formula_counts(c, n_max)
    minus = exp_formula_counts([-x for x in c], n_max)
    even = [(p + q) // 2 for p, q in zip(plus, minus)]
    odd = [(p - q) // 2 for p, q in zip(plus, minus)]
    return even, odd


def binomial_transform(D: Sequence[int], C: int, n_max: int) -> List[int]:
    """Forward transform ``G_n = sum_k binomial(n,k) C^k D_{n-k}``."""
    return [sum(binomial(n, k) * C**k * D[n - k] for k in range(n + 1)) for n in range(n_max + 1)]


def binomial_inversion(G: Sequence[int], C: int, n_max: int) -> List[int]:
    """Recover the fixed-point-free counts from the totals.

    Inverts ``G_n = sum_k binomial(n,k) C^k D_{n-k}``, i.e. multiplies the
    exponential generating function by ``exp(-C x)``. Raises
    :class:`DecompositionViolation` if some ``D_n`` comes out negative.
    """
    D = []
    for n in range(n_max + 1):
        d = sum((-1) ** k * binomial(n, k) * C**k * G[n - k] for k in range(n + 1))
        if d < 0:
            raise DecompositionViolation(f"D_{n} = {d} < 0: sequence is not {C}-decomposable")
        D.append(d)
    return D
