"""Exact fixed-point-sum profiles f(n, r).

f(n, r) counts the structures on [n] whose fixed labels sum to r. Summing
over the possible fixed sets by size,

    f(n, 0) = D_n,    f(n, r) = sum_{k>=1} E(r, k, n) g(k, n)   (r >= 1),

where E(r, k, n) is the number of k-subsets of [n] with sum r.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from .errors import Degenerate, DomainError, TooLarge
from .families import FamilyLike, family_D, family_g, get_family
from .kernel import KernelParams, predicted_scaled
from .subset_sum import SubsetSumTable


@dataclass
class Profile:
    family_id: str
    n: int
    r_max: int
    values: Dict[int, int] = field(default_factory=dict)

    def __getitem__(self, r: int) -> int:
        return self.values.get(r, 0)

    def dense(self) -> List[int]:
        return [self[r] for r in range(self.r_max + 1)]

    def total(self) -> int:
        return sum(self.values.values())

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return (self.family_id, self.n) == (other.family_id, other.n) and \
            {r: v for r, v in self.values.items() if v} == {r: v for r, v in other.values.items() if v}


@dataclass(frozen=True)
class ScaledRow:
    r: int
    alpha: float
    scaled: float
    predicted: float


@dataclass
class ScaledProfile:
    family_id: str
    n: int
    mu: float
    rows: List[ScaledRow]

    def deviation(self) -> float:
        return max((abs(row.scaled - row.predicted) for row in self.rows), default=0.0)


def max_label_sum(n: int) -> int:
    return n * (n + 1) // 2


def exact_profile(family: FamilyLike, n: int, r_max: Optional[int] = None) -> Profile:
    """f(n, r) for 0 <= r <= r_max (default: the largest possible sum)."""
    fam = get_family(family)
    if n < 0:
        raise DomainError("n must be nonnegative")
    if r_max is None:
        r_max = max_label_sum(n)
    if r_max < 0:
        raise DomainError("r_max must be nonnegative")
    cap = min(r_max, max_label_sum(n))
    values = {0: family_D(fam, n)}
    if n >= 1 and cap >= 1:
        table = SubsetSumTable(n, r_max=cap)
        weights = np.array([0] + [family_g(fam, k, n) for k in range(1, table.k_max + 1)],
                           dtype=object)
        f = weights @ table.table.astype(object)
        for r in range(1, cap + 1):
            v = int(f[r])
            if v:
                values[r] = v
    return Profile(fam.id, n, r_max, values)


def brute_force_profile(family: FamilyLike, n: int) -> Profile:
    """f(n, r) by enumerating every structure on [n]."""
    fam = get_family(family)
    if n > fam.supports_bruteforce_up_to:
        raise TooLarge(f"{fam.id}: brute force limited to n <= {fam.supports_bruteforce_up_to}")
    if n < 0:
        raise DomainError("n must be nonnegative")
    counts = Counter(sum(fixed) for fixed in fam.enumerate_fixed_sets(n))
    values = {0: counts.pop(0, 0)}
    values.update(counts)
    return Profile(fam.id, n, max_label_sum(n), dict(sorted(values.items())))


def alpha_window(n: int, alpha_min: float, alpha_max: float) -> range:
    """Integer r with alpha_min <= r/n <= alpha_max, clipped to the possible sums."""
    lo = max(1, math.ceil(alpha_min * n - 1e-9))
    hi = min(max_label_sum(n), math.floor(alpha_max * n + 1e-9))
    return range(lo, hi + 1)


def scaled_profile(family: FamilyLike, n: int, alpha_min: float, alpha_max: float,
                   mu: float) -> ScaledProfile:
    """Compare f(n, r) / g(1, n) with its predicted limit over an alpha window."""
    fam = get_family(family)
    if not 0 < alpha_min < alpha_max:
        raise DomainError("need 0 < alpha_min < alpha_max")
    if n < 2:
        raise DomainError("need n >= 2")
    params = KernelParams(mu)
    window = alpha_window(n, alpha_min, alpha_max)
    g1 = family_g(fam, 1, n)
    if g1 == 0:
        raise Degenerate(f"{fam.id}: g(1, {n}) = 0")
    rows = []
    if len(window):
        prof = exact_profile(fam, n, r_max=window[-1])
        for r in window:
            alpha = r / n
            rows.append(ScaledRow(r, alpha, float(Fraction(prof[r], g1)),
                                  predicted_scaled(params, alpha)))
    return ScaledProfile(fam.id, n, mu, rows)


def jump_fraction(family: FamilyLike, n: int) -> Fraction:
    """f(n, n) / f(n, n+1) as an exact fraction."""
    if n < 2:
        raise DomainError("need n >= 2")
    prof = exact_profile(family, n, r_max=n + 1)
    if prof[n + 1] == 0:
        raise Degenerate(f"f({n}, {n + 1}) = 0")
    return Fraction(prof[n], prof[n + 1])


def jump_ratio(family: FamilyLike, n: int) -> float:
    """The drop f(n, n) / f(n, n+1) across r = n."""
    return float(jump_fraction(family, n))
