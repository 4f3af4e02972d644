"""Seeded Monte-Carlo sampling of the fixed-point label sum X_n.

Randomness comes from numpy's PCG64. Trials are grouped into blocks of
``BLOCK_SIZE``; block b draws from ``PCG64(SeedSequence(seed, spawn_key=(b,)))``.
Because the stream of a trial depends only on the seed and its index, the
blocks can be generated in any order, or concurrently, with identical results.
"""
from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from .errors import DomainError, UnsupportedFamily
from .families import FamilyLike, get_family

BLOCK_SIZE = 8192
SAMPLING_FAMILIES = ("permutations", "all_functions", "partial_functions")


def worker_count() -> int:
    """Thread cap from FIXSUM_THREADS; 0 or unset means one per CPU."""
    raw = os.environ.get("FIXSUM_THREADS", "").strip()
    try:
        requested = int(raw) if raw else 0
    except ValueError:
        requested = 0
    if requested <= 0:
        return os.cpu_count() or 1
    return requested


@dataclass(frozen=True)
class SampleConfig:
    family_id: str
    n: int
    trials: int
    seed: int
    condition_on_fixed_points: bool = False

    def __post_init__(self):
        fam = get_family(self.family_id)
        if not fam.supports_sampling:
            raise UnsupportedFamily(f"{fam.id} has no uniform sampler")
        if self.trials < 1:
            raise DomainError("trials must be positive")
        if self.n < 0:
            raise DomainError("n must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


@dataclass
class EmpiricalHistogram:
    counts: Dict[int, int]
    trials: int
    seed: int
    rejections: int = 0
    stderr: Dict[int, float] = field(default_factory=dict)

    @property
    def accepted(self) -> int:
        return self.trials - self.rejections

    def probability(self, r: int) -> float:
        return self.counts.get(r, 0) / self.accepted if self.accepted else math.nan


def _check_family(family: FamilyLike) -> str:
    fam = get_family(family)
    if fam.id not in SAMPLING_FAMILIES:
        raise UnsupportedFamily(f"{fam.id} has no uniform sampler")
    return fam.id


def _sample_block(family_id: str, n: int, rng: np.random.Generator, size: int) -> np.ndarray:
    points = np.arange(n)
    if family_id == "permutations":
        images = rng.permuted(np.tile(points, (size, 1)), axis=1)
        fixed = images == points
    elif family_id == "all_functions":
        images = rng.integers(0, n, size=(size, n)) if n else np.zeros((size, 0), dtype=np.int64)
        fixed = images == points
    else:
        # value n stands for "undefined", which also makes the point fixed
        images = rng.integers(0, n + 1, size=(size, n))
        fixed = (images == points) | (images == n)
    return (fixed * (points + 1)).sum(axis=1)


def sample_fixed_point_sum(family: FamilyLike, n: int, rng: np.random.Generator) -> int:
    """X for one uniformly random structure on [n]."""
    return int(_sample_block(_check_family(family), n, rng, 1)[0])


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def empirical_distribution(config: SampleConfig) -> EmpiricalHistogram:
    """Histogram of X over ``config.trials`` independent draws.

    With ``condition_on_fixed_points`` the draws without any fixed point
    (X = 0) are discarded and counted in ``rejections``.
    """
    family_id = _check_family(config.family_id)
    n_blocks = -(-config.trials // BLOCK_SIZE)

    def run(block: int) -> Counter:
        size = min(BLOCK_SIZE, config.trials - block * BLOCK_SIZE)
        xs = _sample_block(family_id, config.n, block_rng(config.seed, block), size)
        values, counts = np.unique(xs, return_counts=True)
        return Counter(dict(zip(values.tolist(), counts.tolist())))

    total: Counter = Counter()
    workers = min(worker_count(), n_blocks)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(run, range(n_blocks)):
                total.update(part)
    else:
        for block in range(n_blocks):
            total.update(run(block))

    rejections = 0
    if config.condition_on_fixed_points:
        rejections = total.pop(0, 0)
    accepted = config.trials - rejections
    counts = dict(sorted(total.items()))
    stderr = {r: math.sqrt(c / accepted * (1 - c / accepted) / accepted) for r, c in counts.items()}
    return EmpiricalHistogram(counts, config.trials, config.seed, rejections, stderr)
