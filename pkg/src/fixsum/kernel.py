"""Cutoff functions c_k and the limiting kernel K_mu.

For k >= 2, ``c_k(alpha)`` is the sum over 0 <= j < alpha of
``binomial(k, j) (-1)^j (1 - j/alpha)^(k-1)``. Multiplying by
``alpha^(k-1) / (k-1)!`` gives the Irwin-Hall density of a sum of k
uniforms, which is symmetric about k/2. For alpha > k/2 we evaluate the
mirrored sum instead: its terms are small where the direct sum cancels
catastrophically, so values near alpha = k stay accurate and nonnegative.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError

Real = Union[float, Fraction]


@dataclass(frozen=True)
class KernelParams:
    mu: float
    tolerance: float = 1e-12

    def __post_init__(self):
        if not (0 < self.mu < math.inf):
            raise DomainError(f"mu must be positive and finite, got {self.mu}")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")


def _alternating_sum(k: int, x: Real) -> Real:
    # sum_{0 <= j < x} binomial(k, j) (-1)^j (x - j)^(k-1)
    total = 0
    j = 0
    while j < x and j <= k:
        term = math.comb(k, j) * (x - j) ** (k - 1)
        total = total - term if j % 2 else total + term
        j += 1
    return total


def c_k(k: int, alpha: float) -> float:
    """Cutoff function c_k(alpha); c_1 is the indicator of (0, 1]."""
    if k < 1:
        raise DomainError("k must be at least 1")
    if k == 1:
        return 1.0 if 0 < alpha <= 1 else 0.0
    if alpha <= 0 or alpha >= k:
        return 0.0
    if alpha <= 1:
        return 1.0
    if 2 * alpha <= k:
        s = _alternating_sum(k, alpha)
    else:
        s = _alternating_sum(k, k - alpha)
    return max(s / alpha ** (k - 1), 0.0)


def c_k_exact(k: int, alpha: Real) -> Fraction:
    """c_k evaluated in exact rational arithmetic (alpha converted exactly)."""
    if k < 1:
        raise DomainError("k must be at least 1")
    a = Fraction(alpha)
    if k == 1:
        return Fraction(1 if 0 < a <= 1 else 0)
    if a <= 0 or a >= k:
        return Fraction(0)
    return Fraction(_alternating_sum(k, a)) / a ** (k - 1)


def _term_scale(k: int, x: float) -> float:
    # x^(k-1) / (k! (k-1)!)
    return math.exp((k - 1) * math.log(x) - math.lgamma(k + 1) - math.lgamma(k))


def kernel_K(params: Union[KernelParams, float], alpha: float) -> float:
    """K_mu(alpha) = sum_{k>=2} c_k(alpha) (alpha mu)^(k-1) / (k! (k-1)!).

    Summation stops once the tail, bounded with c_k <= 1, drops below
    ``params.tolerance``.
    """
    if not isinstance(params, KernelParams):
        params = KernelParams(float(params))
    if alpha <= 0:
        return 0.0
    x = alpha * params.mu
    total = 0.0
    k = 2
    while True:
        t = _term_scale(k, x)
        total += c_k(k, alpha) * t
        # ratio of consecutive bound terms from k+1 on is at most q
        q = x / ((k + 2) * (k + 1))
        nxt = t * x / ((k + 1) * k)
        if q < 0.5 and nxt / (1 - q) < params.tolerance:
            return total
        k += 1


def predicted_scaled(params: Union[KernelParams, float], alpha: float) -> float:
    """Limit of f(n, r) / g(1, n) at r = alpha n: the unit step on (0, 1] plus K_mu."""
    step = 1.0 if 0 < alpha <= 1 else 0.0
    return step + kernel_K(params, alpha)


def ck_ode_residual(k: int, alpha: float, h: float) -> float:
    """Residual of the delay equation for c_{k+1} at alpha.

    Compares a central difference of c_{k+1} with
    ``-(k(k+1)/alpha^2) (1 - 1/alpha)^(k-1) c_k(alpha - 1)``.
    """
    if k < 1:
        raise DomainError("k must be at least 1")
    if not alpha > 1:
        raise DomainError("alpha must exceed 1")
    if h <= 0 or abs(alpha - round(alpha)) <= h:
        raise DomainError(f"alpha={alpha} within h={h} of an integer")
    derivative = (c_k(k + 1, alpha + h) - c_k(k + 1, alpha - h)) / (2 * h)
    rhs = -(k * (k + 1) / alpha**2) * (1 - 1 / alpha) ** (k - 1) * c_k(k, alpha - 1)
    return abs(derivative - rhs)
