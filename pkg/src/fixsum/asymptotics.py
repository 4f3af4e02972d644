"""Measured asymptotic quantities: Poisson-family parameter estimates and
the deviation of scaled profiles from the limiting kernel.

The kernel functions themselves live in :mod:`fixsum.kernel` and are
re-exported here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Union

from scipy.optimize import minimize_scalar

from .errors import DomainError
from .families import FamilyLike, family_D, family_G, family_Gk, family_g, get_family
from .kernel import KernelParams, c_k, c_k_exact, ck_ode_residual, kernel_K, predicted_scaled
from .profile import alpha_window, exact_profile, scaled_profile

__all__ = [
    "KernelParams", "PmfRow", "PoissonDiagnostics", "best_fit_mu", "c_k", "c_k_exact",
    "ck_ode_residual", "estimate_parameters", "fixed_point_distribution", "gap_deviation",
    "kernel_K", "measured_mu", "predicted_scaled",
]


def _ratio(num: Union[int, Fraction], den: Union[int, Fraction]) -> float:
    if den == 0:
        return math.inf if num > 0 else math.nan
    return float(Fraction(num) / Fraction(den))


@dataclass(frozen=True)
class PmfRow:
    k: int
    observed: float
    poisson: float


@dataclass
class PoissonDiagnostics:
    family_id: str
    n: int
    rho_hat: float
    C_hat: float
    lambda_hat: float
    mu_hat: float
    pmf_rows: List[PmfRow] = field(default_factory=list)

    def max_pmf_error(self) -> float:
        return max(abs(row.observed - row.poisson) for row in self.pmf_rows)


def fixed_point_distribution(family: FamilyLike, n: int) -> List[Fraction]:
    """Exact law of the number of fixed points: ``[G_{n,k} / G_n for k = 0..n]``."""
    G = family_G(family, n)
    return [Fraction(family_Gk(family, k, n), G) for k in range(n + 1)]


def measured_mu(family: FamilyLike, n: int) -> float:
    """n g(2, n) / g(1, n), the factor that scales the two-fixed-point term."""
    if n < 2:
        raise DomainError("need n >= 2")
    return _ratio(n * family_g(family, 2, n), family_g(family, 1, n))


def estimate_parameters(family: FamilyLike, n: int, k_max: int = 6) -> PoissonDiagnostics:
    """Finite-n estimates of rho, C, lambda and mu, with a pmf comparison table.

    ``lambda_hat`` is the exact mean number of fixed points; the Poisson
    column uses it as the rate.
    """
    fam = get_family(family)
    if n < 3:
        raise DomainError("need n >= 3")
    G = family_G(fam, n)
    pmf = fixed_point_distribution(fam, n)
    lam = sum(k * p for k, p in enumerate(pmf))
    lambda_hat = float(lam)
    rows = []
    for k in range(min(k_max, n) + 1):
        poisson = math.exp(-lambda_hat + k * math.log(lambda_hat) - math.lgamma(k + 1)) \
            if lambda_hat > 0 else float(k == 0)
        rows.append(PmfRow(k, float(pmf[k]), poisson))
    return PoissonDiagnostics(
        family_id=fam.id,
        n=n,
        rho_hat=_ratio(n * family_G(fam, n - 1), G),
        C_hat=_ratio(family_g(fam, 1, n), family_D(fam, n - 1)),
        lambda_hat=lambda_hat,
        mu_hat=measured_mu(fam, n),
        pmf_rows=rows,
    )


def gap_deviation(family: FamilyLike, n: int, mu: float, alpha_min: float,
                  alpha_max: float) -> float:
    """Largest |f(n, r)/g(1, n) - predicted| over integer r in the alpha window."""
    return scaled_profile(family, n, alpha_min, alpha_max, mu).deviation()


def best_fit_mu(family: FamilyLike, n: int, alpha_min: float, alpha_max: float,
                mu_bounds=(1e-3, 10.0)) -> float:
    """The kernel parameter minimizing the gap deviation at this n."""
    fam = get_family(family)
    window = alpha_window(n, alpha_min, alpha_max)
    if not len(window):
        raise DomainError("empty alpha window")
    prof = exact_profile(fam, n, r_max=window[-1])
    g1 = family_g(fam, 1, n)
    scaled = [(r / n, float(Fraction(prof[r], g1))) for r in window]

    def worst(mu: float) -> float:
        params = KernelParams(mu)
        return max(abs(s - predicted_scaled(params, a)) for a, s in scaled)

    res = minimize_scalar(worst, bounds=mu_bounds, method="bounded", options={"xatol": 1e-6})
    return float(res.x)
