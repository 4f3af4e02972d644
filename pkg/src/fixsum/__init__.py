"""Exact and asymptotic enumeration of fixed-point label sums.

For a family of labeled structures, ``f(n, r)`` counts the structures on
``{1..n}`` whose fixed points carry labels summing to ``r``.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    Degenerate, DecompositionViolation, DomainError, FixsumError, TooLarge, UnknownFamily,
    UnsupportedFamily,
)
from .families import (  # noqa: E402
    FAMILY_IDS, Family, family_D, family_g, family_G, family_Gk, get_family, list_families,
)
from .profile import exact_profile, brute_force_profile, jump_ratio, scaled_profile  # noqa: E402
from .kernel import KernelParams, c_k, kernel_K, predicted_scaled  # noqa: E402
