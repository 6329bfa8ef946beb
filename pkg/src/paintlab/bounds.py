"""Closed-form theoretical quantities the experiments compare against.

All logarithms are natural; quantities stay real-valued and callers round
explicitly.  ``np <= 1`` is a domain error everywhere a formula divides by
``log(np)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import ParameterError


def phi(x: float) -> float:
    """Chernoff exponent (1+x)log(1+x) - x, for x >= 0."""
    if x < 0:
        raise ParameterError("phi is defined for x >= 0")
    return (1.0 + x) * math.log1p(x) - x


def chi_asymptotic(n: float, p: float) -> float:
    """First-order chromatic number of G(n,p): n*log(1/(1-p)) / (2*log(np))."""
    _check_regime(n, p)
    return n * math.log(1.0 / (1.0 - p)) / (2.0 * math.log(n * p))


def chain_bounds(chi: int, n: int) -> tuple[int, float]:
    """(lower, upper) bracket for the paintability of a graph with the given
    chromatic number: chi <= chi_P <= chi*log(n) + 1."""
    if chi < 1 or n < 1:
        raise ParameterError("chain_bounds needs chi >= 1 and n >= 1")
    return chi, chi * math.log(n) + 1.0


def constant_factor(C: float) -> float:
    """Multiplicative gap between paintability and chromatic number when
    the average degree is polylog of exponent C: 2 as C -> infinity,
    2C/(C-2) for C >= 4, and 4 for 2 < C < 4."""
    if C != C:  # NaN
        raise ParameterError("C must be a real number > 2 or infinity")
    if math.isinf(C):
        return 2.0
    if C <= 2:
        raise ParameterError("constant_factor is defined for C > 2")
    if C >= 4:
        return 2.0 * C / (C - 2.0)
    return 4.0


@dataclass(frozen=True)
class RegimeBounds:
    """Derived constants of one (n, p, omega) regime."""

    n: float
    p: float
    omega: float
    b: float                        # 1/(1-p)
    chi_async: float                # asymptotic chromatic number
    k0_async: float                 # 2*log_b(np)
    eraser_budget_prediction: float  # n / (2*log_b(np))
    constant_factor: Optional[float]  # polylog-regime gap factor, if C > 2
    s0: float                       # 10*log(n)/p
    large_threshold: float          # n/(omega*log^2 n)
    small_threshold: float          # n*p/(omega*log^2 n)


def regime_bounds(n: float, p: float, omega: float) -> RegimeBounds:
    _check_regime(n, p)
    if omega <= 0:
        raise ParameterError("omega must be > 0")
    b = 1.0 / (1.0 - p)
    log_b_np = math.log(n * p) / math.log(b)
    ln2n = math.log(n) ** 2
    large = n / (omega * ln2n)
    # effective polylog exponent of the average degree: np = (log n)^C
    C = math.log(n * p) / math.log(math.log(n)) if math.log(n) > 1 else None
    factor = constant_factor(C) if C is not None and C > 2 else None
    return RegimeBounds(
        n=n,
        p=p,
        omega=omega,
        b=b,
        chi_async=chi_asymptotic(n, p),
        k0_async=2.0 * log_b_np,
        eraser_budget_prediction=n / (2.0 * log_b_np),
        constant_factor=factor,
        s0=10.0 * math.log(n) / p,
        large_threshold=large,
        small_threshold=p * large,
    )


def _check_regime(n: float, p: float) -> None:
    if not 0.0 < p < 1.0:
        raise ParameterError("p must lie strictly between 0 and 1")
    if n * p <= 1.0:
        raise ParameterError("regime formulas require np > 1")
