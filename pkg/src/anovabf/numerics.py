"""Special-function numerics: log-gamma, log-beta, unit-interval quadrature,
and the Stirling approximation to the gamma ratios that drive the
large-sample behavior of the Bayes factors."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .errors import ConvergenceError, DomainError


class Regime(enum.Enum):
    """Which design dimension grows without bound.

    MANY_REPLICATIONS: replications per level grow, level count fixed.
    MANY_LEVELS: level count grows, replications per level fixed.
    """

    MANY_REPLICATIONS = "many-replications"
    MANY_LEVELS = "many-levels"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and subdivision budget for adaptive quadrature."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def log_beta(a: float, b: float) -> float:
    """ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b) for a, b > 0."""
    if not (a > 0 and b > 0):
        raise DomainError(f"log_beta requires positive arguments, got ({a}, {b})")
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


def integrate_unit_interval(
    f: Callable[[float], float], spec: QuadratureSpec = QuadratureSpec()
) -> float:
    """Integrate f over (0, 1) by adaptive subdivision.

    Endpoint singularities of type t**c with c > -1 are handled; nodes
    are interior, so f is never evaluated at 0 or 1 exactly. Failure to
    converge within the subdivision budget raises
    :class:`ConvergenceError` carrying the best estimate.
    """
    result = integrate.quad(
        f,
        0.0,
        1.0,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    if len(result) > 3:
        estimate = float(result[0])
        message = str(result[3])
        raise ConvergenceError(f"quadrature did not converge: {message}", estimate=estimate)
    return float(result[0])


def log_gamma_ratio_asymptotic(p: int, r: int, regime: Regime) -> float:
    """Stirling approximation to the log-gamma ratio in the Bayes factor.

    MANY_REPLICATIONS approximates ln[Gamma((pr-p)/2) / Gamma((pr-1)/2)]
    by -((p-1)/2) ln(pr/2). MANY_LEVELS approximates the full constant
    ln[Gamma(p/2) Gamma((pr-p)/2) / Gamma((pr-1)/2)] by
    ln[sqrt(2 pi) r (r-1)^{-1/2}] + (p(r-1)/2) ln[(r-1) / r^{r/(r-1)}].
    """
    if p < 2 or r < 2:
        raise DomainError(f"need p >= 2 and r >= 2, got p={p}, r={r}")
    if regime is Regime.MANY_REPLICATIONS:
        return -((p - 1) / 2.0) * math.log(p * r / 2.0)
    return (
        0.5 * math.log(2.0 * math.pi)
        + math.log(r)
        - 0.5 * math.log(r - 1)
        + (p * (r - 1) / 2.0) * (math.log(r - 1) - (r / (r - 1)) * math.log(r))
    )
