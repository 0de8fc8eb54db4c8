"""Closed-form log Bayes factors for balanced ANOVA, the posterior
probability transform, and the model choice rule.

Every factor here compares an alternative mean structure against the
common-mean null model. Both the fully-Bayes and BIC variants depend on
the data only through a single sums-of-squares ratio in (0, 1], so the
one-way and two-way cases share one pair of kernels parameterized by the
total observation count and the alternative's mean-parameter count.
All arithmetic is in log space: the gamma factors overflow for level or
replication counts as small as 30.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegenerateDataError, DomainError
from .numerics import log_gamma
from .sums_of_squares import OneWaySS, TwoWaySS

INF = float("inf")


class Model(str, enum.Enum):
    """Identifiers for the null and the four alternative mean structures."""

    NULL = "1"
    FACTOR_A = "A+1"
    FACTOR_B = "B+1"
    ADDITIVE = "A+B+1"
    FULL = "(A+1)(B+1)"


class Criterion(str, enum.Enum):
    """Which Bayes factor drives a decision."""

    FB = "fb"
    BIC = "bic"


TWO_WAY_ALTERNATIVES = (Model.FACTOR_A, Model.FACTOR_B, Model.ADDITIVE, Model.FULL)


@dataclass(frozen=True)
class BayesFactorReport:
    """Both log Bayes factors for one alternative, plus the decisions."""

    log_bf_fb: float
    log_bf_bic: float
    posterior_prob_fb: float
    choice_fb: Model
    choice_bic: Model
    ss_ratio: float


def _check_design(p: int, r: int) -> None:
    if p < 2 or r < 2:
        raise DomainError(f"need at least 2 levels and 2 replications, got p={p}, r={r}")


def _log_bf_fb_kernel(n: int, s1: int, ratio: float) -> float:
    """log fully-Bayes factor for an alternative with s1 mean parameters.

    ratio is the residual share of the total sum of squares left by the
    alternative; ratio 0 (perfect fit under a nonzero total) gives +inf.
    """
    if ratio == 0.0:
        return INF
    constant = (
        log_gamma(s1 / 2.0)
        + log_gamma((n - s1) / 2.0)
        - log_gamma(0.5)
        - log_gamma((n - 1) / 2.0)
    )
    return constant - ((n - s1 - 1) / 2.0) * math.log(ratio)


def _log_bf_bic_kernel(n: int, s1: int, ratio: float) -> float:
    """log BIC-based Bayes factor for an alternative with s1 mean parameters."""
    if ratio == 0.0:
        return INF
    return -(n / 2.0) * math.log(ratio) - ((s1 - 1) / 2.0) * math.log(n)


def _one_way_ratio(ss: OneWaySS) -> float:
    total = ss.w_e + ss.w_h
    if total == 0.0:
        raise DegenerateDataError("total sum of squares is zero")
    return min(max(ss.w_e / total, 0.0), 1.0)


def _two_way_ratio(ss: TwoWaySS, m: Model) -> float:
    """Residual share of the total left by alternative m, from component sums.

    Building the numerator from the components (rather than 1 - explained/total)
    keeps the ratio inside [0, 1] without cancellation.
    """
    total = ss.w_a + ss.w_b + ss.w_ab + ss.w_e
    if total == 0.0:
        raise DegenerateDataError("total sum of squares is zero")
    if m is Model.FACTOR_A:
        numerator = ss.w_b + ss.w_ab + ss.w_e
    elif m is Model.FACTOR_B:
        numerator = ss.w_a + ss.w_ab + ss.w_e
    elif m is Model.ADDITIVE:
        numerator = ss.w_ab + ss.w_e
    elif m is Model.FULL:
        numerator = ss.w_e
    else:
        raise DomainError(f"{m!r} is not a two-way alternative model")
    return min(max(numerator / total, 0.0), 1.0)


def _two_way_mean_params(p: int, q: int, m: Model) -> int:
    if m is Model.FACTOR_A:
        return p
    if m is Model.FACTOR_B:
        return q
    if m is Model.ADDITIVE:
        return p + q - 1
    if m is Model.FULL:
        return p * q
    raise DomainError(f"{m!r} is not a two-way alternative model")


def log_bf_fb_one_way(ss: OneWaySS, p: int, r: int) -> float:
    """log fully-Bayes factor of the level-means model against the common mean."""
    _check_design(p, r)
    return _log_bf_fb_kernel(p * r, p, _one_way_ratio(ss))


def log_bf_bic_one_way(ss: OneWaySS, p: int, r: int) -> float:
    """log BIC-based Bayes factor of the level-means model against the common mean."""
    _check_design(p, r)
    return _log_bf_bic_kernel(p * r, p, _one_way_ratio(ss))


def log_bf_fb_two_way(ss: TwoWaySS, p: int, q: int, r: int, m: Model) -> float:
    """log fully-Bayes factor of two-way alternative m against the common mean."""
    _check_design(p, r)
    _check_design(q, r)
    return _log_bf_fb_kernel(p * q * r, _two_way_mean_params(p, q, m), _two_way_ratio(ss, m))


def log_bf_bic_two_way(ss: TwoWaySS, p: int, q: int, r: int, m: Model) -> float:
    """log BIC-based Bayes factor of two-way alternative m against the common mean."""
    _check_design(p, r)
    _check_design(q, r)
    return _log_bf_bic_kernel(p * q * r, _two_way_mean_params(p, q, m), _two_way_ratio(ss, m))


def posterior_prob(log_bf: float) -> float:
    """Posterior probability of the alternative under equal prior odds.

    Overflow-safe logistic of the log Bayes factor; exact 0 and 1 at the
    infinities.
    """
    if math.isnan(log_bf):
        raise DomainError("log Bayes factor is NaN")
    if log_bf == INF:
        return 1.0
    if log_bf == -INF:
        return 0.0
    if log_bf >= 0:
        return 1.0 / (1.0 + math.exp(-log_bf))
    b = math.exp(log_bf)
    return b / (1.0 + b)


def choose_model(log_bf: float, alternative: Model = Model.FACTOR_A) -> Model:
    """Select the alternative iff the Bayes factor exceeds 1; ties go to the null."""
    if math.isnan(log_bf):
        raise DomainError("log Bayes factor is NaN")
    return alternative if log_bf > 0 else Model.NULL


def one_way_report(ss: OneWaySS, p: int, r: int) -> BayesFactorReport:
    """Full decision report for a one-way layout."""
    log_fb = log_bf_fb_one_way(ss, p, r)
    log_bic = log_bf_bic_one_way(ss, p, r)
    return BayesFactorReport(
        log_bf_fb=log_fb,
        log_bf_bic=log_bic,
        posterior_prob_fb=posterior_prob(log_fb),
        choice_fb=choose_model(log_fb, Model.FACTOR_A),
        choice_bic=choose_model(log_bic, Model.FACTOR_A),
        ss_ratio=_one_way_ratio(ss),
    )


def two_way_report(ss: TwoWaySS, p: int, q: int, r: int, m: Model) -> BayesFactorReport:
    """Decision report for one two-way alternative against the common mean."""
    log_fb = log_bf_fb_two_way(ss, p, q, r, m)
    log_bic = log_bf_bic_two_way(ss, p, q, r, m)
    return BayesFactorReport(
        log_bf_fb=log_fb,
        log_bf_bic=log_bic,
        posterior_prob_fb=posterior_prob(log_fb),
        choice_fb=choose_model(log_fb, m),
        choice_bic=choose_model(log_bic, m),
        ss_ratio=_two_way_ratio(ss, m),
    )


def rank_two_way_models(
    ss: TwoWaySS, p: int, q: int, r: int, criterion: Criterion = Criterion.FB
) -> list[tuple[Model, float]]:
    """Rank all five models by log Bayes factor against the common mean.

    The null sits at 0 by definition; under equal prior probabilities the
    ranking is the posterior ordering. Ties break toward fewer mean
    parameters. This extends the pairwise comparisons to a single
    selection.
    """
    kernel = log_bf_fb_two_way if criterion is Criterion.FB else log_bf_bic_two_way
    scored = [(Model.NULL, 0.0)]
    for m in TWO_WAY_ALTERNATIVES:
        scored.append((m, kernel(ss, p, q, r, m)))
    params = {
        Model.NULL: 1,
        Model.FACTOR_A: p,
        Model.FACTOR_B: q,
        Model.ADDITIVE: p + q - 1,
        Model.FULL: p * q,
    }
    scored.sort(key=lambda item: (-item[1], params[item[0]]))
    return scored
