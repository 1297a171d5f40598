"""Weighted descriptives, two-tailed t-tests and TOST equivalence tests on summary statistics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Tuple

import numpy as np
from scipy import special
from scipy import stats as scipy_stats

from foonkit.errors import (
    DegenerateVariance,
    EmptySample,
    FoonkitError,
    InsufficientData,
    InvalidAlpha,
    InvalidSample,
)

TestMethod = Literal["welch", "student"]
EffectiveN = Literal["count", "kish"]

RATING_MIN = 1.0
RATING_MAX = 10.0


@dataclass(frozen=True)
class RatingSample:
    question_id: str
    ratings: Tuple[float, ...]
    weights: Tuple[float, ...]

    def __post_init__(self) -> None:
        ratings = tuple(float(x) for x in self.ratings)
        weights = tuple(float(w) for w in self.weights)
        if len(ratings) != len(weights):
            raise InvalidSample(
                f"{self.question_id}: {len(ratings)} ratings but {len(weights)} weights"
            )
        if any(not math.isfinite(w) or w <= 0 for w in weights):
            raise InvalidSample(f"{self.question_id}: weights must be positive")
        if any(not math.isfinite(x) or not RATING_MIN <= x <= RATING_MAX for x in ratings):
            raise InvalidSample(
                f"{self.question_id}: ratings must lie in [{RATING_MIN:g}, {RATING_MAX:g}]"
            )
        object.__setattr__(self, "ratings", ratings)
        object.__setattr__(self, "weights", weights)

    @property
    def n(self) -> int:
        return len(self.ratings)

    @classmethod
    def uniform(cls, question_id: str, ratings: Sequence[float]) -> "RatingSample":
        return cls(question_id, tuple(ratings), tuple(1.0 for _ in ratings))


@dataclass(frozen=True, slots=True)
class SummaryStats:
    mean: float
    std: float
    n: float

    def __post_init__(self) -> None:
        if self.std < 0 or not math.isfinite(self.std):
            raise InvalidSample(f"standard deviation must be finite and >= 0, got {self.std}")


@dataclass(frozen=True, slots=True)
class TestReport:
    __test__ = False  # not a pytest class

    t: float
    df: float
    p_value: float
    alpha: float
    reject: bool
    method: TestMethod = "welch"

    @property
    def verdict(self) -> str:
        return "H_o rejected" if self.reject else "cannot reject H_o"


@dataclass(frozen=True, slots=True)
class EquivalenceReport:
    bounds: Tuple[float, float]
    ci90: Tuple[float, float]
    equivalent: bool
    cohen_d: float
    difference: float
    p_lower: float
    p_upper: float

    @property
    def p_value(self) -> float:
        return max(self.p_lower, self.p_upper)


def weighted_mean(sample: RatingSample) -> float:
    if sample.n == 0:
        raise EmptySample(f"{sample.question_id}: no ratings")
    return float(np.average(np.asarray(sample.ratings), weights=np.asarray(sample.weights)))


def weighted_var(sample: RatingSample) -> float:
    """Σ w (x - x̄)² / ((n - 1) Σ w / n); the unbiased sample variance for equal weights."""
    if sample.n < 2:
        raise InsufficientData(f"{sample.question_id}: need at least 2 ratings, got {sample.n}")
    x = np.asarray(sample.ratings)
    w = np.asarray(sample.weights)
    mean = np.average(x, weights=w)
    n = sample.n
    return float(np.sum(w * (x - mean) ** 2) / ((n - 1) * w.sum() / n))


def weighted_std(sample: RatingSample) -> float:
    return math.sqrt(weighted_var(sample))


def kish_effective_n(weights: Sequence[float]) -> float:
    w = np.asarray(weights, dtype=float)
    if w.size == 0:
        return 0.0
    return float(w.sum() ** 2 / np.sum(w**2))


def summarize(sample: RatingSample, effective_n: EffectiveN = "count") -> SummaryStats:
    n = kish_effective_n(sample.weights) if effective_n == "kish" else float(sample.n)
    return SummaryStats(weighted_mean(sample), weighted_std(sample), n)


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise InvalidAlpha(f"alpha must be in (0, 1), got {alpha}")


def _standard_error(a: SummaryStats, b: SummaryStats, method: TestMethod) -> Tuple[float, float]:
    """Standard error of the mean difference and its degrees of freedom."""
    for side in (a, b):
        if side.n < 2:
            raise InsufficientData(f"each group needs n >= 2, got {side.n:g}")
    if a.std == 0 and b.std == 0:
        raise DegenerateVariance(
            "both groups have zero spread",
            p_value=1.0 if a.mean == b.mean else 0.0,
        )
    if method == "student":
        df = a.n + b.n - 2
        return pooled_std(a, b) * math.sqrt(1 / a.n + 1 / b.n), df
    if method != "welch":
        raise FoonkitError(f"unknown t-test method {method!r}")
    va = a.std**2 / a.n
    vb = b.std**2 / b.n
    df = (va + vb) ** 2 / (va**2 / (a.n - 1) + vb**2 / (b.n - 1))
    return math.sqrt(va + vb), df


def pooled_std(a: SummaryStats, b: SummaryStats) -> float:
    return math.sqrt(((a.n - 1) * a.std**2 + (b.n - 1) * b.std**2) / (a.n + b.n - 2))


def two_tailed_p(t: float, df: float) -> float:
    """P(|T| >= |t|) through the regularised incomplete beta function."""
    return float(min(1.0, max(0.0, special.betainc(df / 2.0, 0.5, df / (df + t * t)))))


def t_test(
    a: SummaryStats,
    b: SummaryStats,
    alpha: float = 0.05,
    *,
    method: TestMethod = "welch",
) -> TestReport:
    _check_alpha(alpha)
    se, df = _standard_error(a, b, method)
    t = (a.mean - b.mean) / se
    p_value = two_tailed_p(t, df)
    return TestReport(t=t, df=df, p_value=p_value, alpha=alpha, reject=p_value <= alpha, method=method)


def tost(
    a: SummaryStats,
    b: SummaryStats,
    d: float = 0.3,
    alpha: float = 0.05,
    *,
    method: TestMethod = "welch",
) -> EquivalenceReport:
    """Two one-sided tests against ±d times the pooled standard deviation."""
    _check_alpha(alpha)
    if not d > 0:
        raise FoonkitError(f"cohen's d must be positive, got {d}")
    se, df = _standard_error(a, b, method)
    margin = d * pooled_std(a, b)
    low, high = -margin, margin
    diff = a.mean - b.mean

    p_lower = float(scipy_stats.t.sf((diff - low) / se, df))
    p_upper = float(scipy_stats.t.cdf((diff - high) / se, df))
    half_width = float(scipy_stats.t.ppf(1 - alpha, df)) * se
    ci = (diff - half_width, diff + half_width)
    return EquivalenceReport(
        bounds=(low, high),
        ci90=ci,
        equivalent=low <= ci[0] and ci[1] <= high,
        cohen_d=d,
        difference=diff,
        p_lower=p_lower,
        p_upper=p_upper,
    )


__all__ = [
    "TestMethod",
    "EffectiveN",
    "RatingSample",
    "SummaryStats",
    "TestReport",
    "EquivalenceReport",
    "weighted_mean",
    "weighted_var",
    "weighted_std",
    "kish_effective_n",
    "summarize",
    "pooled_std",
    "two_tailed_p",
    "t_test",
    "tost",
]
