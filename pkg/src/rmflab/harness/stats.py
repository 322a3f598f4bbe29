"""Summary statistics and normal-distribution helpers for campaign output."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SummaryStats",
    "ks_distance_normal",
    "normal_cdf",
    "normal_quantile",
]

_SQRT2 = math.sqrt(2.0)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

# Rational minimax coefficients for the initial inverse-normal guess
# (relative error ~1e-9, then polished to machine precision below).
_ICDF_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_ICDF_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_ICDF_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_ICDF_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)
_ICDF_SPLIT = 0.02425


def normal_cdf(x: float) -> float:
    """Standard normal distribution function Phi(x)."""
    return 0.5 * (1.0 + math.erf(x / _SQRT2))


def normal_quantile(p: float) -> float:
    """Inverse of the standard normal distribution function.

    A rational initial guess is polished by one Halley step against erf, which
    brings the result to full double precision for p away from the extreme
    denormal tails.
    """
    if not 0.0 < p < 1.0:
        raise ValueError(f"quantile argument must lie in (0, 1), got {p}")
    a, b, c, d = _ICDF_A, _ICDF_B, _ICDF_C, _ICDF_D
    if p < _ICDF_SPLIT:
        q = math.sqrt(-2.0 * math.log(p))
        x = ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
        x /= (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
    elif p <= 1.0 - _ICDF_SPLIT:
        q = p - 0.5
        r = q * q
        x = ((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]
        x *= q
        x /= (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r) + 1.0
    else:
        q = math.sqrt(-2.0 * math.log1p(-p))
        x = ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
        x /= (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
        x = -x
    err = normal_cdf(x) - p
    u = err * _SQRT_TWO_PI * math.exp(0.5 * x * x)
    return x - u / (1.0 + 0.5 * x * u)


def ks_distance_normal(values: np.ndarray) -> float:
    """Kolmogorov-Smirnov distance between a sample and the standard normal."""
    xs = np.sort(np.asarray(values, dtype=np.float64))
    n = xs.size
    if n == 0:
        raise ValueError("KS distance needs a non-empty sample")
    cdf = 0.5 * (1.0 + np.array([math.erf(float(x) / _SQRT2) for x in xs]))
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


@dataclass(frozen=True)
class SummaryStats:
    """Order statistics of a batch of trial values.

    fraction_above counts values >= threshold (weak inequality, matching the
    lower-bound acceptance event).  The standard deviation is the sample one
    (ddof=1) and is 0.0 for singleton batches.
    """

    count: int
    mean: float
    std: float
    minimum: float
    maximum: float
    q05: float
    q50: float
    q95: float
    threshold: float
    fraction_above: float

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("summary needs at least one value")
        if not self.minimum <= self.q05 <= self.q50 <= self.q95 <= self.maximum:
            raise ValueError("quantiles must be ordered between min and max")
        if not 0.0 <= self.fraction_above <= 1.0:
            raise ValueError("fraction_above must lie in [0, 1]")

    @classmethod
    def from_values(cls, values: np.ndarray, threshold: float = 0.0) -> "SummaryStats":
        xs = np.asarray(values, dtype=np.float64)
        if xs.size == 0:
            raise ValueError("summary needs at least one value")
        if not np.all(np.isfinite(xs)):
            raise ValueError("summary values must be finite")
        q05, q50, q95 = (float(q) for q in np.quantile(xs, [0.05, 0.5, 0.95]))
        return cls(
            count=int(xs.size),
            mean=float(np.mean(xs)),
            std=float(np.std(xs, ddof=1)) if xs.size > 1 else 0.0,
            minimum=float(xs.min()),
            maximum=float(xs.max()),
            q05=q05,
            q50=q50,
            q95=q95,
            threshold=float(threshold),
            fraction_above=float(np.mean(xs >= threshold)),
        )
