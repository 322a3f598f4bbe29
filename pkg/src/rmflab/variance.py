"""Conditional variance and covariance of the large-prime part of P_N.

Conditioning on the values of f at small primes, the large-prime part
Sum_{p in (N^alpha, N]} f(p) * (inner sum over m <= N/p) is, in distribution,
a quadratic form in the inner sums; this module evaluates that quadratic form
exactly.  The same quantity admits an exact regrouping by the inner length
r = floor(N/p) (each prime p > N^(1/2) has floor(N/p) constant on the interval
(N/(r+1), N/r]), implemented separately so the two evaluation orders can be
checked against each other bit for bit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .ntcore import PrimeTable, power_ceil, power_floor, squarefree_count
from .rmf import RmfKind, RmfValues


class Normalization(enum.Enum):
    """Leading factor of the variance form: HALF is 1/(2N), FULL is 1/N."""

    HALF = "half"
    FULL = "full"

    def factor(self, N: int) -> float:
        if self is Normalization.HALF:
            return 1.0 / (2.0 * N)
        return 1.0 / N


@dataclass(frozen=True)
class VarianceSpec:
    """Which conditional variance to evaluate.

    Primes range over p >= N^pmin_exponent up to pmax (default N); the
    threshold is realized exactly as the integer power_ceil(N, pmin_exponent),
    so a prime equal to an integer N^alpha is included.
    """

    pmin_exponent: float
    normalization: Normalization
    kind: RmfKind
    pmax: int | None = None

    def __post_init__(self):
        if not 0.0 < self.pmin_exponent < 1.0:
            raise ValueError(
                f"prime range exponent must lie in (0, 1), got {self.pmin_exponent}"
            )


def _check_theta(theta: float) -> None:
    if not 0.0 <= theta < 1.0:
        raise ValueError(f"theta must lie in [0, 1), got {theta}")


def _check_kind(values: RmfValues, spec: VarianceSpec) -> None:
    if spec.kind is not values.kind:
        raise ValueError(
            f"spec is for {spec.kind.value} but values are {values.kind.value}"
        )


def _rough_primes(N: int, alpha: float, pmax: int, table: PrimeTable) -> np.ndarray:
    """Primes p with N^alpha <= p <= pmax, ascending."""
    lo = power_ceil(N, alpha)
    if lo > pmax:
        return np.empty(0, dtype=np.int64)
    return table.primes_in(lo - 1, pmax)


def _quadratic_form(
    values: RmfValues,
    primes: np.ndarray,
    lens: np.ndarray,
    theta: float,
    norm_factor: float,
) -> float:
    """norm * sum over p of |S_p|^2 (or (Re S_p)^2 for Rademacher), where
    S_p = sum_{m <= len_p} f(m) e(m p theta).

    Both variance entry points funnel through here with identical
    (primes, lens) arrays, which is what makes them bit-identical.
    """
    if len(primes) == 0:
        return 0.0
    maxlen = int(lens.max())
    fvals = np.ascontiguousarray(values.values[: maxlen + 1])
    inner = _kernels.inner_sums(primes, lens, fvals, theta)
    if values.kind.is_rademacher:
        terms = np.real(inner) ** 2
    else:
        terms = np.abs(inner) ** 2
    return float(np.sum(terms)) * norm_factor


def conditional_variance(
    values: RmfValues, theta: float, spec: VarianceSpec, table: PrimeTable
) -> float:
    """The conditional variance at theta: norm * Sum_p |S_p(theta)|^2 over the
    spec's prime range, with (Re S_p)^2 replacing |S_p|^2 for Rademacher.

    An empty prime range gives 0.
    """
    _check_theta(theta)
    _check_kind(values, spec)
    N = values.N
    pmax = spec.pmax if spec.pmax is not None else N
    if pmax > table.limit:
        raise ValueError(f"pmax={pmax} exceeds table limit {table.limit}")
    primes = _rough_primes(N, spec.pmin_exponent, pmax, table)
    lens = N // primes if len(primes) else primes
    return _quadratic_form(values, primes, lens, theta, spec.normalization.factor(N))


def rewrite_by_r(values: RmfValues, theta: float, table: PrimeTable) -> float:
    """The same variance (exponent 0.8, 1/N normalization) regrouped by inner
    length: (1/N) Sum_{r <= N^0.2} Sum_{p in (N/(r+1), N/r], p >= N^0.8} |S_p|^2
    where S_p has exactly r terms.

    For p in (N/(r+1), N/r] the inner length floor(N/p) equals r, so the
    regrouping is an exact identity with conditional_variance at the same
    inputs — bit-identical, because both assemble the same ascending-prime
    arrays and reduce in the same order.  Rademacher values square the real
    part, keeping the identity across kinds.
    """
    _check_theta(theta)
    N = values.N
    if N > table.limit:
        raise ValueError(f"N={N} exceeds table limit {table.limit}")
    lo = power_ceil(N, 0.8)
    rmax = power_floor(N, 0.2)
    prime_parts = []
    len_parts = []
    # descending r puts the concatenated primes in ascending order
    for r in range(rmax, 0, -1):
        lo_r = max(N // (r + 1), lo - 1)
        hi_r = N // r
        if hi_r <= lo_r:
            continue
        ps = table.primes_in(lo_r, hi_r)
        if len(ps):
            prime_parts.append(ps)
            len_parts.append(np.full(len(ps), r, dtype=np.int64))
    if not prime_parts:
        return 0.0
    primes = np.concatenate(prime_parts)
    lens = np.concatenate(len_parts)
    return _quadratic_form(values, primes, lens, theta, 1.0 / N)


def covariance_Z(
    values: RmfValues,
    theta1: float,
    theta2: float,
    spec: VarianceSpec,
    table: PrimeTable,
) -> float:
    """Conditional covariance between the large-prime parts at two points.

    Steinhaus: norm * Re Sum_p S_p(theta1) * conj(S_p(theta2)).  Rademacher:
    norm * Sum_p Re(S_p(theta1)) * Re(S_p(theta2)), which expands to the
    half-sum of the phase products e(p(m1 theta1 - m2 theta2)) and
    e(p(m1 theta1 + m2 theta2)).  Equal points are rejected: that case is
    conditional_variance.
    """
    _check_theta(theta1)
    _check_theta(theta2)
    if theta1 == theta2:
        raise ValueError("equal evaluation points: use conditional_variance")
    _check_kind(values, spec)
    N = values.N
    pmax = spec.pmax if spec.pmax is not None else N
    if pmax > table.limit:
        raise ValueError(f"pmax={pmax} exceeds table limit {table.limit}")
    primes = _rough_primes(N, spec.pmin_exponent, pmax, table)
    if len(primes) == 0:
        return 0.0
    lens = N // primes
    maxlen = int(lens.max())
    fvals = np.ascontiguousarray(values.values[: maxlen + 1])
    s1 = _kernels.inner_sums(primes, lens, fvals, theta1)
    s2 = _kernels.inner_sums(primes, lens, fvals, theta2)
    if values.kind.is_rademacher:
        terms = np.real(s1) * np.real(s2)
    else:
        terms = np.real(s1 * np.conj(s2))
    return float(np.sum(terms)) * spec.normalization.factor(N)


def diagonal_term(N: int, kind: RmfKind, table: PrimeTable) -> float:
    """The diagonal (m1 = m2) part of the variance at the half normalization:
    (1/2N) Sum_{N^{6/7} < p <= N} of floor(N/p) (Steinhaus) or of the exact
    count of squarefree m <= N/p (Rademacher, whose values vanish off
    squarefree integers).

    The integer sum is formed exactly, then divided once.
    """
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    if N > table.limit:
        raise ValueError(f"N={N} exceeds table limit {table.limit}")
    primes = _rough_primes(N, 6.0 / 7.0, N, table)
    if len(primes) == 0:
        return 0.0
    quotients = N // primes
    if kind.is_rademacher:
        counts = {int(q): squarefree_count(int(q), table) for q in np.unique(quotients)}
        total = sum(counts[int(q)] for q in quotients.tolist())
    else:
        total = int(np.sum(quotients))
    return total / (2.0 * N)


def max_variance_over_D(
    values: RmfValues,
    points,
    spec: VarianceSpec,
    subsample: int | None,
    seed: int,
    table: PrimeTable,
) -> tuple[float, float]:
    """Maximum of rewrite_by_r over a discretization (theta_star, value).

    Subsampling, when requested and smaller than the set, draws uniformly with
    the given seed.  Points are scanned in ascending theta, so ties keep the
    smallest theta regardless of how the scan might be scheduled.
    """
    if len(points) == 0:
        raise ValueError("empty point set")
    _check_kind(values, spec)
    if spec.pmin_exponent != 0.8 or spec.normalization is not Normalization.FULL:
        raise ValueError(
            "the maximized statistic is the exponent-0.8, 1/N-normalized "
            "variance; adjust the spec accordingly"
        )
    if subsample is not None and subsample < len(points):
        points = points.subsample(subsample, seed)
    best_theta = None
    best = -math.inf
    for theta in _point_thetas(points):
        v = rewrite_by_r(values, theta, table)
        if v > best:
            best = v
            best_theta = theta
    return best_theta, best


def _point_thetas(points):
    thetas = getattr(points, "thetas", None)
    if thetas is not None:
        return [float(t) for t in thetas]
    return sorted(float(p.theta) for p in points)
