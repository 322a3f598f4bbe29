"""Evaluation and maximization of normalized exponential sums.

P_N(theta) = (1/sqrt(N)) * sum_{n <= N} f(n) e(n theta), optionally restricted
to coefficients whose largest prime factor is large ("rough", P(n) >= N^alpha)
or small ("smooth", the complementary set).  Fast grid evaluation uses a
zero-padded FFT; a grid of spacing at most 1/(4*pi*N) certifies the continuous
maximum to within a factor 2 (Bernstein's inequality for trigonometric
polynomials of degree N).

Also here: the shifted-fraction discretization of the circle
{a/q + j/(4 pi N)} whose spacing realizes that grid bound through Dirichlet
approximation, and the fixed set of prime-over-prime fractions used by the
lower-bound experiments.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels, rng
from .errors import ResourceLimitError
from .ntcore import PrimeTable, power_ceil, power_floor
from .rmf import RmfValues

#: Largest number of discretization points build_discretization will
#: materialize; beyond this use iter_discretization / subsample_discretization.
MATERIALIZE_CAP = 25_000_000


# --- coefficient filters -----------------------------------------------------


@dataclass(frozen=True)
class CoefficientFilter:
    """Restriction of the coefficient support {1..N} by largest prime factor.

    mode "all" keeps everything; "rough" keeps P(n) >= N^alpha; "smooth"
    keeps the complement.  The real threshold N^alpha is realized exactly as
    the integer c = power_ceil(N, alpha): rough means P(n) >= c, smooth means
    P(n) < c, so the two modes partition {1..N} and an n with P(n) equal to
    an integer N^alpha lands on the rough side.
    """

    mode: str
    alpha: float | None = None

    def __post_init__(self):
        if self.mode not in ("all", "rough", "smooth"):
            raise ValueError(f"unknown filter mode {self.mode!r}")
        if self.mode == "all":
            if self.alpha is not None:
                raise ValueError("the all-coefficients filter takes no exponent")
        else:
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise ValueError(f"filter exponent must lie in (0, 1), got {self.alpha}")

    @staticmethod
    def everything() -> "CoefficientFilter":
        return CoefficientFilter("all")

    @staticmethod
    def rough_at_least(alpha: float) -> "CoefficientFilter":
        return CoefficientFilter("rough", alpha)

    @staticmethod
    def smooth_at_most(alpha: float) -> "CoefficientFilter":
        return CoefficientFilter("smooth", alpha)

    def label(self) -> str:
        if self.mode == "all":
            return "all"
        return f"{self.mode}:{self.alpha:g}"


ALL_COEFFICIENTS = CoefficientFilter.everything()


def coefficient_indices(N: int, filt: CoefficientFilter, table: PrimeTable) -> np.ndarray:
    """The n in 1..N passing the filter, ascending int64."""
    if N > table.limit:
        raise ValueError(f"N={N} exceeds table limit {table.limit}")
    if filt.mode == "all":
        return np.arange(1, N + 1, dtype=np.int64)
    c = power_ceil(N, filt.alpha)
    lpf = table.lpf[1 : N + 1]
    if filt.mode == "rough":
        mask = lpf >= c
    else:
        mask = lpf < c
    return np.nonzero(mask)[0].astype(np.int64) + 1


# --- evaluation ---------------------------------------------------------------


@dataclass(frozen=True)
class GridEvaluation:
    """P values on the M equispaced points j/M, with their provenance."""

    N: int
    M: int
    filter: CoefficientFilter
    values: np.ndarray  # complex128, length M


def eval_point(
    values: RmfValues, filt: CoefficientFilter, theta: float, table: PrimeTable
) -> complex:
    """Reference evaluation of P_N(theta) by compensated direct summation."""
    ns = coefficient_indices(values.N, filt, table)
    coeffs = values.values[ns]
    re_terms = []
    im_terms = []
    for n, c in zip(ns.tolist(), coeffs.tolist()):
        z = c * cmath.exp(2j * cmath.pi * (n * theta))
        re_terms.append(z.real)
        im_terms.append(z.imag)
    scale = 1.0 / math.sqrt(values.N)
    return complex(math.fsum(re_terms) * scale, math.fsum(im_terms) * scale)


def eval_points(
    values: RmfValues, filt: CoefficientFilter, thetas: np.ndarray, table: PrimeTable
) -> np.ndarray:
    """Bulk evaluation of P_N at arbitrary points via the kernel backend."""
    ns = coefficient_indices(values.N, filt, table)
    coeffs = np.ascontiguousarray(values.values[ns])
    out = _kernels.eval_points_sum(ns, coeffs, np.asarray(thetas, dtype=np.float64))
    return out / math.sqrt(values.N)


def next_smooth(m: int) -> int:
    """Smallest 5-smooth integer (2^a 3^b 5^c) that is >= m."""
    if m <= 1:
        return 1
    best = None
    p5 = 1
    while p5 < 2 * m:
        p35 = p5
        while p35 < 2 * m:
            p235 = p35
            while p235 < m:
                p235 *= 2
            if best is None or p235 < best:
                best = p235
            p35 *= 3
        p5 *= 5
    return best


def eval_grid_fft(
    values: RmfValues, filt: CoefficientFilter, M: int, table: PrimeTable
) -> GridEvaluation:
    """P_N on the grid {j/M}: entry j = (1/sqrt(N)) sum a_n e(n j / M).

    The transform length is rounded up to the next 5-smooth size (recorded in
    the result), so every request is admissible; M below N+1 is rejected
    because the padded transform must resolve every coefficient.
    """
    if M < values.N + 1:
        raise ValueError(f"grid size {M} must exceed the degree (need >= {values.N + 1})")
    realized = next_smooth(M)
    ns = coefficient_indices(values.N, filt, table)
    padded = np.zeros(realized, dtype=np.complex128)
    padded[ns] = values.values[ns]
    grid = np.fft.ifft(padded, norm="forward") / math.sqrt(values.N)
    grid.flags.writeable = False
    return GridEvaluation(N=values.N, M=realized, filter=filt, values=grid)


def max_modulus(
    values: RmfValues,
    filt: CoefficientFilter,
    oversample: float,
    table: PrimeTable,
) -> tuple[float, float]:
    """Grid maximum of |P_N| with spacing fine enough for 2-certification.

    Returns (theta_star, magnitude) over the grid of ceil(oversample * N)
    points (rounded up to a transform-friendly size); ties take the smallest
    grid index.  For oversample >= 4*pi the spacing is at most 1/(4*pi*N), so
    the true continuous maximum lies in [magnitude, 2 * magnitude].
    """
    if oversample < 4.0 * math.pi:
        raise ValueError(
            f"oversampling factor must be at least 4*pi, got {oversample}"
        )
    M = max(math.ceil(oversample * values.N), values.N + 1)
    grid = eval_grid_fft(values, filt, M, table)
    mags = np.abs(grid.values)
    idx = int(np.argmax(mags))
    return idx / grid.M, float(mags[idx])


# --- the discretization set ---------------------------------------------------


@dataclass(frozen=True)
class DiscretizationPoint:
    """theta = a/q + j/(4 pi N) reduced mod 1, stored as its integer triple."""

    a: int
    q: int
    j: int
    theta: float


class DiscretizationSet:
    """An immutable, theta-sorted sequence of DiscretizationPoint.

    Stored columnar (int64 triples plus float64 theta) so million-point sets
    stay compact; indexing materializes single points on demand.
    """

    def __init__(self, a: np.ndarray, q: np.ndarray, j: np.ndarray, theta: np.ndarray):
        self._a = a
        self._q = q
        self._j = j
        self._theta = theta
        for arr in (a, q, j, theta):
            arr.flags.writeable = False

    def __len__(self) -> int:
        return len(self._theta)

    def __getitem__(self, i: int) -> DiscretizationPoint:
        if isinstance(i, slice):
            raise TypeError("slicing is not supported; use subsample or thetas")
        return DiscretizationPoint(
            a=int(self._a[i]), q=int(self._q[i]), j=int(self._j[i]),
            theta=float(self._theta[i]),
        )

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    @property
    def thetas(self) -> np.ndarray:
        """The sorted theta values, read-only float64."""
        return self._theta

    def subsample(self, count: int, seed: int) -> "DiscretizationSet":
        """A uniformly drawn subset of `count` points, theta order kept."""
        if count >= len(self):
            return self
        idx = rng.sample_indices(seed, len(self), count)
        return DiscretizationSet(
            self._a[idx].copy(), self._q[idx].copy(),
            self._j[idx].copy(), self._theta[idx].copy(),
        )


def _reduce_mod_one(x: np.ndarray) -> np.ndarray:
    return x - np.floor(x)

def _coprime_residues(q: int) -> np.ndarray:
    a = np.arange(1, q + 1, dtype=np.int64)
    return a[np.gcd(a, q) == 1]


def _offset_bound(N: int, q: int, Q: float) -> int:
    """J = floor(4 pi N / (q Q)): offsets j range over -J..J."""
    return int(math.floor(4.0 * math.pi * N / (q * Q)))


def _check_discretization_args(N: int, Q: float) -> int:
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if not 2.0 <= Q <= 4.0 * math.pi * N:
        raise ValueError(f"denominator bound must lie in [2, 4*pi*N], got {Q}")
    return int(math.floor(Q))


def discretization_size(N: int, Q: float) -> int:
    """Number of (a, q, j) triples with q <= Q, gcd(a,q)=1, |j| <= 4piN/(qQ)."""
    qmax = _check_discretization_args(N, Q)
    total = 0
    for q in range(1, qmax + 1):
        total += len(_coprime_residues(q)) * (2 * _offset_bound(N, q, Q) + 1)
    return total


def build_discretization(N: int, Q: float) -> DiscretizationSet:
    """Materialize the full discretization, sorted by theta, deduplicated.

    Raises a resource error beyond MATERIALIZE_CAP points (about N = 10^6 at
    the default Q = 4 pi sqrt(N)); use iter_discretization or
    subsample_discretization there.
    """
    qmax = _check_discretization_args(N, Q)
    if discretization_size(N, Q) > MATERIALIZE_CAP:
        raise ResourceLimitError(
            f"discretization for N={N}, Q={Q} exceeds {MATERIALIZE_CAP} points; "
            "use iter_discretization or subsample_discretization"
        )
    scale = 1.0 / (4.0 * math.pi * N)
    a_parts, q_parts, j_parts, t_parts = [], [], [], []
    for q in range(1, qmax + 1):
        residues = _coprime_residues(q)
        J = _offset_bound(N, q, Q)
        js = np.arange(-J, J + 1, dtype=np.int64)
        na, nj = len(residues), len(js)
        a_block = np.repeat(residues, nj)
        j_block = np.tile(js, na)
        theta = _reduce_mod_one(a_block / q + j_block * scale)
        a_parts.append(a_block)
        q_parts.append(np.full(na * nj, q, dtype=np.int64))
        j_parts.append(j_block)
        t_parts.append(theta)
    a = np.concatenate(a_parts)
    q = np.concatenate(q_parts)
    j = np.concatenate(j_parts)
    theta = np.concatenate(t_parts)
    order = np.lexsort((j, a, q, theta))
    a, q, j, theta = a[order], q[order], j[order], theta[order]
    keep = np.concatenate(([True], np.diff(theta) > 0))
    return DiscretizationSet(a[keep], q[keep], j[keep], theta[keep])


def iter_discretization(N: int, Q: float):
    """Stream the discretization one (q, residue-block) at a time.

    Yields DiscretizationPoint in (q, a, j) order without materializing or
    deduplicating the whole set; exact-collision duplicates (removed by
    build_discretization) may appear, which maximization consumers can ignore.
    """
    qmax = _check_discretization_args(N, Q)
    scale = 1.0 / (4.0 * math.pi * N)
    for q in range(1, qmax + 1):
        J = _offset_bound(N, q, Q)
        for a in _coprime_residues(q).tolist():
            base = a / q
            for j in range(-J, J + 1):
                t = base + j * scale
                yield DiscretizationPoint(a=a, q=q, j=j, theta=t - math.floor(t))


def subsample_discretization(N: int, Q: float, count: int, seed: int) -> DiscretizationSet:
    """A uniform `count`-subset of the discretization without materializing it.

    Indexes the (q, a, j) triple space directly: per-q block sizes are
    phi(q) * (2 J_q + 1), a seeded draw picks distinct global indices, and
    each index is decoded back to its triple.  Deterministic in (N, Q, count,
    seed); returns the whole set when count covers it.
    """
    qmax = _check_discretization_args(N, Q)
    sizes = np.empty(qmax + 1, dtype=np.int64)
    sizes[0] = 0
    width = {}
    for q in range(1, qmax + 1):
        phi_q = len(_coprime_residues(q))
        width[q] = 2 * _offset_bound(N, q, Q) + 1
        sizes[q] = phi_q * width[q]
    cum = np.cumsum(sizes)
    total = int(cum[-1])
    if count >= total:
        if total > MATERIALIZE_CAP:
            raise ResourceLimitError(
                f"cannot materialize all {total} points; lower the subsample count"
            )
        return build_discretization(N, Q)
    idx = rng.sample_indices(seed, total, count)
    scale = 1.0 / (4.0 * math.pi * N)
    # cum[q-1] <= i < cum[q] locates block q (cum[0] = 0 pads the front)
    qs = np.searchsorted(cum, idx, side="right")
    a_out = np.empty(count, dtype=np.int64)
    j_out = np.empty(count, dtype=np.int64)
    residue_cache: dict[int, np.ndarray] = {}
    for i in range(count):
        q = int(qs[i])
        rel = int(idx[i]) - int(cum[q - 1])
        w = width[q]
        if q not in residue_cache:
            residue_cache[q] = _coprime_residues(q)
        a_out[i] = residue_cache[q][rel // w]
        j_out[i] = rel % w - (w - 1) // 2
    q_out = qs.astype(np.int64)
    theta = _reduce_mod_one(a_out / q_out + j_out * scale)
    order = np.lexsort((j_out, a_out, q_out, theta))
    return DiscretizationSet(a_out[order], q_out[order], j_out[order], theta[order])


def default_denominator_bound(N: int) -> float:
    """The default Q = 4 pi sqrt(N) used by the maximization experiments."""
    return 4.0 * math.pi * math.sqrt(N)


# --- the lower-bound theta set --------------------------------------------------


def build_theta_set_A(N: int, table: PrimeTable) -> np.ndarray:
    """floor(N^{1/8}) consecutive primes just above N^{1/7}, over a prime
    denominator q with q^2 in [N, 4N]; values reduced mod 1, ascending.

    All comparisons against the power thresholds are exact integer ones.
    """
    if N < 2:
        raise ValueError(f"N must be at least 2, got {N}")
    m = power_floor(N, 0.125)
    if m < 1:
        raise ValueError(f"N={N} gives an empty set")
    # smallest prime q with q*q >= N (Bertrand guarantees q*q <= 4N)
    qlo = math.isqrt(N - 1) + 1
    if qlo > table.limit:
        raise ResourceLimitError(
            f"need primes near sqrt({N}) but the table stops at {table.limit}"
        )
    pos = int(np.searchsorted(table.primes, qlo, side="left"))
    if pos >= len(table.primes):
        raise ResourceLimitError(
            f"no prime >= {qlo} below the table limit {table.limit}"
        )
    q = int(table.primes[pos])
    if q * q > 4 * N:
        raise ResourceLimitError(
            f"smallest prime at or above sqrt({N}) is {q}, outside [sqrt(N), 2 sqrt(N)]"
        )
    # numerators: the m smallest primes p with p^7 > N
    numerators = []
    for p in table.primes.tolist():
        if p**7 > N:
            numerators.append(p)
            if len(numerators) == m:
                break
    if len(numerators) < m:
        raise ResourceLimitError(
            f"table limit {table.limit} holds fewer than {m} primes above {N}^(1/7)"
        )
    vals = np.array([p / q for p in numerators], dtype=np.float64)
    return _reduce_mod_one(vals)
