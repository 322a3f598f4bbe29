"""Deterministic number-theoretic kernels.

Sieve products (primes, smallest/largest prime factor tables), factorization
and the arithmetic functions built on it (divisor counts, Euler's totient,
von Mangoldt), Ramanujan sums by direct summation, reciprocal prime sums
over ranges (N^alpha, N], and exact integer thresholds for real powers
N^alpha used by every rough/smooth coefficient split.

All operations are pure functions of immutable inputs; a PrimeTable is
read-only after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import ResourceLimitError

#: Default cap, in bytes, on the memory a PrimeTable may occupy.
DEFAULT_MEMORY_CAP = 2**31

#: Bytes per table entry used for the cap estimate: two int32 factor tables
#: plus amortized prime storage.
_BYTES_PER_ENTRY = 9


@dataclass(frozen=True)
class PrimeTable:
    """Sieve products up to `limit`: primes, spf and lpf tables.

    spf[n] is the smallest prime factor of n (spf[1] = 1); lpf[n] the largest
    (lpf[1] = 1, so the convention P(1) = 1 holds).  Arrays are read-only.
    """

    limit: int
    primes: np.ndarray  # int64, ascending
    spf: np.ndarray  # int32
    lpf: np.ndarray  # int32

    def _check_range(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise ValueError(f"argument {n} outside table range 1..{self.limit}")

    def is_prime(self, n: int) -> bool:
        self._check_range(n)
        return n >= 2 and int(self.spf[n]) == n

    def prime_count(self, x: int) -> int:
        """pi(x): the number of primes <= x (requires x <= limit)."""
        if x > self.limit:
            raise ValueError(f"prime_count({x}) exceeds table limit {self.limit}")
        if x < 2:
            return 0
        return int(np.searchsorted(self.primes, x, side="right"))

    def primes_in(self, lo: int, hi: int) -> np.ndarray:
        """Primes p with lo < p <= hi, as a read-only int64 view."""
        if hi > self.limit:
            raise ValueError(f"range end {hi} exceeds table limit {self.limit}")
        i = int(np.searchsorted(self.primes, lo, side="right"))
        j = int(np.searchsorted(self.primes, hi, side="right"))
        return self.primes[i:j]


@dataclass(frozen=True)
class Factorization:
    """n as a product of (prime, exponent) pairs in ascending prime order."""

    n: int
    factors: tuple[tuple[int, int], ...]


def build_prime_table(limit: int, *, memory_cap: int = DEFAULT_MEMORY_CAP) -> PrimeTable:
    """Sieve primes and factor tables up to `limit` in O(limit) memory."""
    if limit < 2:
        raise ValueError(f"table limit must be at least 2, got {limit}")
    estimated = _BYTES_PER_ENTRY * (limit + 1)
    if estimated > memory_cap:
        raise ResourceLimitError(
            f"prime table to {limit} needs about {estimated} bytes, "
            f"exceeding the cap of {memory_cap}"
        )
    spf = _kernels.sieve_spf(limit)
    lpf = _kernels.lpf_from_spf(spf)
    primes = np.nonzero(spf == np.arange(limit + 1, dtype=spf.dtype))[0][2:].astype(np.int64)
    for arr in (spf, lpf, primes):
        arr.flags.writeable = False
    return PrimeTable(limit=limit, primes=primes, spf=spf, lpf=lpf)


def factorize(n: int, table: PrimeTable) -> Factorization:
    """Prime factorization by repeated smallest-prime-factor division."""
    table._check_range(n)
    factors: list[tuple[int, int]] = []
    m = n
    while m > 1:
        p = int(table.spf[m])
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        factors.append((p, e))
    return Factorization(n=n, factors=tuple(factors))


def largest_prime_factor(n: int, table: PrimeTable) -> int:
    """P(n), with the convention P(1) = 1."""
    table._check_range(n)
    return int(table.lpf[n])


def tau_k(n: int, k: int, table: PrimeTable) -> int:
    """Number of ordered k-tuples of positive integers with product n."""
    if k < 1:
        raise ValueError(f"divisor-function order must be at least 1, got {k}")
    table._check_range(n)
    out = 1
    for _, e in factorize(n, table).factors:
        out *= math.comb(e + k - 1, k - 1)
    return out


def euler_phi(n: int, table: PrimeTable) -> int:
    """Count of 1 <= b <= n coprime to n."""
    table._check_range(n)
    out = 1
    for p, e in factorize(n, table).factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def ramanujan_sum(q: int, n: int) -> float:
    """c_q(n) = sum over 1 <= b <= q, gcd(b, q) = 1, of e(b n / q).

    Computed by direct summation (the totient/Moebius identity is reserved
    for cross-checks).  The imaginary part cancels; the real part is
    returned.
    """
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    terms = [
        math.cos(2.0 * math.pi * ((b * n) % q) / q)
        for b in range(1, q + 1)
        if math.gcd(b, q) == 1
    ]
    return math.fsum(terms)


def von_mangoldt(n: int, table: PrimeTable) -> float:
    """log p when n is a power of the prime p, else 0."""
    table._check_range(n)
    if n == 1:
        return 0.0
    p = int(table.spf[n])
    m = n
    while m % p == 0:
        m //= p
    return math.log(p) if m == 1 else 0.0


def mertens_tail(N: int, alpha: float, table: PrimeTable) -> float:
    """Sum of 1/p over primes N^alpha < p <= N, compensated accumulation."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"exponent must lie in (0, 1), got {alpha}")
    if N > table.limit:
        raise ValueError(f"N={N} exceeds table limit {table.limit}")
    lo = power_floor(N, alpha)  # p > N^alpha  <=>  p >= lo + 1
    ps = table.primes_in(lo, N)
    return math.fsum(1.0 / p for p in ps.tolist())


def _exact_exponent(alpha: float) -> Fraction | None:
    """alpha as a small fraction when that fraction round-trips the float."""
    frac = Fraction(alpha).limit_denominator(64)
    if 0 < frac < 1 and float(frac) == alpha:
        return frac
    return None


def power_floor(n: int, alpha: float) -> int:
    """floor(n^alpha), exact for exponents that are small fractions.

    For alpha = a/b with b <= 64 round-tripping the float, the answer is
    certified by integer comparisons k^b <= n^a; otherwise floating-point
    evaluation with a neighborhood scan is used (approximate at exact-power
    boundaries only).
    """
    if n < 1:
        raise ValueError(f"base must be positive, got {n}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"exponent must lie in (0, 1), got {alpha}")
    k = int(n**alpha)
    frac = _exact_exponent(alpha)
    if frac is not None:
        a, b = frac.numerator, frac.denominator
        target = n**a
        while k > 0 and k**b > target:
            k -= 1
        while (k + 1) ** b <= target:
            k += 1
        return k
    return max(k, 1)


def power_ceil(n: int, alpha: float) -> int:
    """ceil(n^alpha), exact under the same conditions as power_floor."""
    k = power_floor(n, alpha)
    frac = _exact_exponent(alpha)
    if frac is not None:
        a, b = frac.numerator, frac.denominator
        return k if k**b == n**a else k + 1
    return k if float(k) == n**alpha else k + 1


def squarefree_count(x: int, table: PrimeTable) -> int:
    """Number of squarefree integers in 1..x (0 for x < 1)."""
    if x > table.limit:
        raise ValueError(f"argument {x} exceeds table limit {table.limit}")
    if x < 1:
        return 0
    square_divisible = np.zeros(x + 1, dtype=bool)
    for p in table.primes:
        q = int(p) * int(p)
        if q > x:
            break
        square_divisible[q::q] = True
    return x - int(np.count_nonzero(square_divisible[1:]))
