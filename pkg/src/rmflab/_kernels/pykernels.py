"""Pure-Python/numpy kernel implementations.

This module is the fallback backend: it implements the same kernel interface
as the compiled extension, using vectorized numpy where the result is exact
and literal sequential loops where downstream code relies on bitwise
agreement with the compiled recurrence (multiplicative extension).

Integer-valued kernels (sieves, extension over exact values) match the
compiled backend bitwise; kernels built on transcendental functions agree to
a few ulps only, because vectorized and scalar math libraries round
differently.
"""

from __future__ import annotations

import math

import numpy as np

from .. import rng


def sieve_spf(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit (spf[0]=0, spf[1]=1), int32."""
    if limit < 2:
        raise ValueError(f"sieve limit must be at least 2, got {limit}")
    spf = np.arange(limit + 1, dtype=np.int32)
    root = math.isqrt(limit)
    composite = np.zeros(root + 1, dtype=bool)
    small_primes = []
    for p in range(2, root + 1):
        if not composite[p]:
            small_primes.append(p)
            composite[p * p :: p] = True
    # Writing multiples in descending prime order leaves each composite
    # holding its smallest prime factor.
    for p in reversed(small_primes):
        spf[p * p :: p] = p
    return spf


def lpf_from_spf(spf: np.ndarray) -> np.ndarray:
    """Largest-prime-factor table matching `spf`'s index range (lpf[1]=1)."""
    limit = len(spf) - 1
    lpf = np.arange(limit + 1, dtype=np.int32)
    primes = np.nonzero(spf == np.arange(limit + 1, dtype=spf.dtype))[0][2:]
    # Ascending writes leave each composite holding its largest prime factor.
    for p in primes:
        q = int(p)
        if 2 * q > limit:
            break
        lpf[2 * q :: q] = q
    return lpf


def extend_values(fp: np.ndarray, spf: np.ndarray, N: int, rademacher: bool) -> np.ndarray:
    """Multiplicative extension f(1..N) from values at primes.

    fp[p] holds f(p) for every prime p <= N (other entries ignored); the
    recurrence is f(n) = f(spf(n)) * f(n / spf(n)), with the value forced to
    zero for `rademacher` whenever spf(n)^2 divides n.  Literal sequential
    loop so the compiled backend can reproduce it bitwise.
    """
    if len(fp) < N + 1 or len(spf) < N + 1:
        raise ValueError("prime-value and sieve tables must cover 1..N")
    fvals = np.asarray(fp, dtype=np.complex128).tolist()
    s = np.asarray(spf[: N + 1]).tolist()
    out = [0j] * (N + 1)
    if N >= 1:
        out[1] = 1 + 0j
    if rademacher:
        for n in range(2, N + 1):
            p = s[n]
            m = n // p
            out[n] = 0j if m % p == 0 else fvals[p] * out[m]
    else:
        for n in range(2, N + 1):
            p = s[n]
            out[n] = fvals[p] * out[n // p]
    return np.asarray(out, dtype=np.complex128)


def eval_points_sum(ns: np.ndarray, coeffs: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """S(theta) = sum_t coeffs[t] * e(ns[t] * theta) for each theta."""
    ns = np.asarray(ns, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    thetas = np.asarray(thetas, dtype=np.float64)
    if len(ns) != len(coeffs):
        raise ValueError("ns and coeffs must have equal length")
    nf = ns.astype(np.float64)
    out = np.empty(len(thetas), dtype=np.complex128)
    for i in range(len(thetas)):
        out[i] = np.sum(coeffs * np.exp((2j * np.pi * float(thetas[i])) * nf))
    return out


def inner_sums(primes: np.ndarray, lens: np.ndarray, fvals: np.ndarray, theta: float) -> np.ndarray:
    """Per-prime sums S_p = sum_{m<=lens[p]} fvals[m] * e(m*p*theta).

    `lens` must be grouped into runs of equal value (callers pass primes in
    ascending order, which makes lens non-increasing).  Each run is evaluated
    by one vectorized Horner recurrence in the common power w_p = e(p*theta).
    """
    primes = np.asarray(primes, dtype=np.int64)
    lens = np.asarray(lens, dtype=np.int64)
    fvals = np.asarray(fvals, dtype=np.complex128)
    if len(primes) != len(lens):
        raise ValueError("primes and lens must have equal length")
    k = len(primes)
    out = np.empty(k, dtype=np.complex128)
    if k == 0:
        return out
    if np.min(lens) < 1:
        raise ValueError("inner-sum lengths must be at least 1")
    pf = primes.astype(np.float64)
    tw = 2j * np.pi * float(theta)
    bounds = np.flatnonzero(np.diff(lens)) + 1
    starts = np.concatenate(([0], bounds))
    ends = np.concatenate((bounds, [k]))
    for s, e in zip(starts, ends):
        r = int(lens[s])
        if r + 1 > len(fvals):
            raise ValueError("fvals must cover 1..max(lens)")
        w = np.exp(tw * pf[s:e])
        acc = np.full(e - s, fvals[r], dtype=np.complex128)
        for m in range(r - 1, 0, -1):
            acc = acc * w + fvals[m]
        out[s:e] = acc * w
    return out


def gauss_max_trials(n: int, eps: float, trials: int, seed: int) -> np.ndarray:
    """Per-trial maxima of n equicorrelated standard normals.

    Trial t draws Z_0..Z_n iid standard normal from the counter stream keyed
    by hash(seed, t) and returns max_i (sqrt(eps)*Z_0 + sqrt(1-eps)*Z_i) over
    i = 1..n, the maximum of n unit normals with pairwise correlation eps.
    """
    if n < 1:
        raise ValueError(f"need at least one coordinate, got n={n}")
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"correlation level must lie in [0, 1], got {eps}")
    se = math.sqrt(eps)
    sc = math.sqrt(1.0 - eps)
    out = np.empty(trials, dtype=np.float64)
    for t in range(trials):
        key = rng.counter_hash(seed, t)
        z = rng.normals(key, 0, n + 1)
        out[t] = se * z[0] + sc * float(np.max(z[1:]))
    return out
