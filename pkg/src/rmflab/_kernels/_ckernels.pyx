# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Mirrors the pure-Python fallback module function for function.  Integer
kernels (sieves, multiplicative extension over exact values) reproduce the
fallback bitwise; kernels involving log/cos/sin agree to a few ulps because
scalar libm and numpy's vectorized loops round differently.

Complex arithmetic is spelled out on separate real/imaginary doubles in the
exact order the fallback uses, so no compiler complex-multiply helper or
contraction can change results.
"""

import math

import numpy as np

from libc.math cimport M_PI, INFINITY, cos, log, sin, sqrt
from libc.stdint cimport int32_t, int64_t, uint64_t

cdef double _TWO53_INV = 2.0 ** -53


cdef inline uint64_t _mix64(uint64_t z) nogil:
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline uint64_t _chash(uint64_t key, uint64_t counter) nogil:
    return _mix64(key + (counter + 1) * <uint64_t>0x9E3779B97F4A7C15)


cdef inline double _normal(uint64_t key, uint64_t pair) nogil:
    cdef uint64_t h1 = _chash(key, 2 * pair)
    cdef uint64_t h2 = _chash(key, 2 * pair + 1)
    cdef double u1 = <double>((h1 >> 11) + 1) * _TWO53_INV
    cdef double u2 = <double>(h2 >> 11) * _TWO53_INV
    return sqrt(-2.0 * log(u1)) * cos((2.0 * M_PI) * u2)


def sieve_spf(long long limit):
    """Smallest-prime-factor table for 0..limit (spf[0]=0, spf[1]=1), int32."""
    if limit < 2:
        raise ValueError(f"sieve limit must be at least 2, got {limit}")
    spf_arr = np.arange(limit + 1, dtype=np.int32)
    cdef int32_t[::1] spf = spf_arr
    cdef long long p, m, root
    root = <long long>sqrt(<double>limit)
    while (root + 1) * (root + 1) <= limit:
        root += 1
    while root * root > limit:
        root -= 1
    with nogil:
        for p in range(2, root + 1):
            if spf[p] == p:
                m = p * p
                while m <= limit:
                    if spf[m] == m:
                        spf[m] = <int32_t>p
                    m += p
    return spf_arr


def lpf_from_spf(spf_in):
    """Largest-prime-factor table matching `spf`'s index range (lpf[1]=1)."""
    spf_c = np.ascontiguousarray(spf_in, dtype=np.int32)
    cdef const int32_t[::1] spf = spf_c
    cdef long long limit = spf.shape[0] - 1
    lpf_arr = np.arange(limit + 1, dtype=np.int32)
    cdef int32_t[::1] lpf = lpf_arr
    cdef long long n, m
    with nogil:
        for n in range(2, limit + 1):
            m = n // spf[n]
            if m > 1:
                lpf[n] = lpf[m]
    return lpf_arr


def extend_values(fp, spf_in, long long N, bint rademacher):
    """Multiplicative extension f(1..N) from values at primes (see fallback)."""
    fpc = np.ascontiguousarray(fp, dtype=np.complex128)
    spf_c = np.ascontiguousarray(spf_in, dtype=np.int32)
    if fpc.shape[0] < N + 1 or spf_c.shape[0] < N + 1:
        raise ValueError("prime-value and sieve tables must cover 1..N")
    fr_a = np.ascontiguousarray(fpc.real)
    fi_a = np.ascontiguousarray(fpc.imag)
    vr_a = np.zeros(N + 1, dtype=np.float64)
    vi_a = np.zeros(N + 1, dtype=np.float64)
    cdef const double[::1] fr = fr_a
    cdef const double[::1] fi = fi_a
    cdef double[::1] vr = vr_a
    cdef double[::1] vi = vi_a
    cdef const int32_t[::1] spf = spf_c
    cdef long long n, m, p
    cdef double ar, ai, br, bi
    if N >= 1:
        vr[1] = 1.0
    with nogil:
        for n in range(2, N + 1):
            p = spf[n]
            m = n // p
            if rademacher and m % p == 0:
                continue
            ar = fr[p]
            ai = fi[p]
            br = vr[m]
            bi = vi[m]
            vr[n] = ar * br - ai * bi
            vi[n] = ar * bi + ai * br
    out = np.empty(N + 1, dtype=np.complex128)
    out.real = vr_a
    out.imag = vi_a
    return out


def eval_points_sum(ns, coeffs, thetas):
    """S(theta) = sum_t coeffs[t] * e(ns[t] * theta) for each theta."""
    ns_c = np.ascontiguousarray(ns, dtype=np.int64)
    co = np.ascontiguousarray(coeffs, dtype=np.complex128)
    th = np.ascontiguousarray(thetas, dtype=np.float64)
    if ns_c.shape[0] != co.shape[0]:
        raise ValueError("ns and coeffs must have equal length")
    cr_a = np.ascontiguousarray(co.real)
    ci_a = np.ascontiguousarray(co.imag)
    cdef long long K = ns_c.shape[0]
    cdef long long T = th.shape[0]
    or_a = np.empty(T, dtype=np.float64)
    oi_a = np.empty(T, dtype=np.float64)
    cdef const double[::1] cr = cr_a
    cdef const double[::1] ci = ci_a
    cdef const int64_t[::1] nv = ns_c
    cdef const double[::1] tv = th
    cdef double[::1] ore = or_a
    cdef double[::1] oim = oi_a
    cdef long long i, t
    cdef double w, arg, c, s, sre, sim
    with nogil:
        for i in range(T):
            w = (2.0 * M_PI) * tv[i]
            sre = 0.0
            sim = 0.0
            for t in range(K):
                arg = w * <double>nv[t]
                c = cos(arg)
                s = sin(arg)
                sre += cr[t] * c - ci[t] * s
                sim += cr[t] * s + ci[t] * c
            ore[i] = sre
            oim[i] = sim
    out = np.empty(T, dtype=np.complex128)
    out.real = or_a
    out.imag = oi_a
    return out


def inner_sums(primes, lens, fvals, double theta):
    """Per-prime sums S_p = sum_{m<=lens[p]} fvals[m] * e(m*p*theta)."""
    p_c = np.ascontiguousarray(primes, dtype=np.int64)
    l_c = np.ascontiguousarray(lens, dtype=np.int64)
    f_c = np.ascontiguousarray(fvals, dtype=np.complex128)
    if p_c.shape[0] != l_c.shape[0]:
        raise ValueError("primes and lens must have equal length")
    cdef long long K = p_c.shape[0]
    or_a = np.empty(K, dtype=np.float64)
    oi_a = np.empty(K, dtype=np.float64)
    if K == 0:
        out = np.empty(0, dtype=np.complex128)
        return out
    if int(np.min(l_c)) < 1:
        raise ValueError("inner-sum lengths must be at least 1")
    if int(np.max(l_c)) + 1 > f_c.shape[0]:
        raise ValueError("fvals must cover 1..max(lens)")
    fr_a = np.ascontiguousarray(f_c.real)
    fi_a = np.ascontiguousarray(f_c.imag)
    cdef const int64_t[::1] pv = p_c
    cdef const int64_t[::1] lv = l_c
    cdef const double[::1] fr = fr_a
    cdef const double[::1] fi = fi_a
    cdef double[::1] ore = or_a
    cdef double[::1] oim = oi_a
    cdef double tw = (2.0 * M_PI) * theta
    cdef long long k, r, m
    cdef double arg, wre, wim, accre, accim, tre, tim
    with nogil:
        for k in range(K):
            r = lv[k]
            arg = tw * <double>pv[k]
            wre = cos(arg)
            wim = sin(arg)
            accre = fr[r]
            accim = fi[r]
            for m in range(r - 1, 0, -1):
                tre = (accre * wre - accim * wim) + fr[m]
                tim = (accre * wim + accim * wre) + fi[m]
                accre = tre
                accim = tim
            ore[k] = accre * wre - accim * wim
            oim[k] = accre * wim + accim * wre
    out = np.empty(K, dtype=np.complex128)
    out.real = or_a
    out.imag = oi_a
    return out


def gauss_max_trials(long long n, double eps, long long trials, seed):
    """Per-trial maxima of n equicorrelated standard normals (see fallback)."""
    if n < 1:
        raise ValueError(f"need at least one coordinate, got n={n}")
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"correlation level must lie in [0, 1], got {eps}")
    cdef uint64_t key, base = <uint64_t>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    out = np.empty(trials, dtype=np.float64)
    cdef double[::1] ov = out
    cdef double se = sqrt(eps)
    cdef double sc = sqrt(1.0 - eps)
    cdef long long t, i
    cdef double z0, z, mx
    with nogil:
        for t in range(trials):
            key = _chash(base, <uint64_t>t)
            z0 = _normal(key, 0)
            mx = -INFINITY
            for i in range(1, n + 1):
                z = _normal(key, <uint64_t>i)
                if z > mx:
                    mx = z
            ov[t] = se * z0 + sc * mx
    return out
