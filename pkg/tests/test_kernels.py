"""Kernel backends: fallback/compiled equivalence and direct oracles."""

import cmath
import math

import numpy as np
import pytest

import rmflab._kernels as kernels
from rmflab import rng
from rmflab._kernels import pykernels

BACKENDS = kernels.available_backends()
both = pytest.mark.skipif(
    "c" not in BACKENDS, reason="compiled kernel extension not built"
)


def _steinhaus_stub(limit, seed):
    phases = rng.uniforms_at(seed, np.arange(limit + 1, dtype=np.uint64))
    return np.exp(2j * np.pi * phases)


# --- backend plumbing -------------------------------------------------------


def test_selected_backend_is_exposed():
    assert kernels.BACKEND in ("c", "py")
    assert kernels.BACKEND in BACKENDS
    assert kernels.backend_module("py") is pykernels
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


# --- sieve kernels -----------------------------------------------------------


@pytest.mark.parametrize("backend", BACKENDS)
def test_sieve_spf_matches_trial_division(backend):
    impl = kernels.backend_module(backend)
    spf = impl.sieve_spf(500)
    assert spf.dtype == np.int32
    for n in range(2, 501):
        smallest = next(d for d in range(2, n + 1) if n % d == 0)
        assert int(spf[n]) == smallest
    assert int(spf[0]) == 0 and int(spf[1]) == 1
    with pytest.raises(ValueError):
        impl.sieve_spf(1)


@both
def test_sieve_tables_bitwise_equal_across_backends():
    cmod = kernels.backend_module("c")
    for limit in (2, 3, 97, 10**4, 10**6):
        sc = cmod.sieve_spf(limit)
        sp = pykernels.sieve_spf(limit)
        assert np.array_equal(sc, sp)
        assert np.array_equal(cmod.lpf_from_spf(sc), pykernels.lpf_from_spf(sp))


@pytest.mark.parametrize("backend", BACKENDS)
def test_lpf_from_spf_small(backend):
    impl = kernels.backend_module(backend)
    lpf = impl.lpf_from_spf(impl.sieve_spf(100))
    # independent oracle: trial division from above
    for n in range(2, 101):
        largest = next(d for d in range(n, 1, -1) if n % d == 0 and
                       all(d % q for q in range(2, d)))
        assert int(lpf[n]) == largest
    assert int(lpf[1]) == 1


# --- multiplicative extension ------------------------------------------------


@pytest.mark.parametrize("backend", BACKENDS)
def test_extend_values_multiplicative_recurrence(backend):
    impl = kernels.backend_module(backend)
    N = 512
    spf = impl.sieve_spf(N)
    fp = _steinhaus_stub(N, 7)
    vals = impl.extend_values(fp, spf, N, False)
    assert vals[0] == 0 and vals[1] == 1
    # complete multiplicativity against an independent per-n product
    for n in range(2, N + 1):
        m, prod = n, 1 + 0j
        while m > 1:
            p = int(spf[m])
            prod *= complex(fp[p])
            m //= p
        assert abs(vals[n] - prod) < 1e-12


@pytest.mark.parametrize("backend", BACKENDS)
def test_extend_values_rademacher_zero_rule(backend):
    impl = kernels.backend_module(backend)
    N = 1000
    spf = impl.sieve_spf(N)
    signs = rng.signs_at(3, np.arange(N + 1, dtype=np.uint64)).astype(np.complex128)
    vals = impl.extend_values(signs, spf, N, True)
    for n in range(1, N + 1):
        squarefree = all(n % (p * p) for p in range(2, math.isqrt(n) + 1))
        if squarefree:
            assert vals[n] in (1 + 0j, -1 + 0j)
        else:
            assert vals[n] == 0


@both
def test_extension_bitwise_equal_across_backends():
    cmod = kernels.backend_module("c")
    N = 10**5
    spf = cmod.sieve_spf(N)
    fp = _steinhaus_stub(N, 12345)
    assert np.array_equal(
        cmod.extend_values(fp, spf, N, False), pykernels.extend_values(fp, spf, N, False)
    )
    signs = rng.signs_at(999, np.arange(N + 1, dtype=np.uint64)).astype(np.complex128)
    assert np.array_equal(
        cmod.extend_values(signs, spf, N, True), pykernels.extend_values(signs, spf, N, True)
    )


@pytest.mark.parametrize("backend", BACKENDS)
def test_extend_values_requires_covering_tables(backend):
    impl = kernels.backend_module(backend)
    spf = impl.sieve_spf(100)
    fp = np.ones(50, dtype=np.complex128)
    with pytest.raises(ValueError):
        impl.extend_values(fp, spf, 100, False)


# --- phase-sum kernels --------------------------------------------------------


@pytest.mark.parametrize("backend", BACKENDS)
def test_eval_points_sum_against_cmath_oracle(backend):
    impl = kernels.backend_module(backend)
    ns = np.array([1, 2, 3, 5, 8, 13, 700], dtype=np.int64)
    coeffs = _steinhaus_stub(6, 21)[:7]
    thetas = np.array([0.0, 0.25, 1 / 3, 0.918273645])
    got = impl.eval_points_sum(ns, coeffs, thetas)
    for i, theta in enumerate(thetas):
        want = sum(
            complex(c) * cmath.exp(2j * cmath.pi * int(n) * theta)
            for n, c in zip(ns, coeffs)
        )
        assert abs(got[i] - want) < 1e-10


@both
def test_eval_points_sum_cross_backend_tolerance():
    cmod = kernels.backend_module("c")
    ns = np.arange(1, 4097, dtype=np.int64)
    coeffs = _steinhaus_stub(4096, 42)[1:]
    thetas = rng.uniforms(43, 0, 25)
    a = cmod.eval_points_sum(ns, coeffs, thetas)
    b = pykernels.eval_points_sum(ns, coeffs, thetas)
    assert np.max(np.abs(a - b)) < 1e-12 * max(1.0, float(np.max(np.abs(b)))) * 100


@pytest.mark.parametrize("backend", BACKENDS)
def test_inner_sums_against_direct_oracle(backend):
    impl = kernels.backend_module(backend)
    primes = np.array([11, 13, 17, 19, 23, 29], dtype=np.int64)
    lens = np.array([9, 7, 5, 5, 4, 3], dtype=np.int64)
    fvals = _steinhaus_stub(9, 77)
    theta = 0.37219
    got = impl.inner_sums(primes, lens, fvals, theta)
    for k, (p, L) in enumerate(zip(primes, lens)):
        want = sum(
            complex(fvals[m]) * cmath.exp(2j * cmath.pi * m * int(p) * theta)
            for m in range(1, int(L) + 1)
        )
        assert abs(got[k] - want) < 1e-10


@pytest.mark.parametrize("backend", BACKENDS)
def test_inner_sums_validation(backend):
    impl = kernels.backend_module(backend)
    fv = np.ones(4, dtype=np.complex128)
    with pytest.raises(ValueError):
        impl.inner_sums(
            np.array([2, 3], dtype=np.int64), np.array([1], dtype=np.int64), fv, 0.1
        )
    with pytest.raises(ValueError):
        impl.inner_sums(
            np.array([2], dtype=np.int64), np.array([0], dtype=np.int64), fv, 0.1
        )
    with pytest.raises(ValueError):
        impl.inner_sums(
            np.array([2], dtype=np.int64), np.array([9], dtype=np.int64), fv, 0.1
        )
    empty = impl.inner_sums(
        np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64), fv, 0.1
    )
    assert empty.size == 0


@both
def test_inner_sums_cross_backend_tolerance():
    cmod = kernels.backend_module("c")
    primes = np.array(
        [p for p in range(2, 2000) if all(p % d for d in range(2, math.isqrt(p) + 1))],
        dtype=np.int64,
    )
    lens = np.maximum(1, 4000 // primes)
    fvals = _steinhaus_stub(int(lens.max()), 5)
    for theta in (0.0, 0.1, 0.37219, 0.99):
        a = cmod.inner_sums(primes, lens, fvals, theta)
        b = pykernels.inner_sums(primes, lens, fvals, theta)
        assert np.max(np.abs(a - b)) < 1e-11


# --- Gaussian maxima ----------------------------------------------------------


@pytest.mark.parametrize("backend", BACKENDS)
def test_gauss_max_trials_deterministic_and_shaped(backend):
    impl = kernels.backend_module(backend)
    a = impl.gauss_max_trials(100, 1e-3, 64, 99)
    b = impl.gauss_max_trials(100, 1e-3, 64, 99)
    assert np.array_equal(a, b)
    assert a.shape == (64,)
    assert np.all(np.isfinite(a))
    with pytest.raises(ValueError):
        impl.gauss_max_trials(0, 0.0, 10, 1)
    with pytest.raises(ValueError):
        impl.gauss_max_trials(10, 1.5, 10, 1)


@pytest.mark.parametrize("backend", BACKENDS)
def test_gauss_max_trials_independent_case_closed_form(backend):
    # for eps=0, P(max <= t) = Phi(t)^n exactly
    impl = kernels.backend_module(backend)
    n, trials, t = 4, 20000, 1.0
    maxima = impl.gauss_max_trials(n, 0.0, trials, 31337)
    phi = 0.5 * (1.0 + math.erf(t / math.sqrt(2.0)))
    want = phi**n
    got = float(np.mean(maxima <= t))
    sigma = math.sqrt(want * (1 - want) / trials)
    assert abs(got - want) < 4 * sigma


@both
def test_gauss_max_cross_backend_tolerance():
    cmod = kernels.backend_module("c")
    a = cmod.gauss_max_trials(1000, 1e-3, 50, 2024)
    b = pykernels.gauss_max_trials(1000, 1e-3, 50, 2024)
    assert np.max(np.abs(a - b)) < 1e-11
