"""Sieves, factorization, arithmetic functions, Ramanujan sums, power splits."""

import math
from fractions import Fraction

import numpy as np
import pytest

from rmflab import ntcore
from rmflab.errors import ResourceLimitError


# --- prime table -----------------------------------------------------------


def test_small_prime_lists():
    t = ntcore.build_prime_table(10)
    assert t.primes.tolist() == [2, 3, 5, 7]
    t2 = ntcore.build_prime_table(2)
    assert t2.primes.tolist() == [2]


def test_prime_count_at_one_million(table_1m):
    # independent oracle: trial-division sieve enumerated 78498 primes <= 1e6
    assert table_1m.prime_count(10**6) == 78498
    assert table_1m.prime_count(1) == 0
    assert table_1m.prime_count(2) == 1


def test_spf_invariants(table_10k):
    spf = table_10k.spf
    for n in range(2, 10**4 + 1):
        p = int(spf[n])
        assert n % p == 0
        assert int(spf[p]) == p  # spf values are prime
    primes_from_spf = [n for n in range(2, 10**4 + 1) if int(spf[n]) == n]
    assert primes_from_spf == table_10k.primes.tolist()


def test_listed_primes_have_no_small_divisors(table_10k):
    for p in table_10k.primes.tolist():
        assert all(p % q != 0 for q in range(2, math.isqrt(p) + 1))


def test_primes_in_half_open_range(table_1k):
    assert table_1k.primes_in(10, 20).tolist() == [11, 13, 17, 19]
    assert table_1k.primes_in(11, 13).tolist() == [13]  # lo exclusive, hi inclusive
    assert table_1k.primes_in(500, 400).size == 0
    with pytest.raises(ValueError):
        table_1k.primes_in(0, 10**6)


def test_table_arrays_are_read_only(table_1k):
    for arr in (table_1k.primes, table_1k.spf, table_1k.lpf):
        with pytest.raises(ValueError):
            arr[0] = 0


def test_build_errors():
    with pytest.raises(ValueError):
        ntcore.build_prime_table(1)
    with pytest.raises(ResourceLimitError):
        ntcore.build_prime_table(10**6, memory_cap=10**6)


# --- factorization ---------------------------------------------------------


def test_factorize_examples(table_1k):
    assert ntcore.factorize(1, table_1k).factors == ()
    assert ntcore.factorize(12, table_1k).factors == ((2, 2), (3, 1))
    assert ntcore.factorize(97, table_1k).factors == ((97, 1),)


def test_factorize_reconstructs_all_to_ten_thousand(table_10k):
    for n in range(1, 10**4 + 1):
        prod = 1
        prev_p = 0
        for p, e in ntcore.factorize(n, table_10k).factors:
            assert e >= 1 and p > prev_p
            prev_p = p
            prod *= p**e
        assert prod == n


def test_factorize_out_of_range(table_1k):
    with pytest.raises(ValueError):
        ntcore.factorize(1001, table_1k)
    with pytest.raises(ValueError):
        ntcore.factorize(0, table_1k)


def test_largest_prime_factor(table_1k):
    assert ntcore.largest_prime_factor(12, table_1k) == 3
    assert ntcore.largest_prime_factor(97, table_1k) == 97
    assert ntcore.largest_prime_factor(1, table_1k) == 1


def test_lpf_table_against_factorize(table_10k):
    for n in range(2, 10**4 + 1):
        assert int(table_10k.lpf[n]) == ntcore.factorize(n, table_10k).factors[-1][0]
    assert int(table_10k.lpf[1]) == 1


# --- arithmetic functions --------------------------------------------------


def test_tau_k_examples(table_1k):
    # independent oracle: recursive enumeration of ordered factorizations
    assert ntcore.tau_k(1, 7, table_1k) == 1
    assert ntcore.tau_k(4, 3, table_1k) == 6
    assert ntcore.tau_k(6, 2, table_1k) == 4
    assert ntcore.tau_k(12, 2, table_1k) == 6
    with pytest.raises(ValueError):
        ntcore.tau_k(6, 0, table_1k)


def test_tau_k_multiplicative_on_coprime_arguments(table_10k):
    for k in range(1, 6):
        for m in range(1, 101):
            for n in range(1, 101):
                if math.gcd(m, n) == 1:
                    assert ntcore.tau_k(m * n, k, table_10k) == ntcore.tau_k(
                        m, k, table_10k
                    ) * ntcore.tau_k(n, k, table_10k)


def test_tau_summatory_linear_in_n_log_power(table_100k):
    # ratio sum(tau_k)/(N log^{k-1} N) stays bounded; observed maxima ~1.03
    # (k=2) and ~0.62 (k=3) on this sweep.
    for k, cap in ((2, 1.1), (3, 0.7)):
        ratios = []
        total = 0
        checkpoints = {10**3, 10**4, 10**5}
        for n in range(1, 10**5 + 1):
            total += ntcore.tau_k(n, k, table_100k)
            if n in checkpoints:
                ratios.append(total / (n * math.log(n) ** (k - 1)))
        assert max(ratios) <= cap, f"tau_{k} summatory ratios {ratios}"


def test_euler_phi_examples(table_1k):
    assert ntcore.euler_phi(1, table_1k) == 1
    assert ntcore.euler_phi(97, table_1k) == 96
    assert ntcore.euler_phi(10, table_1k) == 4


def test_euler_phi_brute_force_to_500(table_1k):
    for q in range(1, 501):
        brute = sum(1 for b in range(1, q + 1) if math.gcd(b, q) == 1)
        assert ntcore.euler_phi(q, table_1k) == brute


def test_von_mangoldt(table_1k):
    assert ntcore.von_mangoldt(8, table_1k) == pytest.approx(math.log(2), rel=1e-15)
    assert ntcore.von_mangoldt(6, table_1k) == 0.0
    assert ntcore.von_mangoldt(7, table_1k) == pytest.approx(math.log(7), rel=1e-15)
    assert ntcore.von_mangoldt(1, table_1k) == 0.0
    assert ntcore.von_mangoldt(625, table_1k) == pytest.approx(math.log(5), rel=1e-15)


# --- Ramanujan sums --------------------------------------------------------


def test_ramanujan_examples(table_1k):
    assert ntcore.ramanujan_sum(1, 17) == 1.0
    assert ntcore.ramanujan_sum(4, 2) == pytest.approx(-2.0, abs=1e-12)
    for q in (1, 2, 6, 30, 97):
        assert ntcore.ramanujan_sum(q, 0) == pytest.approx(
            ntcore.euler_phi(q, table_1k), abs=1e-10
        )


def test_ramanujan_against_complex_oracle_and_identity(table_1k):
    # independent oracle: complex exponential sum, plus the mu*phi identity
    import cmath

    def mobius(n):
        fac = ntcore.factorize(n, table_1k).factors
        if any(e > 1 for _, e in fac):
            return 0
        return -1 if len(fac) % 2 else 1

    for q in range(1, 60):
        for n in range(-15, 16):
            direct = sum(
                cmath.exp(2j * cmath.pi * b * n / q)
                for b in range(1, q + 1)
                if math.gcd(b, q) == 1
            )
            assert abs(direct.imag) < 1e-10
            got = ntcore.ramanujan_sum(q, n)
            assert got == pytest.approx(direct.real, abs=1e-9)
            d = math.gcd(abs(n), q) if n != 0 else q
            identity = mobius(q // d) * ntcore.euler_phi(q, table_1k) // ntcore.euler_phi(
                q // d, table_1k
            )
            assert got == pytest.approx(identity, abs=1e-9)


def test_ramanujan_gcd_bound_window(table_1k):
    for q in range(1, 81):
        for n in range(-80, 81):
            bound = math.gcd(abs(n), q) if n != 0 else q
            assert abs(ntcore.ramanujan_sum(q, n)) <= bound + 1e-9


# --- reciprocal prime tails ------------------------------------------------


def test_mertens_tail_small_cases(table_1k):
    assert ntcore.mertens_tail(10, 6 / 7, table_1k) == 0.0
    # primes in (10, 100]: direct fsum oracle
    expect = math.fsum(
        1.0 / p
        for p in [11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
    )
    assert ntcore.mertens_tail(100, 0.5, table_1k) == expect


def test_mertens_tail_approaches_log_inverse_alpha(table_1m):
    # independent oracle: full fsum over the trial-division prime list gave
    # 0.15392269190208016, within 0.0003 of log(7/6)
    got = ntcore.mertens_tail(10**6, 6 / 7, table_1m)
    assert got == 0.15392269190208016
    assert abs(got - math.log(7 / 6)) < 0.02


def test_mertens_tail_domain(table_1k):
    with pytest.raises(ValueError):
        ntcore.mertens_tail(100, 1.5, table_1k)
    with pytest.raises(ValueError):
        ntcore.mertens_tail(10**7, 0.5, table_1k)


# --- exact power thresholds -------------------------------------------------


def test_power_floor_exact_values():
    # independent oracle: integer k-th root search on n^a
    assert ntcore.power_floor(256, 0.5) == 16
    assert ntcore.power_floor(100, 0.8) == 39
    assert ntcore.power_floor(10**5, 0.8) == 10**4  # exact power boundary
    assert ntcore.power_floor(10**6, 6 / 7) == 138949
    assert ntcore.power_floor(65536, 6 / 7) == 13440
    assert ntcore.power_floor(100, 6 / 7) == 51
    assert ntcore.power_floor(10, 6 / 7) == 7
    assert ntcore.power_floor(1, 0.5) == 1


def test_power_ceil_boundary_behaviour():
    assert ntcore.power_ceil(10**5, 0.8) == 10**4  # boundary hit exactly
    assert ntcore.power_ceil(100, 0.8) == 40
    assert ntcore.power_ceil(256, 0.5) == 16
    assert ntcore.power_ceil(257, 0.5) == 17


def test_power_floor_certified_against_big_integer_comparison():
    for n in (7, 97, 4096, 10**5, 2**20):
        for alpha in (Fraction(1, 8), Fraction(1, 5), Fraction(4, 5), Fraction(6, 7)):
            a, b = alpha.numerator, alpha.denominator
            k = ntcore.power_floor(n, float(alpha))
            assert k**b <= n**a < (k + 1) ** b
            c = ntcore.power_ceil(n, float(alpha))
            assert (c - 1) ** b < n**a <= c**b


def test_power_domain_errors():
    with pytest.raises(ValueError):
        ntcore.power_floor(0, 0.5)
    with pytest.raises(ValueError):
        ntcore.power_floor(10, 0.0)
    with pytest.raises(ValueError):
        ntcore.power_floor(10, 1.0)


# --- squarefree counting ----------------------------------------------------


def test_squarefree_count_small(table_1k):
    assert ntcore.squarefree_count(0, table_1k) == 0
    assert ntcore.squarefree_count(1, table_1k) == 1
    assert ntcore.squarefree_count(4, table_1k) == 3
    assert ntcore.squarefree_count(10, table_1k) == 7
    assert ntcore.squarefree_count(100, table_1k) == 61
    assert ntcore.squarefree_count(1000, table_1k) == 608


def test_squarefree_count_moebius_identity(table_10k):
    # independent oracle: Q(x) = sum_{d <= sqrt(x)} mu(d) * floor(x / d^2)
    def mobius(n):
        fac = ntcore.factorize(n, table_10k).factors
        if any(e > 1 for _, e in fac):
            return 0
        return -1 if len(fac) % 2 else 1

    for x in (17, 256, 999, 5000, 10**4):
        expect = sum(
            mobius(d) * (x // (d * d)) for d in range(1, math.isqrt(x) + 1)
        )
        assert ntcore.squarefree_count(x, table_10k) == expect
