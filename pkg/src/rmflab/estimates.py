"""Classical number-theoretic bounds as executable oracles.

Each check computes the quantity a textbook inequality controls (lhs), the
bound's expression with implicit constant 1 (rhs), and their ratio, packaged
as a BoundReport.  Inequalities that hold unconditionally (Brun-Titchmarsh,
geometric sums, the divisor-function moment bound, Steinhaus orthogonality)
raise on violation; bounds stated only up to an unknown constant (the prime
exponential sum, the van der Corput sum) report the ratio for sweeps to
threshold.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import ResourceLimitError
from .ntcore import PrimeTable, euler_phi, tau_k
from .rmf import RmfKind, sample_values_matrix

#: Chunk size for Monte Carlo sampling of value matrices.
_MC_CHUNK = 4096


@dataclass(frozen=True)
class BoundReport:
    """One computed inequality: lhs against rhs with ratio = lhs/rhs.

    stderr carries the Monte Carlo standard error when lhs is an estimate.
    """

    lhs: float
    rhs: float
    ratio: float
    parameters: dict = field(default_factory=dict)
    stderr: float | None = None

    @staticmethod
    def build(lhs: float, rhs: float, parameters: dict, stderr: float | None = None):
        ratio = lhs / rhs if rhs != 0.0 else math.inf
        return BoundReport(
            lhs=lhs, rhs=rhs, ratio=ratio, parameters=parameters, stderr=stderr
        )


# --- exponential sums over primes ---------------------------------------------


def lambda_exp_sum(N: int, beta: float, table: PrimeTable) -> complex:
    """Sum over n <= N of Lambda(n) e(n beta), by compensated summation.

    Lambda is supported on prime powers, so the sum runs over p^k <= N with
    weight log p.
    """
    if N > table.limit:
        raise ValueError(f"N={N} exceeds table limit {table.limit}")
    if N < 2:
        return 0j
    re_terms = []
    im_terms = []
    for p in table.primes_in(1, N).tolist():
        logp = math.log(p)
        pk = p
        while pk <= N:
            phase = 2.0 * math.pi * math.fmod(pk * beta, 1.0)
            re_terms.append(logp * math.cos(phase))
            im_terms.append(logp * math.sin(phase))
            pk *= p
    return complex(math.fsum(re_terms), math.fsum(im_terms))


def davenport_report(N: int, a: int, q: int, table: PrimeTable) -> BoundReport:
    """|Sum Lambda(n) e(n a/q)| against (N q^-1/2 + N^0.8 + N^0.5 q^0.5) log^4 N.

    The bound's implicit constant is unknown, so nothing is asserted here;
    sweeps compare the ratio against a configured threshold.
    """
    if q < 1:
        raise ValueError(f"denominator must be positive, got {q}")
    if math.gcd(a, q) != 1:
        raise ValueError(f"numerator and denominator must be coprime, got {a}/{q}")
    lhs = abs(lambda_exp_sum(N, a / q, table))
    rhs = (N / math.sqrt(q) + N**0.8 + math.sqrt(N) * math.sqrt(q)) * math.log(N) ** 4
    return BoundReport.build(lhs, rhs, {"N": N, "a": a, "q": q, "beta": a / q})


def vdc_report(M: int, Mprime: int, theta: float) -> BoundReport:
    """|Sum_{M' <= n <= 2M} e(theta/(n+1))| against |theta|^1/2 M^-1/2 + M^3/2 |theta|^-1/2.

    The phase theta/(n+1) has derivative of size |theta|/M^2 on the range, the
    regime where the second-derivative test applies; the bound is nontrivial
    only for M <= |theta| <= M^3.  Implicit constant unknown; ratio reported.
    """
    if M < 1:
        raise ValueError(f"M must be positive, got {M}")
    if not M <= Mprime <= 2 * M:
        raise ValueError(f"starting index {Mprime} must lie in [{M}, {2 * M}]")
    if theta == 0.0:
        raise ValueError("theta must be nonzero")
    re_terms = []
    im_terms = []
    for n in range(Mprime, 2 * M + 1):
        phase = 2.0 * math.pi * math.fmod(theta / (n + 1), 1.0)
        re_terms.append(math.cos(phase))
        im_terms.append(math.sin(phase))
    lhs = abs(complex(math.fsum(re_terms), math.fsum(im_terms)))
    at = abs(theta)
    rhs = math.sqrt(at) / math.sqrt(M) + M**1.5 / math.sqrt(at)
    return BoundReport.build(lhs, rhs, {"M": M, "Mprime": Mprime, "theta": theta})


def brun_titchmarsh_report(
    x: float, y: float, q: int, a: int, table: PrimeTable
) -> BoundReport:
    """Primes in (x, x+y] congruent to a mod q, against 2y/(phi(q) log(y/q)).

    This inequality is unconditional for y > q, so a violation raises.
    """
    if x <= 2:
        raise ValueError(f"interval start must exceed 2, got {x}")
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if math.gcd(a, q) != 1:
        raise ValueError(f"residue and modulus must be coprime, got {a} mod {q}")
    if y <= q:
        raise ValueError(f"interval length {y} must exceed the modulus {q}")
    if x + y > table.limit:
        raise ValueError(f"interval end {x + y} exceeds table limit {table.limit}")
    primes = table.primes_in(math.floor(x), math.floor(x + y))
    lhs = float(np.count_nonzero(primes % q == a % q))
    rhs = 2.0 * y / (euler_phi(q, table) * math.log(y / q))
    report = BoundReport.build(lhs, rhs, {"x": x, "y": y, "q": q, "a": a})
    if lhs > rhs:
        raise RuntimeError(
            f"prime count {lhs} exceeded the sieve bound {rhs} at {report.parameters}"
        )
    return report


# --- moment and orthogonality checks -------------------------------------------


def _trial_seeds(seed: int, start: int, count: int) -> np.ndarray:
    return rng.hash_counters(seed, np.arange(start, start + count, dtype=np.uint64))


def moment_bound_check(
    coeffs,
    k: float,
    kind: RmfKind,
    trials: int,
    seed: int,
    table: PrimeTable,
) -> BoundReport:
    """Monte Carlo E|Sum a_n f(n)|^(2k) against (Sum tau_{2 ceil(k) - 1}(n) |a_n|^2)^k.

    coeffs[i] is the coefficient of n = i + 1.  Raises if the estimate exceeds
    the bound by more than three standard errors; estimating moments beyond
    k = 4 is noise-dominated and rejected.
    """
    if k < 1:
        raise ValueError(f"moment order must be at least 1, got {k}")
    if k > 4:
        raise ValueError(f"moment order {k} too noisy to estimate; use k <= 4")
    if trials < 10**3:
        raise ValueError(f"need at least 1000 trials for a stable mean, got {trials}")
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    L = len(coeffs)
    if L < 1:
        raise ValueError("need at least one coefficient")
    tau_order = 2 * math.ceil(k) - 1
    weights = np.array([tau_k(n, tau_order, table) for n in range(1, L + 1)])
    rhs = float(np.sum(weights * np.abs(coeffs) ** 2)) ** k
    powers = np.empty(trials)
    done = 0
    while done < trials:
        batch = min(_MC_CHUNK, trials - done)
        seeds = _trial_seeds(seed, done, batch)
        matrix = sample_values_matrix(kind, L, seeds, table)
        sums = matrix[:, 1:] @ coeffs
        powers[done : done + batch] = np.abs(sums) ** (2.0 * k)
        done += batch
    lhs = float(powers.mean())
    stderr = float(powers.std(ddof=1)) / math.sqrt(trials)
    report = BoundReport.build(
        lhs, rhs, {"k": k, "kind": kind.value, "trials": trials, "seed": seed, "terms": L},
        stderr=stderr,
    )
    if lhs - 3.0 * stderr > rhs:
        raise RuntimeError(
            f"moment estimate {lhs} (stderr {stderr}) exceeded the bound {rhs}"
        )
    return report


class Pairing(enum.Enum):
    """Which product equation the quadruple count solves."""

    M1M4_EQ_M2M3 = "m1m4_eq_m2m3"
    M1M3_EQ_M2M4 = "m1m3_eq_m2m4"


def _product_pair_counts(r: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for x in range(1, r + 1):
        for y in range(1, r + 1):
            counts[x * y] = counts.get(x * y, 0) + 1
    return counts


def quadruple_count(r: int, pairing: Pairing) -> int:
    """#{(m1,m2,m3,m4) in [1,r]^4 : m1 != m2, m3 != m4, pairing equation}.

    Swapping the last two coordinates is a bijection between the two pairings'
    solution sets (it preserves both inequations), so the count is the same
    function of r either way: with C(P) = #{(x,y): xy = P}, the unconstrained
    solutions number Sum C(P)^2, and the excluded ones (m1 = m2 forces
    m3 = m4 and conversely) are exactly the r^2 pairs (m, m, m', m').
    """
    if r < 1:
        raise ValueError(f"range must be positive, got {r}")
    if r > 512:
        raise ResourceLimitError(f"quadruple count at r={r} exceeds the r <= 512 cap")
    Pairing(pairing)
    counts = _product_pair_counts(r)
    return sum(c * c for c in counts.values()) - r * r


def quadruple_count_vw(r: int, pairing: Pairing) -> int:
    """The same count through the four-parameter product factorization.

    Solutions of m1 m3 = m2 m4 arise as m1 = a1 a3, m2 = a1 a4, m3 = a2 a4,
    m4 = a2 a3 (last two swapped for the other pairing).  The map is not
    injective, so image tuples are deduplicated into a set before counting.
    """
    if r < 1:
        raise ValueError(f"range must be positive, got {r}")
    if r > 512:
        raise ResourceLimitError(f"quadruple count at r={r} exceeds the r <= 512 cap")
    pairing = Pairing(pairing)
    swap = pairing is Pairing.M1M4_EQ_M2M3
    seen = set()
    for a1 in range(1, r + 1):
        for a2 in range(1, r + 1):
            bound = min(r // a1, r // a2)
            for a3 in range(1, bound + 1):
                for a4 in range(1, bound + 1):
                    if a3 == a4:
                        continue
                    m1, m2 = a1 * a3, a1 * a4
                    m3, m4 = a2 * a4, a2 * a3
                    if swap:
                        m3, m4 = m4, m3
                    seen.add((m1, m2, m3, m4))
    return len(seen)


def orthogonality_mc(
    r: int, trials: int, seed: int, table: PrimeTable
) -> BoundReport:
    """Monte Carlo check of E Sum_{m1!=m2, m3!=m4} f(m1) f(m2)~ f(m3)~ f(m4)
    = #{m1 m4 = m2 m3} for Steinhaus f over [1, r].

    The estimator per sample is S * conj(S) for S = |Sum f(m)|^2 - Sum |f(m)|^2,
    which is real, so the imaginary part is identically zero.  Raises when the
    mean strays more than four standard errors from the exact count.
    """
    if r < 1:
        raise ValueError(f"range must be positive, got {r}")
    if r > 128:
        raise ResourceLimitError(f"orthogonality check at r={r} exceeds the r <= 128 cap")
    if trials < 2:
        raise ValueError(f"need at least 2 trials, got {trials}")
    exact = float(quadruple_count(r, Pairing.M1M4_EQ_M2M3))
    estimates = np.empty(trials)
    done = 0
    while done < trials:
        batch = min(_MC_CHUNK, trials - done)
        seeds = _trial_seeds(seed, done, batch)
        matrix = sample_values_matrix(RmfKind.STEINHAUS, r, seeds, table)[:, 1:]
        totals = matrix.sum(axis=1)
        s = np.abs(totals) ** 2 - np.sum(np.abs(matrix) ** 2, axis=1)
        estimates[done : done + batch] = s * s
        done += batch
    lhs = float(estimates.mean())
    stderr = float(estimates.std(ddof=1)) / math.sqrt(trials)
    report = BoundReport.build(
        lhs, exact, {"r": r, "trials": trials, "seed": seed}, stderr=stderr
    )
    if abs(lhs - exact) > 4.0 * stderr:
        raise RuntimeError(
            f"orthogonality estimate {lhs} (stderr {stderr}) is more than "
            f"4 standard errors from the exact count {exact}"
        )
    return report


def geometric_sum_report(L: int, alpha: float) -> BoundReport:
    """|Sum_{k=0}^{L-1} e(k alpha)| against min(L, 1/(2 ||alpha||)).

    ||alpha|| is the circle distance to the nearest integer; the bound is L
    when that distance vanishes.  Unconditional, so a violation raises.
    """
    if L < 1:
        raise ValueError(f"length must be positive, got {L}")
    re_terms = []
    im_terms = []
    for kk in range(L):
        phase = 2.0 * math.pi * math.fmod(kk * alpha, 1.0)
        re_terms.append(math.cos(phase))
        im_terms.append(math.sin(phase))
    lhs = abs(complex(math.fsum(re_terms), math.fsum(im_terms)))
    dist = abs(alpha - round(alpha))
    rhs = float(L) if dist == 0.0 else min(float(L), 1.0 / (2.0 * dist))
    report = BoundReport.build(lhs, rhs, {"L": L, "alpha": alpha})
    if lhs > rhs * (1.0 + 1e-9) + 1e-9:
        raise RuntimeError(f"geometric sum {lhs} exceeded its bound {rhs} at {report.parameters}")
    return report
