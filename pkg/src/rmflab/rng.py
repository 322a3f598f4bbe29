"""Counter-based pseudo-randomness.

Every random quantity in the package is a pure function of a 64-bit key and an
integer counter, via the splitmix64 output function: draw i from key k is

    h = finalize((k + (i + 1) * GOLDEN) mod 2^64)

with finalize the standard splitmix64 mixing rounds.  This makes sampling
order-independent (draws can be produced in any order or in parallel and
always agree bitwise) and lets a value assigned to prime p be keyed directly
by p, so that resampling above a cutoff or splitting work across threads
cannot perturb unrelated draws.

The scalar and vectorized paths below perform identical integer arithmetic
and return bitwise-identical streams.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_U_GOLDEN = np.uint64(GOLDEN)
_U_MIX1 = np.uint64(_MIX1)
_U_MIX2 = np.uint64(_MIX2)
_U30 = np.uint64(30)
_U27 = np.uint64(27)
_U31 = np.uint64(31)
_U11 = np.uint64(11)
_U1 = np.uint64(1)
_TWO53 = 2.0 ** -53


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def counter_hash(key: int, counter: int) -> int:
    """Draw `counter` from stream `key` as a 64-bit hash."""
    return mix64((key + ((counter + 1) * GOLDEN)) & MASK64)


def derive_seed(master: int, *parts: int) -> int:
    """Deterministically split a master seed along integer coordinates.

    Used to key trials as derive_seed(master, N, trial); collisions across a
    campaign's (N, trial) grid are checked in the tests.
    """
    key = master & MASK64
    for part in parts:
        key = counter_hash(key, part)
    return key


def uniform01(key: int, counter: int) -> float:
    """Scalar uniform draw in [0, 1)."""
    return (counter_hash(key, counter) >> 11) * _TWO53


def _hash_array(key: int, counters: np.ndarray) -> np.ndarray:
    """Vectorized counter_hash over a uint64 counter array."""
    z = (np.uint64(key & MASK64) + (counters + _U1) * _U_GOLDEN).astype(np.uint64)
    z = (z ^ (z >> _U30)) * _U_MIX1
    z = (z ^ (z >> _U27)) * _U_MIX2
    return z ^ (z >> _U31)


def hash_counters(key: int, counters: np.ndarray) -> np.ndarray:
    """Vectorized draws (uint64) for an array of counters."""
    return _hash_array(key, np.asarray(counters, dtype=np.uint64))


def uniforms(key: int, start: int, count: int) -> np.ndarray:
    """Vector of uniforms in [0, 1) for counters start..start+count-1."""
    counters = np.arange(start, start + count, dtype=np.uint64)
    return (_hash_array(key, counters) >> _U11) * _TWO53


def uniforms_at(key: int, counters: np.ndarray) -> np.ndarray:
    """Uniforms in [0, 1) at explicit counter positions (e.g. keyed by prime)."""
    return (hash_counters(key, counters) >> _U11) * _TWO53


def signs_at(key: int, counters: np.ndarray) -> np.ndarray:
    """Fair +-1 draws at explicit counter positions, as float64."""
    bits = hash_counters(key, counters) >> np.uint64(63)
    return 1.0 - 2.0 * bits.astype(np.float64)


def normals(key: int, start: int, count: int) -> np.ndarray:
    """Standard normal draws via Box-Muller on counter pairs.

    Draw j uses counters (start + 2j, start + 2j + 1); u1 is shifted into
    (0, 1] so the log never sees zero.
    """
    counters = np.arange(start, start + 2 * count, dtype=np.uint64)
    h = _hash_array(key, counters)
    u1 = ((h[0::2] >> _U11) + _U1) * _TWO53
    u2 = (h[1::2] >> _U11) * _TWO53
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


def sample_indices(key: int, population: int, count: int) -> np.ndarray:
    """`count` distinct indices in [0, population), sorted ascending.

    Rejection sampling on counter draws; deterministic in (key, population,
    count).  Requires count <= population.
    """
    if count > population:
        raise ValueError(f"cannot draw {count} distinct indices from {population}")
    if count == population:
        return np.arange(population, dtype=np.int64)
    chosen: set[int] = set()
    counter = 0
    while len(chosen) < count:
        need = count - len(chosen)
        block = hash_counters(key, np.arange(counter, counter + 2 * need, dtype=np.uint64))
        counter += 2 * need
        for h in block % np.uint64(population):
            if len(chosen) == count:
                break
            chosen.add(int(h))
    return np.array(sorted(chosen), dtype=np.int64)
