"""Random multiplicative function sampling and extension.

Two models: Rademacher (independent fair signs at primes, zero at non-
squarefree integers) and Steinhaus (independent uniform unit-circle values
at primes, completely multiplicative extension).

The value at a prime p is a pure function of (seed, p) through the
counter-based generator, so draws are independent of enumeration order,
parallel generation is reproducible, and resampling the primes above a
cutoff leaves every smaller prime's value untouched — the conditioning
operation the variance experiments rely on.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass

import numpy as np

from . import _kernels, rng
from .ntcore import PrimeTable


class RmfKind(str, enum.Enum):
    """The two random models: fair signs vs uniform unit-circle phases."""

    RADEMACHER = "rademacher"
    STEINHAUS = "steinhaus"

    @property
    def is_rademacher(self) -> bool:
        return self is RmfKind.RADEMACHER


@dataclass(frozen=True)
class PrimeAssignment:
    """Values f(p) at every prime p <= limit, plus the seed that drew them.

    `values` is a read-only complex array indexed directly by p (entries at
    non-prime indices are zero and meaningless).  The seed is retained so
    extensions can stamp their provenance.
    """

    kind: RmfKind
    limit: int
    seed: int
    values: np.ndarray  # complex128, size limit+1


@dataclass(frozen=True)
class RmfValues:
    """One realization f(1..N) plus the generating prime assignment.

    `values[n]` holds f(n) for 0 <= n <= N with values[0] = 0 unused and
    f(1) = 1.  `assignment` is None only for realizations loaded from disk
    without a sieve table to rebuild it.
    """

    kind: RmfKind
    N: int
    values: np.ndarray  # complex128, size N+1
    assignment: PrimeAssignment | None
    seed: int


def _primes_up_to(limit: int, table: PrimeTable | None) -> np.ndarray:
    if table is not None:
        if table.limit < limit:
            raise ValueError(
                f"prime table limit {table.limit} does not cover assignment limit {limit}"
            )
        return table.primes_in(1, limit)
    spf = _kernels.sieve_spf(limit)
    return np.nonzero(spf == np.arange(limit + 1, dtype=spf.dtype))[0][2:].astype(np.int64)


def _draw_prime_values(kind: RmfKind, primes: np.ndarray, seed: int, out: np.ndarray) -> None:
    counters = primes.astype(np.uint64)
    if kind.is_rademacher:
        out[primes] = rng.signs_at(seed, counters)
    else:
        out[primes] = np.exp((2j * np.pi) * rng.uniforms_at(seed, counters))


def sample_prime_assignment(
    kind: RmfKind, limit: int, seed: int, *, table: PrimeTable | None = None
) -> PrimeAssignment:
    """Independent draws f(p) at all primes p <= limit, keyed by (seed, p).

    Pass `table` to reuse an existing sieve; otherwise one is built for
    `limit`.  Steinhaus values are unit complex numbers; Rademacher values
    are exactly +-1.
    """
    if limit < 2:
        raise ValueError(f"assignment limit must be at least 2, got {limit}")
    primes = _primes_up_to(limit, table)
    values = np.zeros(limit + 1, dtype=np.complex128)
    _draw_prime_values(kind, primes, seed, values)
    values.flags.writeable = False
    return PrimeAssignment(kind=kind, limit=limit, seed=seed, values=values)


def extend(assignment: PrimeAssignment, N: int, table: PrimeTable) -> RmfValues:
    """Multiplicative extension to f(1..N), O(N) via smallest prime factors."""
    if N < 1:
        raise ValueError(f"extension length must be positive, got {N}")
    if N > assignment.limit:
        raise ValueError(f"N={N} exceeds assignment limit {assignment.limit}")
    if N > table.limit:
        raise ValueError(f"N={N} exceeds prime table limit {table.limit}")
    values = _kernels.extend_values(
        assignment.values, table.spf, N, assignment.kind.is_rademacher
    )
    values.flags.writeable = False
    return RmfValues(
        kind=assignment.kind, N=N, values=values, assignment=assignment, seed=assignment.seed
    )


def sample_values(kind: RmfKind, N: int, seed: int, table: PrimeTable) -> RmfValues:
    """Draw an assignment for primes <= N and extend it to f(1..N)."""
    assignment = sample_prime_assignment(kind, max(N, 2), seed, table=table)
    return extend(assignment, N, table)


def sample_values_matrix(
    kind: RmfKind, N: int, seeds: np.ndarray, table: PrimeTable
) -> np.ndarray:
    """f(1..N) for many seeds at once; row t equals sample_values(seeds[t]).

    Returns a (len(seeds), N+1) complex matrix whose rows are bitwise
    identical to the sequential sampler's values: the extension performs the
    same multiply per entry, vectorized across trials on separate real and
    imaginary parts.  Memory is len(seeds)*(N+1) complex entries — chunk the
    seed list when sampling large campaigns.
    """
    if N < 1:
        raise ValueError(f"extension length must be positive, got {N}")
    if N > table.limit:
        raise ValueError(f"N={N} exceeds prime table limit {table.limit}")
    seeds = np.asarray(seeds, dtype=np.uint64)
    T = len(seeds)
    limit = max(N, 2)
    primes = table.primes_in(1, limit)
    # prime draws per trial, stored transposed: rows are values, columns trials
    fpr = np.zeros((limit + 1, T), dtype=np.float64)
    fpi = np.zeros((limit + 1, T), dtype=np.float64)
    row = np.zeros(limit + 1, dtype=np.complex128)
    for t in range(T):
        row[:] = 0
        _draw_prime_values(kind, primes, int(seeds[t]), row)
        fpr[:, t] = row.real
        fpi[:, t] = row.imag
    vr = np.zeros((N + 1, T), dtype=np.float64)
    vi = np.zeros((N + 1, T), dtype=np.float64)
    vr[1, :] = 1.0
    spf = table.spf
    rademacher = kind.is_rademacher
    for n in range(2, N + 1):
        p = int(spf[n])
        m = n // p
        if rademacher and m % p == 0:
            continue
        ar, ai = fpr[p], fpi[p]
        br, bi = vr[m], vi[m]
        vr[n] = ar * br - ai * bi
        vi[n] = ar * bi + ai * br
    out = np.empty((T, N + 1), dtype=np.complex128)
    out.real = vr.T
    out.imag = vi.T
    return out


def resample_above_cutoff(
    values: RmfValues, cutoff: int, seed: int, table: PrimeTable
) -> RmfValues:
    """Fresh draws at primes p > cutoff, keeping every f(p) with p <= cutoff.

    The returned realization is re-extended multiplicatively and stamped
    with the resampling seed.
    """
    if values.assignment is None:
        raise ValueError("realization carries no prime assignment to resample")
    if not 1 <= cutoff <= values.N:
        raise ValueError(f"cutoff must lie in 1..{values.N}, got {cutoff}")
    assignment = values.assignment
    if table.limit < assignment.limit:
        raise ValueError(
            f"prime table limit {table.limit} does not cover assignment limit "
            f"{assignment.limit}"
        )
    new_vals = assignment.values.copy()
    high_primes = table.primes_in(cutoff, assignment.limit)
    _draw_prime_values(assignment.kind, high_primes, seed, new_vals)
    new_vals.flags.writeable = False
    new_assignment = PrimeAssignment(
        kind=assignment.kind, limit=assignment.limit, seed=seed, values=new_vals
    )
    out = extend(new_assignment, values.N, table)
    return out


_MAGIC = b"RMFVAL01"
_KIND_CODES = {RmfKind.RADEMACHER: 0, RmfKind.STEINHAUS: 1}
_KIND_FROM_CODE = {v: k for k, v in _KIND_CODES.items()}


def save_values(values: RmfValues, path: str) -> None:
    """Binary dump: header (kind, N, limit, seed) + values + prime assignment.

    Little-endian throughout; complex doubles as '<c16'.  The assignment
    payload makes the file self-contained, so resampled realizations (whose
    assignment is not a pure function of the stored seed) reload exactly.
    """
    if values.assignment is None:
        raise ValueError("realization carries no prime assignment to save")
    header = struct.pack(
        "<8sQQQQ",
        _MAGIC,
        _KIND_CODES[values.kind],
        values.N,
        values.assignment.limit,
        values.seed & rng.MASK64,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(values.values, dtype="<c16").tobytes())
        fh.write(np.ascontiguousarray(values.assignment.values, dtype="<c16").tobytes())


def load_values(path: str) -> RmfValues:
    """Reload a binary dump written by save_values, bit-exact."""
    with open(path, "rb") as fh:
        header = fh.read(struct.calcsize("<8sQQQQ"))
        magic, kind_code, N, limit, seed = struct.unpack("<8sQQQQ", header)
        if magic != _MAGIC:
            raise ValueError(f"not a realization dump (bad magic {magic!r})")
        if kind_code not in _KIND_FROM_CODE:
            raise ValueError(f"unknown model code {kind_code}")
        vals = np.frombuffer(fh.read(16 * (N + 1)), dtype="<c16").astype(np.complex128)
        avals = np.frombuffer(fh.read(16 * (limit + 1)), dtype="<c16").astype(np.complex128)
        if len(vals) != N + 1 or len(avals) != limit + 1:
            raise ValueError("truncated realization dump")
    kind = _KIND_FROM_CODE[kind_code]
    vals.flags.writeable = False
    avals.flags.writeable = False
    assignment = PrimeAssignment(kind=kind, limit=int(limit), seed=int(seed), values=avals)
    return RmfValues(
        kind=kind, N=int(N), values=vals, assignment=assignment, seed=int(seed)
    )
