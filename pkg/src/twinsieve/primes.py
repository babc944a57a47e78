"""Prime generation and counting on top of a segmented mod-6 wheel sieve.

Everything downstream (residue counts, ratio tables, inequality checks) treats
the sieve output here as ground truth, so the module keeps two independent
entry points: `is_prime_trial` (pure trial division, no shared state) and the
segmented sieve behind `sieve_range` / `PrimeTable`.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

DEFAULT_SEGMENT = 1 << 20  # candidates per segment; one candidate = one 6k+-1 slot
MIN_SEGMENT = 1 << 10


class CapacityError(Exception):
    """A query needs more sieving capacity than was configured."""


def is_prime_trial(a: int) -> bool:
    """Primality by trial division: a is prime iff no prime p <= sqrt(a) divides it."""
    if a < 2:
        raise ValueError(f"is_prime_trial requires a >= 2, got {a}")
    if a < 4:
        return True
    if a % 2 == 0 or a % 3 == 0:
        return False
    f = 5
    while f * f <= a:
        if a % f == 0 or a % (f + 2) == 0:
            return False
        f += 6
    return True


def _simple_sieve(limit: int) -> np.ndarray:
    """Plain byte sieve, ascending primes <= limit. Used only for base primes."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _wheel_base(hi: int) -> list[tuple[int, int, int]]:
    """(p, c1, c5) for base primes p >= 5 with p*p < hi.

    c_r is the residue class of j (mod p) for which 6j + r is a multiple of p.
    """
    out = []
    for p in _simple_sieve(math.isqrt(hi - 1) if hi > 1 else 0):
        p = int(p)
        if p < 5:
            continue
        inv6 = pow(6, -1, p)
        out.append((p, (-inv6) % p, (-5 * inv6) % p))
    return out


def _sieve_segment(lo: int, hi: int, base: list[tuple[int, int, int]]) -> np.ndarray:
    """Primes in [lo, hi) for 5 <= lo, via the two wheel classes 6j+1 and 6j+5."""
    parts = []
    for r, c_index in ((1, 1), (5, 2)):
        j0 = (lo - r + 5) // 6  # first j with 6j + r >= lo
        j1 = (hi - r + 5) // 6  # first j with 6j + r >= hi
        if j1 <= j0:
            continue
        mask = np.ones(j1 - j0, dtype=bool)
        for entry in base:
            p = entry[0]
            c = entry[c_index]
            if p * p >= hi:
                break
            # start striking at the larger of lo and p*p, then align to the class
            j = max(j0, (p * p - r + 5) // 6)
            j += (c - j) % p
            if j < j1:
                mask[j - j0 :: p] = False
        j_hits = np.flatnonzero(mask).astype(np.int64) + j0
        parts.append(6 * j_hits + r)
    if not parts:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(parts))


def _segment_task(args: tuple[int, int, int, list[tuple[int, int, int]]]):
    idx, lo, hi, base = args
    return idx, _sieve_segment(lo, hi, base)


def sieve_range(
    lo: int,
    hi: int,
    segment_size: int = DEFAULT_SEGMENT,
    workers: int = 1,
) -> np.ndarray:
    """All primes in [lo, hi], ascending, as an int64 array.

    Output is independent of segment_size and workers; segments are sieved
    independently and concatenated in order.
    """
    if lo < 2:
        raise ValueError(f"sieve_range requires lo >= 2, got {lo}")
    if hi < lo:
        raise ValueError(f"sieve_range requires hi >= lo, got lo={lo} hi={hi}")
    if segment_size < MIN_SEGMENT:
        raise ValueError(f"segment_size must be >= {MIN_SEGMENT}, got {segment_size}")
    hi_excl = hi + 1
    head = [p for p in (2, 3) if lo <= p <= hi]
    start = max(lo, 5)
    if start >= hi_excl:
        return np.asarray(head, dtype=np.int64)

    base = _wheel_base(hi_excl)
    span = 3 * segment_size  # a segment of `segment_size` candidates covers 3x integers
    bounds = list(range(start, hi_excl, span)) + [hi_excl]
    tasks = [(i, bounds[i], bounds[i + 1], base) for i in range(len(bounds) - 1)]

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(_segment_task, tasks, chunksize=1))
        parts = [results[i] for i in range(len(tasks))]
    else:
        parts = [_sieve_segment(t[1], t[2], base) for t in tasks]

    return np.concatenate([np.asarray(head, dtype=np.int64)] + parts)


@dataclass(frozen=True)
class TwinPair:
    """The twin pair (6t-1, 6t+1). The pair (3, 5) has no such t and is never
    represented by this type."""

    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"TwinPair requires t >= 1, got {self.t}")

    @property
    def low(self) -> int:
        return 6 * self.t - 1

    @property
    def high(self) -> int:
        return 6 * self.t + 1


class PrimeTable:
    """Immutable ascending table of all primes up to `limit`, 1-based (p_1 = 2).

    Construction is single-writer; afterwards the table is read-only and safe
    to share. Twin-pair indexes are derived lazily on first use.
    """

    def __init__(self, limit: int, primes: np.ndarray):
        self.limit = int(limit)
        self.primes = primes
        self._twin_uppers: np.ndarray | None = None
        self._twin_members: np.ndarray | None = None

    @classmethod
    def build(
        cls,
        limit: int,
        segment_size: int = DEFAULT_SEGMENT,
        workers: int = 1,
    ) -> "PrimeTable":
        if limit < 2:
            raise ValueError(f"PrimeTable limit must be >= 2, got {limit}")
        return cls(limit, sieve_range(2, limit, segment_size=segment_size, workers=workers))

    def __len__(self) -> int:
        return len(self.primes)

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit}, count={len(self.primes)})"

    def _check_m(self, m: int) -> None:
        if m < 0:
            raise ValueError(f"m must be >= 0, got {m}")
        if m > self.limit:
            raise CapacityError(
                f"m={m} exceeds table limit {self.limit}; rebuild with a larger limit"
            )

    def nth_prime(self, n: int) -> int:
        """p_n under the 1-based convention p_1 = 2."""
        if n < 1:
            raise ValueError(f"prime index must be >= 1, got {n}")
        if n > len(self.primes):
            raise CapacityError(
                f"p_{n} exceeds table capacity ({len(self.primes)} primes <= {self.limit})"
            )
        return int(self.primes[n - 1])

    def prime_pi(self, m: int) -> int:
        """Number of primes <= m."""
        self._check_m(m)
        return int(np.searchsorted(self.primes, m, side="right"))

    def is_prime(self, m: int) -> bool:
        if m < 2:
            return False
        self._check_m(m)
        i = int(np.searchsorted(self.primes, m))
        return i < len(self.primes) and int(self.primes[i]) == m

    @property
    def twin_uppers(self) -> np.ndarray:
        """Ascending upper members p+2 of all twin pairs within the table."""
        if self._twin_uppers is None:
            d = np.diff(self.primes)
            self._twin_uppers = self.primes[1:][d == 2]
        return self._twin_uppers

    @property
    def twin_members(self) -> np.ndarray:
        """Ascending primes that belong to at least one twin pair."""
        if self._twin_members is None:
            uppers = self.twin_uppers
            self._twin_members = np.unique(np.concatenate([uppers - 2, uppers]))
        return self._twin_members

    def twin_pi(self, m: int, convention: str = "pairs") -> int:
        """Twin primes not exceeding m.

        "pairs" (canonical): pairs (p, p+2) with p+2 <= m, (3, 5) included.
        "members": primes <= m that belong to some twin pair.
        """
        self._check_m(m)
        if convention == "pairs":
            return int(np.searchsorted(self.twin_uppers, m, side="right"))
        if convention == "members":
            return int(np.searchsorted(self.twin_members, m, side="right"))
        raise ValueError(f"unknown twin_pi convention {convention!r}")

    def twin_pairs_in(self, lo: int, hi: int) -> list[TwinPair]:
        """All TwinPair(t) with lo <= 6t-1 and 6t+1 <= hi, ascending."""
        if hi < lo:
            raise ValueError(f"twin_pairs_in requires lo <= hi, got {lo} > {hi}")
        self._check_m(max(hi, 0))
        uppers = self.twin_uppers
        sel = uppers[
            (uppers <= hi) & (uppers - 2 >= lo) & (uppers - 2 >= 5)  # excludes (3, 5)
        ]
        return [TwinPair(int(u - 1) // 6) for u in sel]

    def max_square_index(self) -> int:
        """Largest n such that p_{n+1}^2 <= limit (scan capacity for the checks)."""
        root = math.isqrt(self.limit)
        return int(np.searchsorted(self.primes, root, side="right")) - 1


def nth_prime_upper_bound(n: int) -> int:
    """Cheap over-estimate of p_n, used to size sieves before a table exists."""
    if n < 6:
        return 13
    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 1


def nth_prime_standalone(n: int) -> int:
    """Exact p_n without a prebuilt table (sieves up to an over-estimate)."""
    if n < 1:
        raise ValueError(f"prime index must be >= 1, got {n}")
    primes = sieve_range(2, nth_prime_upper_bound(n))
    return int(primes[n - 1])
