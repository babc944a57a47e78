"""Inclusion-exclusion residue counts over the first n primes.

S(x,n) counts integers in [1,x] coprime to p_1..p_n; it is computed three
ways (Legendre recurrence, direct segmented marking, literal subset sum) so
each route validates the others. |R(x,n)| counts the t < x/6 for which both
6t-1 and 6t+1 survive sifting by p_3..p_n.

All counts are exact integer arithmetic; no floating point appears anywhere.
"""

from __future__ import annotations

import logging
import sys
import weakref
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from twinsieve.primes import CapacityError, PrimeTable

log = logging.getLogger(__name__)

DEFAULT_SEGMENT = 1 << 20
IE_MAX_N = 12           # literal subset evaluation capped at 2^12 terms
PHI_CACHE_CAP = 4_000_000   # memo entries before the cache is dropped wholesale
MATERIALIZE_CAP = 1_000_000  # explicit residue sets only below this

_WHEEL_N = 7  # recursion bottoms out on the pattern of the first 7 primes


class _PhiState:
    """Per-table memo and wheel tables for the Legendre recurrence."""

    def __init__(self, table: PrimeTable):
        self.table = table
        self.plist: list[int] = []
        self.cache: dict[tuple[int, int], int] = {}
        self.wheel_n = min(_WHEEL_N, len(table))
        wheel_primes = [int(p) for p in table.primes[: self.wheel_n]]
        self.wheel_size = 1
        for p in wheel_primes:
            self.wheel_size *= p
        coprime = np.ones(self.wheel_size + 1, dtype=bool)
        coprime[0] = False
        for p in wheel_primes:
            coprime[p::p] = False
        self.wheel_cum = np.cumsum(coprime)
        self.wheel_phi = int(self.wheel_cum[self.wheel_size])

    def primes_upto_index(self, n: int) -> list[int]:
        if len(self.plist) < n:
            self.plist = [int(p) for p in self.table.primes[:n]]
        return self.plist

    def phi(self, x: int, n: int) -> int:
        if x <= 0:
            return 0
        plist = self.primes_upto_index(n)
        if n > 0 and plist[n - 1] > x:
            n = bisect_right(plist, x, 0, n)  # primes above x sift nothing
        if n == self.wheel_n:
            q, r = divmod(x, self.wheel_size)
            return q * self.wheel_phi + int(self.wheel_cum[r])
        if n == 0:
            return x
        key = (x, n)
        v = self.cache.get(key)
        if v is None:
            v = self.phi(x, n - 1) - self.phi(x // plist[n - 1], n - 1)
            if len(self.cache) >= PHI_CACHE_CAP:
                self.cache.clear()
            self.cache[key] = v
        return v


_STATES: "weakref.WeakKeyDictionary[PrimeTable, _PhiState]" = weakref.WeakKeyDictionary()


def _state(table: PrimeTable) -> _PhiState:
    st = _STATES.get(table)
    if st is None:
        st = _PhiState(table)
        _STATES[table] = st
    return st


def _check_n(table: PrimeTable, n: int, what: str = "n") -> None:
    if n < 0:
        raise ValueError(f"{what} must be >= 0, got {n}")
    if n > len(table):
        raise CapacityError(
            f"{what}={n} exceeds table capacity ({len(table)} primes <= {table.limit})"
        )


def phi_recursion(table: PrimeTable, x: int, n: int) -> int:
    """S(x,n) via the Legendre recurrence phi(x,n) = phi(x,n-1) - phi(x//p_n, n-1)."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    _check_n(table, n)
    if n > 900:
        sys.setrecursionlimit(max(sys.getrecursionlimit(), n + 2000))
    return _state(table).phi(x, n)


def phi_direct(
    table: PrimeTable, x: int, n: int, segment_size: int = DEFAULT_SEGMENT
) -> int:
    """S(x,n) by marking a segmented bit array over [1, x]. Oracle for phi_recursion."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    _check_n(table, n)
    if x == 0:
        return x
    n_eff = min(n, int(np.searchsorted(table.primes, x, side="right")))
    ps = [int(p) for p in table.primes[:n_eff]]
    total = 0
    lo = 1
    while lo <= x:
        hi = min(x + 1, lo + segment_size)
        mask = np.ones(hi - lo, dtype=bool)
        for p in ps:
            start = lo + ((-lo) % p)  # first multiple of p at or after lo
            if start < hi:
                mask[start - lo :: p] = False
        total += int(np.count_nonzero(mask))
        lo = hi
    return total


def phi_inclusion_exclusion(table: PrimeTable, x: int, n: int) -> int:
    """S(x,n) as the literal 2^n-term alternating sum of floor divisions."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    _check_n(table, n)
    if n > IE_MAX_N:
        raise ValueError(
            f"inclusion-exclusion sum has 2^{n} terms; capped at n <= {IE_MAX_N}"
        )
    terms = [(1, 1)]  # (squarefree divisor, sign)
    for p in (int(v) for v in table.primes[:n]):
        terms += [(d * p, -s) for d, s in terms]
    return sum(s * (x // d) for d, s in terms)


def t_count(table: PrimeTable, x: int, n: int) -> int:
    """T(x,n): multiples of p_{n+1} up to x that are coprime to p_1..p_n."""
    _check_n(table, n + 1, "n+1")
    return phi_recursion(table, x // table.nth_prime(n + 1), n)


def _twin_classes(table: PrimeTable, x: int, n: int) -> list[tuple[int, int, int]]:
    """(p, class_minus, class_plus) for p_3..p_n: t-classes mod p on which
    p divides 6t-1 resp. 6t+1. Primes too large to divide any member are skipped."""
    out = []
    for p in (int(v) for v in table.primes[2:n]):
        if p > x - 5:  # largest member is 6(k-1)+1 = x-5
            break
        inv6 = pow(6, -1, p)
        out.append((p, inv6 % p, (-inv6) % p))
    return out


def _twin_segment_count(lo: int, hi: int, classes: list[tuple[int, int, int]]) -> int:
    mask = np.ones(hi - lo, dtype=bool)
    for p, r1, r2 in classes:
        for r in (r1, r2):
            start = lo + ((r - lo) % p)
            if start < hi:
                mask[start - lo :: p] = False
    return int(np.count_nonzero(mask))


def _twin_segment_task(args):
    idx, lo, hi, classes = args
    return idx, _twin_segment_count(lo, hi, classes)


def twin_residue_count(
    table: PrimeTable,
    x: int,
    n: int,
    segment_size: int = DEFAULT_SEGMENT,
    workers: int = 1,
) -> int:
    """|R(x,n)|: t in [1, x/6) with both 6t-1 and 6t+1 coprime to p_3..p_n.

    Each sifting prime strikes two residue classes of t; the count is summed
    over segments, so it is identical for any segment size or worker count.
    n = 2 sifts nothing and yields k-1.
    """
    if x < 0 or x % 6 != 0:
        raise ValueError(f"x must be a nonnegative multiple of 6, got {x}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    _check_n(table, n)
    k = x // 6
    if k <= 1:
        return 0
    classes = _twin_classes(table, x, n)
    bounds = list(range(1, k, segment_size)) + [k]
    tasks = [(i, bounds[i], bounds[i + 1], classes) for i in range(len(bounds) - 1)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(c for _, c in pool.map(_twin_segment_task, tasks, chunksize=4))
    return sum(_twin_segment_count(lo, hi, classes) for _, lo, hi, classes in tasks)


def q_count(
    table: PrimeTable, x: int, n: int, segment_size: int = DEFAULT_SEGMENT, workers: int = 1
) -> int:
    """Q(x,n) = |R(x,n)| - |R(x,n+1)|: pairs lost when p_{n+1} joins the sieve."""
    _check_n(table, n + 1, "n+1")
    return twin_residue_count(table, x, n, segment_size, workers) - twin_residue_count(
        table, x, n + 1, segment_size, workers
    )


def coprime_residue_set(table: PrimeTable, x: int, n: int) -> list[int]:
    """The explicit set of y in [1, x] coprime to p_1..p_n (small x only)."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if x > MATERIALIZE_CAP:
        raise CapacityError(f"explicit residue sets are capped at x <= {MATERIALIZE_CAP}")
    _check_n(table, n)
    mask = np.ones(x + 1, dtype=bool)
    mask[0] = False
    for p in (int(v) for v in table.primes[:n]):
        if p > x:
            break
        mask[p::p] = False
    return [int(v) for v in np.flatnonzero(mask)]


@dataclass
class SiftedMultiplesView:
    """Integers below x whose least prime factor is p_s, ascending."""

    s: int
    x: int
    members: list[int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.members)


def sifted_multiples(table: PrimeTable, s: int, x: int) -> SiftedMultiplesView:
    """All m < x with least prime factor exactly p_s."""
    if x > MATERIALIZE_CAP + 1:
        raise CapacityError(f"explicit multiple views are capped at x <= {MATERIALIZE_CAP}")
    _check_n(table, s, "s")
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    p_s = table.nth_prime(s)
    lpf = np.zeros(max(x, 1), dtype=np.int64)  # index m, 0 <= m < x
    for p in (int(v) for v in table.primes):
        if p >= x:
            break
        view = lpf[p::p]
        view[view == 0] = p
    members = [int(m) for m in np.flatnonzero(lpf == p_s)]
    return SiftedMultiplesView(s=s, x=x, members=members)


# --- restricted sieve identity ------------------------------------------------

def _count_6pm1(x: int) -> int:
    """How many m <= x have m = 1 or 5 (mod 6)."""
    if x <= 0:
        return 0
    return (x + 5) // 6 + (x + 1) // 6


def _restricted_count_recursive(
    plist: list[int], x: int, j: int, memo: dict[tuple[int, int], int]
) -> int:
    """m <= x with m = +-1 (mod 6) and coprime to p_3..p_j."""
    if x <= 0:
        return 0
    while j > 2 and plist[j - 1] > x:
        j -= 1
    if j <= 2:
        return _count_6pm1(x)
    key = (x, j)
    v = memo.get(key)
    if v is None:
        v = _restricted_count_recursive(plist, x, j - 1, memo) - _restricted_count_recursive(
            plist, x // plist[j - 1], j - 1, memo
        )
        memo[key] = v
    return v


def _restricted_count_literal(plist: list[int], x: int, j: int) -> int:
    """Same count as _restricted_count_recursive via explicit subset products."""
    terms = [(1, 1)]
    for p in plist[2:j]:
        terms += [(d * p, -s) for d, s in terms]
    return sum(s * _count_6pm1(x // d) for d, s in terms)


def restricted_survivor_count(
    table: PrimeTable, x: int, n: int, segment_size: int = DEFAULT_SEGMENT
) -> int:
    """Survivors of sifting p_3..p_n out of the sequence 1, 5, 7, 11, ..., <= x,
    counted by direct marking of the two mod-6 progressions."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    _check_n(table, max(n, 2))
    ps = []
    for p in (int(v) for v in table.primes[2:n]):
        if p > x:
            break
        inv6 = pow(6, -1, p)
        ps.append((p, inv6))
    total = 0
    for r in (1, 5):
        j_hi = max((x - r) // 6 + 1, 0) if x >= r else 0  # j with 6j + r <= x
        lo = 0
        while lo < j_hi:
            hi = min(j_hi, lo + segment_size)
            mask = np.ones(hi - lo, dtype=bool)
            for p, inv6 in ps:
                c = (-r * inv6) % p  # 6j + r = 0 (mod p)
                start = lo + ((c - lo) % p)
                if start < hi:
                    mask[start - lo :: p] = False
            total += int(np.count_nonzero(mask))
            lo = hi
    return total


def restricted_identity_check(table: PrimeTable, x: int, n: int) -> bool:
    """Check the restricted-sieve identity on the 1, 5, 7, 11, ... sequence.

    Left side: direct survivor count of the restricted sequence. Right side:
    x/3 minus, for each prime p_r (3 <= r <= n), the count of struck values
    whose least sifting prime is p_r, expanded over floor divisions (literal
    subset products for small n, the equivalent recursion otherwise).
    Mismatches are logged with both values.
    """
    if x < 0 or x % 6 != 0:
        raise ValueError(f"x must be a nonnegative multiple of 6, got {x}")
    _check_n(table, max(n, 2))
    lhs = restricted_survivor_count(table, x, n)
    plist = [int(v) for v in table.primes[:n]]
    memo: dict[tuple[int, int], int] = {}
    rhs = x // 3
    for r in range(3, n + 1):
        p_r = plist[r - 1]
        if n <= IE_MAX_N:
            struck = _restricted_count_literal(plist, x // p_r, r - 1)
            assert struck == _restricted_count_recursive(plist, x // p_r, r - 1, memo)
        else:
            struck = _restricted_count_recursive(plist, x // p_r, r - 1, memo)
        rhs -= struck
    if lhs != rhs:
        log.warning(
            "restricted identity mismatch at x=%d n=%d: direct=%d expansion=%d",
            x, n, lhs, rhs,
        )
    return lhs == rhs
