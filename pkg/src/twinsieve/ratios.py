"""Diagnostic density ratios, their exact primorial closed forms, and the
bundled reference tables.

Ratios are exact `fractions.Fraction` values end to end; decimal output is
produced only at the rendering boundary, rounded half-to-even.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from twinsieve import legendre
from twinsieve.primes import CapacityError, PrimeTable

TABLE_TOLERANCE = Fraction(1, 10_000)  # |computed - reference| allowed per table row

METHOD_RECURSION = "recursion"
METHOD_DIRECT = "direct-sieve"
METHOD_CLOSED_FORM = "closed-form"


def render_fixed(value: Fraction | int, places: int = 4) -> str:
    """Exact decimal rendering to `places` digits, round half to even."""
    q = round(Fraction(value), places)  # Fraction.__round__ is half-even
    scaled = q.numerator * 10**places // q.denominator
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    return f"{sign}{scaled // 10**places}.{scaled % 10**places:0{places}d}"


@dataclass
class RatioRecord:
    """One table row: a density ratio at (x, n) with optional reference value."""

    x: int
    n: int
    method: str
    exact: Fraction
    paper_value: str | None = None
    in_domain: bool = True

    @property
    def value(self) -> str:
        return render_fixed(self.exact)

    @property
    def abs_dev(self) -> Fraction | None:
        if self.paper_value is None:
            return None
        return abs(self.exact - Fraction(self.paper_value))

    @property
    def within_tolerance(self) -> bool | None:
        dev = self.abs_dev
        if dev is None:
            return None
        return dev <= TABLE_TOLERANCE


def _first_primes(table: PrimeTable, n: int) -> list[int]:
    if n > len(table):
        raise CapacityError(
            f"need the first {n} primes but table holds {len(table)} (limit {table.limit})"
        )
    return [int(p) for p in table.primes[:n]]


def ratio_a(
    table: PrimeTable,
    x: int,
    n: int,
    method: str = METHOD_RECURSION,
    segment_size: int = legendre.DEFAULT_SEGMENT,
) -> Fraction:
    """(n+1) * S(x,n) / x, exact."""
    if x <= 0:
        raise ValueError(f"ratio_a requires x >= 1, got {x}")
    if method == METHOD_RECURSION:
        s = legendre.phi_recursion(table, x, n)
    elif method == METHOD_DIRECT:
        s = legendre.phi_direct(table, x, n, segment_size=segment_size)
    else:
        raise ValueError(f"unknown ratio_a method {method!r}")
    return Fraction((n + 1) * s, x)


def ratio_a_in_domain(table: PrimeTable, x: int, n: int) -> bool:
    """The ratio is tabulated for x >= p_{n+1}^2; below that it is flagged."""
    return x >= table.nth_prime(n + 1) ** 2


def ratio_a_primorial(table: PrimeTable, n: int) -> Fraction:
    """Closed form of ratio_a over one full period: (n+1) * prod(p_s - 1) / prod(p_s)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    ps = _first_primes(table, n)
    return Fraction((n + 1) * math.prod(p - 1 for p in ps), math.prod(ps))


def ratio_a2(
    table: PrimeTable,
    x: int,
    n: int,
    segment_size: int = legendre.DEFAULT_SEGMENT,
    workers: int = 1,
) -> Fraction:
    """2(n+1) * |R(x,n)| / x, exact. x must be a positive multiple of 6."""
    if x <= 0:
        raise ValueError(f"ratio_a2 requires x >= 6, got {x}")
    r = legendre.twin_residue_count(table, x, n, segment_size=segment_size, workers=workers)
    return Fraction(2 * (n + 1) * r, x)


def ratio_a2_in_domain(table: PrimeTable, x: int, n: int) -> bool:
    return x >= table.nth_prime(n + 1) ** 2 - 1


def ratio_a2_primorial(table: PrimeTable, n: int) -> Fraction:
    """Closed form over one full pair-sieve period:
    2(n+1) * prod_{s=3..n}(p_s - 2) / prod_{s=1..n} p_s."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    ps = _first_primes(table, n)
    return Fraction(2 * (n + 1) * math.prod(p - 2 for p in ps[2:]), math.prod(ps))


def k_term(x: int, n: int) -> Fraction:
    """x / ((n+1)(n+2)), exact."""
    if x < 0 or n < 0:
        raise ValueError(f"k_term requires x >= 0 and n >= 0, got x={x} n={n}")
    return Fraction(x, (n + 1) * (n + 2))


@dataclass
class KvsTComparison:
    x: int
    n: int
    k_value: Fraction
    t_value: int
    holds: bool
    in_domain: bool


def compare_k_vs_6t(table: PrimeTable, x: int, n: int) -> KvsTComparison:
    """Does x/((n+1)(n+2)) >= 6*T(x,n)? In-domain for x >= p_{n+2}^2 - 1."""
    k = k_term(x, n)
    tv = legendre.t_count(table, x, n)
    return KvsTComparison(
        x=x,
        n=n,
        k_value=k,
        t_value=tv,
        holds=k >= 6 * tv,
        in_domain=x >= table.nth_prime(n + 2) ** 2 - 1,
    )


# --- bundled reference tables ---------------------------------------------------

TABLE_N = 70

# (x, printed 4-decimal value); the final row of each table is the primorial
# closed form at n = 70.
EXAMPLE1_ROWS: list[tuple[int, str]] = [
    (124609, "6.6278"),
    (654480, "6.4641"),
    (1885128, "6.6046"),
    (3279720, "6.6707"),
    (5870928, "6.7240"),
    (9480240, "6.7566"),
    (13890528, "6.7745"),
    (29626248, "6.7911"),
    (62710560, "6.7869"),
    (223092870, "6.7650"),
    (6469693230, "6.7482"),
]
EXAMPLE1_CLOSED = "6.7514"

EXAMPLE2_ROWS: list[tuple[int, str]] = [
    (124608, "1.6501"),
    (654480, "1.5613"),
    (1885128, "1.6317"),
    (3279720, "1.6613"),
    (5870928, "1.6855"),
    (9480240, "1.7010"),
    (13890528, "1.7079"),
    (29626248, "1.7158"),
    (62710560, "1.7136"),
    (223092870, "1.7030"),
    (6469693230, "1.6943"),
]
EXAMPLE2_CLOSED = "1.6960"


class MethodDisagreement(RuntimeError):
    """Two supposedly equivalent computations returned different exact values."""


def primorial(table: PrimeTable, n: int) -> int:
    return math.prod(_first_primes(table, n))


def table_example1(
    table: PrimeTable,
    dual_limit: int = 250_000_000,
    rows: int | None = None,
    segment_size: int = legendre.DEFAULT_SEGMENT,
) -> list[RatioRecord]:
    """Recompute the first reference table: ratio (n+1)S(x,n)/x at n = 70.

    Finite rows run the recursion; rows with x <= dual_limit are recomputed by
    direct marking and must agree exactly. The last row is the closed form.
    """
    n = TABLE_N
    out = []
    selected = EXAMPLE1_ROWS if rows is None else EXAMPLE1_ROWS[:rows]
    for x, printed in selected:
        exact = ratio_a(table, x, n, METHOD_RECURSION)
        if x <= dual_limit:
            check = ratio_a(table, x, n, METHOD_DIRECT, segment_size=segment_size)
            if check != exact:
                raise MethodDisagreement(
                    f"ratio_a({x}, {n}): recursion {exact} != direct {check}"
                )
        out.append(
            RatioRecord(
                x=x, n=n, method=METHOD_RECURSION, exact=exact, paper_value=printed,
                in_domain=ratio_a_in_domain(table, x, n),
            )
        )
    if rows is None or rows > len(EXAMPLE1_ROWS):
        out.append(
            RatioRecord(
                x=primorial(table, n),
                n=n,
                method=METHOD_CLOSED_FORM,
                exact=ratio_a_primorial(table, n),
                paper_value=EXAMPLE1_CLOSED,
            )
        )
    return out


def _twin_residue_modcheck(table: PrimeTable, x: int, n: int, chunk: int = 1 << 18) -> int:
    """|R(x,n)| by elementwise divisibility tests; independent of the class sieve."""
    k = x // 6
    ps = [p for p, _, _ in legendre._twin_classes(table, x, n)]
    total = 0
    lo = 1
    while lo < k:
        hi = min(k, lo + chunk)
        t = np.arange(lo, hi, dtype=np.int64)
        good = np.ones(hi - lo, dtype=bool)
        for p in ps:
            good &= ((6 * t - 1) % p != 0) & ((6 * t + 1) % p != 0)
        total += int(np.count_nonzero(good))
        lo = hi
    return total


def table_example2(
    table: PrimeTable,
    dual_limit: int = 10_000_000,
    rows: int | None = None,
    segment_size: int = legendre.DEFAULT_SEGMENT,
    workers: int = 1,
) -> list[RatioRecord]:
    """Recompute the second reference table: ratio 2(n+1)|R(x,n)|/x at n = 70.

    Rows run the segmented pair sieve; rows with x <= dual_limit are recomputed
    by brute divisibility tests and must agree exactly.
    """
    n = TABLE_N
    out = []
    selected = EXAMPLE2_ROWS if rows is None else EXAMPLE2_ROWS[:rows]
    for x, printed in selected:
        exact = ratio_a2(table, x, n, segment_size=segment_size, workers=workers)
        if x <= dual_limit:
            r_check = _twin_residue_modcheck(table, x, n)
            if Fraction(2 * (n + 1) * r_check, x) != exact:
                raise MethodDisagreement(
                    f"ratio_a2({x}, {n}): sieve gave {exact}, divisibility check {r_check}"
                )
        out.append(
            RatioRecord(
                x=x, n=n, method=METHOD_DIRECT, exact=exact, paper_value=printed,
                in_domain=ratio_a2_in_domain(table, x, n),
            )
        )
    if rows is None or rows > len(EXAMPLE2_ROWS):
        out.append(
            RatioRecord(
                x=primorial(table, n),
                n=n,
                method=METHOD_CLOSED_FORM,
                exact=ratio_a2_primorial(table, n),
                paper_value=EXAMPLE2_CLOSED,
            )
        )
    return out
