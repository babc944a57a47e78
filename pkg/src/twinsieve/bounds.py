"""Classical analytic bounds: the Rosser-Schoenfeld inequalities for pi(n) and
p_n, and the Hardy-Littlewood twin-pair estimate L2.

These checks use 64-bit floats (the inequalities carry wide margins away from
their domain thresholds); comparisons closer than MARGINAL_EPS are reported as
marginal rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from twinsieve.primes import PrimeTable

C2 = 0.661618155  # twin-prime constant; the single definition in this package

MARGINAL_EPS = 1e-12
HL_REL_TOL = 1e-6


@dataclass
class BoundCheckResult:
    """Verdict for one claim at one point, oriented so holds <=> lhs < rhs."""

    claim: str
    point: int
    lhs: float
    rhs: float
    holds: bool
    in_domain: bool

    @property
    def marginal(self) -> bool:
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            return False
        scale = max(abs(self.lhs), abs(self.rhs), 1.0)
        return abs(self.lhs - self.rhs) < MARGINAL_EPS * scale


def _result(claim: str, point: int, lhs: float, rhs: float, in_domain: bool) -> BoundCheckResult:
    return BoundCheckResult(
        claim=claim, point=point, lhs=lhs, rhs=rhs,
        holds=bool(lhs < rhs), in_domain=in_domain,
    )


def check_rosser_pi(table: PrimeTable, m: int) -> tuple[BoundCheckResult, BoundCheckResult]:
    """ross1.i: m/(log m - 1/2) < pi(m) for m >= 67;
    ross1.ii: pi(m) < m/(log m - 3/2) for m >= 5 (= ceil(e^{3/2}))."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    pi_m = table.prime_pi(m)
    lg = math.log(m)
    i = _result("ross1.i", m, m / (lg - 0.5), float(pi_m), m >= 67)
    ii_rhs = m / (lg - 1.5) if lg > 1.5 else math.inf
    ii = _result("ross1.ii", m, float(pi_m), ii_rhs, m >= 5)
    return i, ii


def check_pi_lower_simple(table: PrimeTable, m: int) -> BoundCheckResult:
    """ross2: m/log m < pi(m) for m >= 17."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    return _result("ross2", m, m / math.log(m), float(table.prime_pi(m)), m >= 17)


def check_rosser_pn(table: PrimeTable, n: int) -> tuple[BoundCheckResult, BoundCheckResult]:
    """ross3.i: n(log n + log log n - 3/2) < p_n for n >= 2;
    ross3.ii: p_n < n(log n + log log n - 1/2) for n >= 20."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    p = table.nth_prime(n)
    if n >= 2:
        ll = math.log(n) + math.log(math.log(n))
        i = _result("ross3.i", n, n * (ll - 1.5), float(p), True)
        ii = _result("ross3.ii", n, float(p), n * (ll - 0.5), n >= 20)
    else:
        i = BoundCheckResult("ross3.i", n, math.nan, float(p), False, False)
        ii = BoundCheckResult("ross3.ii", n, float(p), math.nan, False, False)
    return i, ii


def check_pn_simple(table: PrimeTable, n: int) -> tuple[BoundCheckResult, BoundCheckResult]:
    """ross4.i: n log n < p_n for n >= 1;
    ross4.ii: p_n < n(log n + log log n) for n >= 6."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    p = table.nth_prime(n)
    i = _result("ross4.i", n, n * math.log(n), float(p), True)
    if n >= 2:
        ii = _result(
            "ross4.ii", n, float(p), n * (math.log(n) + math.log(math.log(n))), n >= 6
        )
    else:
        ii = BoundCheckResult("ross4.ii", n, float(p), math.nan, False, False)
    return i, ii


@dataclass
class ScanSummary:
    claim: str
    lo: int
    hi: int
    checked: int
    failures: int
    first_failure: int | None


def scan_rosser_pi(table: PrimeTable, m_hi: int) -> list[ScanSummary]:
    """Vectorized sweep of ross1.i / ross1.ii / ross2 over every m in domain up to m_hi."""
    m = np.arange(2, m_hi + 1, dtype=np.float64)
    mi = np.arange(2, m_hi + 1, dtype=np.int64)
    pi_m = np.searchsorted(table.primes, mi, side="right").astype(np.float64)
    lg = np.log(m)
    out = []
    for claim, lo, ok in (
        ("ross1.i", 67, m / (lg - 0.5) < pi_m),
        ("ross1.ii", 5, pi_m < m / (lg - 1.5)),
        ("ross2", 17, m / lg < pi_m),
    ):
        dom = mi >= lo
        bad = np.flatnonzero(dom & ~ok)
        out.append(
            ScanSummary(
                claim=claim, lo=lo, hi=m_hi, checked=int(dom.sum()),
                failures=int(bad.size),
                first_failure=int(mi[bad[0]]) if bad.size else None,
            )
        )
    return out


def scan_rosser_pn(table: PrimeTable, n_hi: int) -> list[ScanSummary]:
    """Vectorized sweep of ross3.i/ii and ross4.i/ii over prime indices up to n_hi."""
    if n_hi > len(table):
        n_hi = len(table)
    p = table.primes[:n_hi].astype(np.float64)
    n = np.arange(1, n_hi + 1, dtype=np.float64)
    ni = np.arange(1, n_hi + 1, dtype=np.int64)
    with np.errstate(divide="ignore", invalid="ignore"):
        lln = np.log(np.log(n))
        ln = np.log(n)
        checks = (
            ("ross3.i", 2, n * (ln + lln - 1.5) < p),
            ("ross3.ii", 20, p < n * (ln + lln - 0.5)),
            ("ross4.i", 1, n * ln < p),
            ("ross4.ii", 6, p < n * (ln + lln)),
        )
        out = []
        for claim, lo, ok in checks:
            dom = ni >= lo
            bad = np.flatnonzero(dom & ~ok)
            out.append(
                ScanSummary(
                    claim=claim, lo=lo, hi=n_hi, checked=int(dom.sum()),
                    failures=int(bad.size),
                    first_failure=int(ni[bad[0]]) if bad.size else None,
                )
            )
    return out


@dataclass
class HLEstimate:
    """Hardy-Littlewood twin-pair estimate at m: the integral form L2(m) and
    the single-point form 2*C2*m/log^2 m."""

    m: int
    integral_value: float
    simple_value: float
    c2: float = C2
    panels: int = 0


def _simpson(a: float, b: float, panels: int) -> float:
    """Composite Simpson for the integrand 1/log^2 t over [a, b]."""
    xs = np.linspace(a, b, 2 * panels + 1)
    ys = 1.0 / np.log(xs) ** 2
    h = (b - a) / (2 * panels)
    return float(h / 3.0 * (ys[0] + ys[-1] + 4.0 * ys[1::2].sum() + 2.0 * ys[2:-1:2].sum()))


def hl_integral(m: int, rel_tol: float = HL_REL_TOL) -> HLEstimate:
    """L2(m) = 2*C2 * integral_2^m dt/log^2 t by Simpson with panel doubling.

    Panel count doubles until successive estimates agree to rel_tol, so the
    result is a deterministic function of (m, rel_tol).
    """
    if m < 3:
        raise ValueError(f"hl_integral requires m >= 3, got {m}")
    panels = 64
    prev = _simpson(2.0, float(m), panels)
    for _ in range(24):
        panels *= 2
        cur = _simpson(2.0, float(m), panels)
        if abs(cur - prev) <= rel_tol * abs(cur):
            break
        prev = cur
    lg = math.log(m)
    return HLEstimate(
        m=m,
        integral_value=2.0 * C2 * cur,
        simple_value=2.0 * C2 * m / (lg * lg),
        panels=panels,
    )


def hl_implies_main(table: PrimeTable, n: int, a: int = 1) -> BoundCheckResult:
    """The closing comparison: log^2 p_{n+1} < C2 (n+1) / a.

    When it holds, the Hardy-Littlewood estimate at p_{n+1}^2 exceeds
    a * p_{n+1}^2 / (2(n+1)).
    """
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    p = table.nth_prime(n + 1)
    lhs = math.log(p) ** 2
    rhs = C2 * (n + 1) / a
    return _result(f"hl-implies-main(a={a})", n, lhs, rhs, n >= 3)
