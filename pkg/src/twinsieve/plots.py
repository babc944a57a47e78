"""Figure rendering for reports: ratio tables, scan margins, and the
Hardy-Littlewood comparison. Files land next to the delimited output; stdout
is never touched here. matplotlib is imported lazily so plain CLI runs stay
light."""

from __future__ import annotations

import math
from pathlib import Path

from twinsieve.conjecture import VerificationReport
from twinsieve.ratios import RatioRecord


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_ratio_figure(records: list[RatioRecord], path: str | Path, title: str) -> Path:
    """Computed ratio vs x (log scale) with the reference values overlaid."""
    plt = _plt()
    finite = [r for r in records if r.method != "closed-form"]
    xs = [r.x for r in finite]
    ys = [float(r.exact) for r in finite]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.semilogx(xs, ys, "o-", label="computed", color="tab:blue")
    refs = [(r.x, float(r.paper_value)) for r in finite if r.paper_value is not None]
    if refs:
        ax.semilogx(*zip(*refs), "x", label="reference", color="tab:red")
    closed = [r for r in records if r.method == "closed-form"]
    if closed:
        ax.axhline(float(closed[0].exact), ls="--", lw=1, color="gray",
                   label="closed form (full period)")
    ax.set_xlabel("x")
    ax.set_ylabel("ratio")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_verification_figure(report: VerificationReport, path: str | Path) -> Path:
    """Margin rhs/lhs per scanned index; points below 1 are failures."""
    plt = _plt()
    xs = [o.index for o in report.outcomes]
    margins = []
    for o in report.outcomes:
        lhs = float(o.lhs) if o.lhs else 0.0
        margins.append(float(o.rhs) / lhs if lhs else math.inf)
    ok = [o.holds for o in report.outcomes]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.scatter([x for x, k in zip(xs, ok) if k], [m for m, k in zip(margins, ok) if k],
               s=8, color="tab:blue", label="pass")
    bad_x = [x for x, k in zip(xs, ok) if not k]
    if bad_x:
        ax.scatter(bad_x, [m for m, k in zip(margins, ok) if not k],
                   s=14, color="tab:red", label="fail")
    ax.axhline(1.0, ls="--", lw=1, color="gray")
    if max(xs) > 50 * max(min(xs), 1):
        ax.set_xscale("log")
    ax.set_xlabel("index")
    ax.set_ylabel("rhs / lhs")
    ax.set_title(f"claim {report.claim}: scanned [{report.lo}, {report.hi}]")
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_hl_figure(ms: list[int], integral: list[float], pairs: list[int],
                   path: str | Path) -> Path:
    """Twin-pair count vs the Hardy-Littlewood integral estimate."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.loglog(ms, pairs, "o-", label="twin pairs (sieve)", color="tab:blue")
    ax.loglog(ms, integral, "s--", label="L2 integral estimate", color="tab:orange")
    ax.set_xlabel("m")
    ax.set_ylabel("pairs")
    ax.set_title("twin pairs vs Hardy-Littlewood estimate")
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
