"""Matplotlib renderings of the report tables, written next to the CSVs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_DPI = 150


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def save_gap_histogram(rows, path, title="Gap histogram"):
    """rows: (bucket_lo, bucket_hi, count) with powers-of-two buckets."""
    fig, ax = plt.subplots(figsize=(6, 4))
    if rows:
        labels = [f"[{lo},{hi})" for lo, hi, _ in rows]
        counts = [c for _, _, c in rows]
        ax.bar(range(len(rows)), counts, color="#31A354")
        ax.set_xticks(range(len(rows)))
        ax.set_xticklabels(labels, rotation=45, ha="right", fontsize=8)
        ax.set_yscale("log")
    ax.set_xlabel("gap bucket")
    ax.set_ylabel("count")
    ax.set_title(title)
    _finish(fig, path)


def save_trend(points, path, title="Exceptional fraction vs X"):
    """points: (X, exceptional_fraction) pairs."""
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [p[0] for p in points]
    fr = [p[1] for p in points]
    ax.plot(xs, fr, "o-", color="#006D2C")
    ax.set_xscale("log")
    ax.set_xlabel("X")
    ax.set_ylabel("exceptional fraction")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_bound_ratios(reports, path, title="Bound ratios"):
    """reports: list of BoundReport; one marker per grid point."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ratios = [r.ratio for r in reports]
    ax.plot(range(len(ratios)), ratios, "s", color="#A33159")
    ax.axhline(1.0, color="grey", lw=0.8, ls="--")
    ax.set_xlabel("grid point")
    ax.set_ylabel("lhs / bound")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_eval_curve(inputs, values, path, ylabel="|value|",
                    title="Evaluation grid"):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(inputs, [abs(v) for v in values], "-", color="#31A354", lw=1.0)
    ax.set_xlabel("t")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_phi_overlay(ys, phis, mains, path, title="Product counts vs main term"):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ys, phis, ".", ms=2.5, color="#31A354", label="count")
    ax.plot(ys, mains, "-", color="#A33159", lw=1.2, label="main term")
    ax.set_xlabel("y")
    ax.set_ylabel("count")
    ax.legend()
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_measure_terms(xs, term_rows, path, title="Measure bound terms"):
    """term_rows: per-X tuples of the four bound terms."""
    fig, ax = plt.subplots(figsize=(6, 4))
    names = ("T(U/L)log^3", "T^0.5 U log^2", "YV^2/T^2 log^2", "V^2U^2/(XT) log^2")
    for i, name in enumerate(names):
        ax.plot(xs, [row[i] for row in term_rows], "o-", label=name, lw=1.0)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("X")
    ax.set_ylabel("term value")
    ax.legend(fontsize=8)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    _finish(fig, path)
