"""Interval-coverage measurements: exceptional-set fractions and gap statistics.

A sample point x is *exceptional* when [x, x + H(x)] contains no almost
square (theorem mode) or no integer with a factorization anchored at x
(corollary mode). Theorem mode enumerates the scan region once and
binary-searches per sample; corollary mode sweeps factor candidates per
sample because its factor bounds move with the anchor.

Sampling is reproducible: seed 0 means deterministic even spacing
x_i = X + i*span/samples; any other seed drives a numpy PCG64 generator.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field

import numpy as np

from .core import AlmostSquareParams, IntervalSpec, ScaleError, interval_length
from .detector import _enumerate_arrays
from .util import det_map

_MODES = ("theorem", "corollary")


@dataclass(frozen=True)
class ScanConfig:
    """Coverage-scan inputs. span defaults to X, scanning [X, 2X]."""

    bigX: float
    params: AlmostSquareParams
    spec: IntervalSpec
    span: float | None = None
    samples: int = 1000
    seed: int = 0
    mode: str = "theorem"

    def __post_init__(self):
        if not self.bigX > math.e:
            raise ValueError(f"need X > e, got {self.bigX}")
        if self.samples < 1:
            raise ValueError(f"need samples >= 1, got {self.samples}")
        if self.span is not None and not self.span > 0:
            raise ValueError(f"need span > 0, got {self.span}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")

    @property
    def effective_span(self) -> float:
        return self.bigX if self.span is None else self.span


@dataclass(frozen=True)
class CoverageReport:
    sampled: int
    exceptional: int
    exceptional_fraction: float
    max_gap: int | None
    gap_histogram: list = field(default_factory=list)


def _sample_points(cfg: ScanConfig) -> np.ndarray:
    span = cfg.effective_span
    if cfg.seed == 0:
        return cfg.bigX + np.arange(cfg.samples) * (span / cfg.samples)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    return rng.uniform(cfg.bigX, cfg.bigX + span, size=cfg.samples)


def _gap_buckets(gaps: np.ndarray) -> list:
    """Histogram rows (bucket_lo, bucket_hi, count), buckets [2^k, 2^(k+1))."""
    if len(gaps) == 0:
        return []
    k = np.floor(np.log2(gaps.astype(np.float64))).astype(np.int64)
    k = np.where((gaps >> np.maximum(k + 1, 0)) > 0, k + 1, k)
    k = np.where((gaps >> np.maximum(k, 0)) == 0, k - 1, k)
    rows = []
    for kk in np.unique(k):
        count = int(np.sum(k == kk))
        rows.append((int(2 ** kk), int(2 ** (kk + 1)), count))
    return rows


def _corollary_exceptional(x: float, h: float) -> bool:
    """True when [x, x+h] holds no n = a*b with both factors in
    [sqrt(x)/2, 2*sqrt(x)].

    For each candidate a the smallest multiple >= x is the only one worth
    testing: larger multiples only push the cofactor further down, and the
    cofactor lower bound b >= sqrt(x)/2 holds automatically from
    b >= x/a >= sqrt(x)/2. All boundary comparisons are exact
    (integer-vs-float, products below 2**53).
    """
    rt = math.sqrt(x)
    a0 = max(1, int(rt / 2.0))
    while 4 * a0 * a0 < x:
        a0 += 1
    while a0 > 1 and 4 * (a0 - 1) * (a0 - 1) >= x:
        a0 -= 1
    a1 = int(2.0 * rt) + 1
    while a1 * a1 > 4 * x:
        a1 -= 1
    if a1 < a0:
        return True
    A = np.arange(a0, a1 + 1, dtype=np.int64)
    b = np.ceil(x / A).astype(np.int64)
    b = np.where((b - 1) * A >= x, b - 1, b)
    b = np.where(b * A < x, b + 1, b)
    n = A * b
    ok = (n <= x + h) & (b * b <= 4 * x)
    return not bool(ok.any())


def coverage_scan(cfg: ScanConfig, workers: int | None = None) -> CoverageReport:
    """Measure the exceptional fraction of cfg.samples points in the scan region."""
    xs = _sample_points(cfg)
    hs = cfg.spec.coef * xs ** cfg.spec.pow * np.log(xs) ** cfg.spec.logpow
    if np.any(hs < 1.0):
        raise ScaleError("degenerate interval: interval length below 1 in range")

    span = cfg.effective_span
    if cfg.mode == "theorem":
        h_end = max(interval_length(cfg.bigX, cfg.spec),
                    interval_length(cfg.bigX + span, cfg.spec))
        lo = max(1, math.floor(cfg.bigX))
        hi = math.ceil(cfg.bigX + span + h_end) + 1
        ns, _, _ = _enumerate_arrays(lo, hi, cfg.params)
        ns_f = ns.astype(np.float64)
        if len(ns_f) == 0:
            exceptional_mask = np.ones(len(xs), dtype=bool)
        else:
            idx = np.searchsorted(ns_f, xs, side="left")
            nxt = np.where(idx < len(ns_f),
                           ns_f[np.minimum(idx, len(ns_f) - 1)], np.inf)
            exceptional_mask = nxt > xs + hs
        in_region = ns_f[(ns_f >= cfg.bigX) & (ns_f <= cfg.bigX + span)]
        gaps = np.diff(in_region).astype(np.int64) if len(in_region) >= 2 else np.empty(0, np.int64)
    else:
        flags = det_map(lambda i: _corollary_exceptional(float(xs[i]), float(hs[i])),
                        range(len(xs)), workers)
        exceptional_mask = np.array(flags, dtype=bool)
        gaps = np.empty(0, np.int64)

    exceptional = int(exceptional_mask.sum())
    max_gap = int(gaps.max()) if len(gaps) else None
    return CoverageReport(
        sampled=cfg.samples,
        exceptional=exceptional,
        exceptional_fraction=exceptional / cfg.samples,
        max_gap=max_gap,
        gap_histogram=_gap_buckets(gaps),
    )


def gap_stats(lo: int, hi: int, params: AlmostSquareParams):
    """Max gap and powers-of-two histogram of gaps between consecutive
    almost squares in [lo, hi]."""
    ns, _, _ = _enumerate_arrays(lo, hi, params)
    if len(ns) < 2:
        raise ValueError("insufficient data: fewer than 2 almost squares in range")
    gaps = np.diff(ns)
    return int(gaps.max()), _gap_buckets(gaps)


def exceptional_trend(xs, cfg: ScanConfig,
                      workers: int | None = None) -> list[tuple[float, float]]:
    """coverage_scan at each X with identical spec/params/samples/seed."""
    out = []
    for x in xs:
        c = dataclasses.replace(cfg, bigX=float(x))
        out.append((float(x), coverage_scan(c, workers).exceptional_fraction))
    return out
