import math

import numpy as np
import pytest

from almsq.core import AlmostSquareParams, IntervalSpec, ScaleError
from almsq.detector import certify, corollary_certify, enumerate_oracle
from almsq.scanner import (
    CoverageReport,
    ScanConfig,
    coverage_scan,
    exceptional_trend,
    gap_stats,
)

P03 = AlmostSquareParams(0.3, 1.0)


def scan_cfg(**kw):
    base = dict(bigX=1e4, params=P03, spec=IntervalSpec(1.0, 0.4, 0.0),
                samples=200, seed=0)
    base.update(kw)
    return ScanConfig(**base)


def sample_oracle_theorem(cfg):
    """Independent per-sample check: certify each integer in the interval."""
    span = cfg.effective_span
    xs = cfg.bigX + np.arange(cfg.samples) * (span / cfg.samples)
    exceptional = 0
    for x in xs:
        h = cfg.spec.coef * x ** cfg.spec.pow * math.log(x) ** cfg.spec.logpow
        found = False
        for n in range(math.ceil(x), math.floor(x + h) + 1):
            if certify(n, cfg.params) is not None:
                found = True
                break
        exceptional += not found
    return exceptional / cfg.samples


class TestCoverageScan:
    def test_perfect_square_coverage(self):
        # H(x) = 2.1*sqrt(x) >= 2*sqrt(x)+1 for x >= 100: no exceptions ever
        cfg = scan_cfg(bigX=1e5, spec=IntervalSpec(2.1, 0.5, 0.0), samples=500)
        assert coverage_scan(cfg).exceptional == 0

    def test_theorem_preset_covers_at_desk_scale(self):
        # the preset interval exceeds x itself here, so nothing is missed
        cfg = scan_cfg(bigX=1e4, spec=IntervalSpec.theorem(0.3, 0.1), samples=50)
        assert coverage_scan(cfg).exceptional == 0

    def test_matches_per_sample_oracle(self):
        cfg = scan_cfg(bigX=3e4, samples=60)
        rep = coverage_scan(cfg)
        assert rep.exceptional_fraction == pytest.approx(sample_oracle_theorem(cfg))

    def test_deterministic(self):
        cfg = scan_cfg(samples=300, seed=42)
        assert coverage_scan(cfg) == coverage_scan(cfg)

    def test_worker_independent(self):
        cfg = scan_cfg(bigX=2e4, samples=200, seed=9, mode="corollary",
                       spec=IntervalSpec(1.0, 0.0, 2.0))
        assert coverage_scan(cfg, workers=1) == coverage_scan(cfg, workers=7)

    def test_monotone_in_coef(self):
        small = coverage_scan(scan_cfg(spec=IntervalSpec(1.0, 0.3, 0.0), samples=400))
        big = coverage_scan(scan_cfg(spec=IntervalSpec(2.0, 0.3, 0.0), samples=400))
        assert big.exceptional <= small.exceptional

    def test_monotone_in_c(self):
        spec = IntervalSpec(1.0, 0.25, 0.0)
        a = coverage_scan(scan_cfg(spec=spec, params=AlmostSquareParams(0.3, 0.5),
                                   samples=400))
        b = coverage_scan(scan_cfg(spec=spec, params=AlmostSquareParams(0.3, 1.5),
                                   samples=400))
        assert b.exceptional <= a.exceptional

    def test_seeded_sampling_reproducible(self):
        cfg = scan_cfg(samples=100, seed=77)
        assert coverage_scan(cfg) == coverage_scan(cfg)

    def test_degenerate_interval(self):
        with pytest.raises(ScaleError):
            coverage_scan(scan_cfg(bigX=30.0, spec=IntervalSpec(0.01, 0.0, 0.0)))

    def test_corollary_mode_against_certifier(self):
        cfg = scan_cfg(bigX=5e4, samples=40, mode="corollary",
                       spec=IntervalSpec(1.0, 0.0, 2.0))
        rep = coverage_scan(cfg)
        xs = cfg.bigX + np.arange(cfg.samples) * (cfg.effective_span / cfg.samples)
        expected = 0
        for x in xs:
            h = math.log(x) ** 2
            hit = any(corollary_certify(n, float(x)) is not None
                      for n in range(math.ceil(x), math.floor(x + h) + 1))
            expected += not hit
        assert rep.exceptional == expected

    def test_consistency_with_exact_measure(self):
        # dense even sampling converges to the exact measure of the
        # exceptional set computed from the enumerated gap structure
        params = AlmostSquareParams(0.3, 1.0)
        big_x, span, h = 3000.0, 3000.0, 25.0
        cfg = ScanConfig(bigX=big_x, params=params,
                         spec=IntervalSpec(h, 0.0, 0.0), samples=60_000, seed=0)
        rep = coverage_scan(cfg)
        ns = [w.n for w in enumerate_oracle(int(big_x) - 1, int(2 * big_x + h) + 2,
                                            params)]
        measure = 0.0
        prev = big_x  # x below the first n in range is covered iff n <= x+h
        for n in ns:
            if n < big_x:
                prev = max(prev, big_x)
                continue
            lo_seg = max(prev, big_x)
            hi_seg = min(n - h, big_x + span)
            if hi_seg > lo_seg:
                measure += hi_seg - lo_seg
            prev = n
            if n >= big_x + span:
                break
        exact_fraction = measure / span
        assert rep.exceptional_fraction == pytest.approx(exact_fraction, abs=0.01)


class TestGapStats:
    def test_against_oracle_enumeration(self):
        params = AlmostSquareParams(0.5, 1.0)
        max_gap, hist = gap_stats(1, 100, params)
        ns = [w.n for w in enumerate_oracle(1, 100, params)]
        gaps = np.diff(ns)
        assert max_gap == gaps.max()
        assert sum(c for _, _, c in hist) == len(gaps)

    def test_squares_spacing(self):
        # tiny window at theta=0: only perfect squares qualify
        max_gap, hist = gap_stats(100, 400, AlmostSquareParams(0.0, 0.4))
        assert max_gap == 39  # between 19^2 and 20^2
        assert all(16 <= lo and hi <= 64 for lo, hi, _ in hist)

    def test_bucket_edges(self):
        _, hist = gap_stats(1, 200, AlmostSquareParams(0.5, 1.0))
        for lo, hi, count in hist:
            assert hi == 2 * lo and count > 0

    def test_insufficient_data(self):
        with pytest.raises(ValueError):
            gap_stats(2, 3, AlmostSquareParams(0.0, 0.4))


class TestTrend:
    def test_singleton_equals_scan(self):
        cfg = scan_cfg(samples=150)
        tr = exceptional_trend([1e4], cfg)
        assert tr == [(1e4, coverage_scan(cfg).exceptional_fraction)]

    def test_multiple_points(self):
        cfg = scan_cfg(samples=150)
        tr = exceptional_trend([1e4, 3e4], cfg)
        assert [x for x, _ in tr] == [1e4, 3e4]
        assert all(0.0 <= f <= 1.0 for _, f in tr)
