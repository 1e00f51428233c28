import math
import random
import warnings

import gmpy2
import pytest

from almsq.core import (
    AlmostSquareParams,
    AnalyticConfig,
    IntervalSpec,
    choose_parameters,
    in_window,
    interval_length,
    window_of,
)


def hp_window(n, theta, c, prec=256):
    """High-precision window endpoints, independent of the library path."""
    ctx = gmpy2.context(precision=prec)
    x = gmpy2.mpfr(n, prec)
    rt = ctx.sqrt(x)
    half = gmpy2.mpfr(c, prec) * ctx.exp(gmpy2.mpfr(theta, prec) * ctx.log(x))
    return float(rt - half), float(rt + half)


class TestParams:
    def test_validation(self):
        AlmostSquareParams(0.0, 1.0)
        AlmostSquareParams(0.5, 0.1)
        with pytest.raises(ValueError):
            AlmostSquareParams(0.6, 1.0)
        with pytest.raises(ValueError):
            AlmostSquareParams(-0.1, 1.0)
        with pytest.raises(ValueError):
            AlmostSquareParams(0.3, 0.0)
        with pytest.raises(ValueError):
            AlmostSquareParams(float("nan"), 1.0)


class TestWindowOf:
    def test_exact_square_theta_half(self):
        w = window_of(16, AlmostSquareParams(0.5, 1.0))
        assert w.lo == 0.0 and w.hi == 8.0

    def test_n_one(self):
        w = window_of(1, AlmostSquareParams(0.3, 1.0))
        assert w.lo == 0.0 and w.hi == 2.0

    def test_999999_quarter(self):
        w = window_of(999999, AlmostSquareParams(0.25, 1.0))
        lo, hi = hp_window(999999, 0.25, 1.0)
        assert abs(w.lo - lo) <= w.err + 1e-12
        assert abs(w.hi - hi) <= w.err + 1e-12
        assert 968.37 < w.lo < 968.38
        assert 1031.62 < w.hi < 1031.63

    def test_clamp_at_zero(self):
        w = window_of(5, AlmostSquareParams(0.5, 2.0))
        assert w.lo == 0.0

    def test_symmetry_sampled(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randrange(2, 10**9)
            theta = rng.uniform(0.0, 0.5)
            c = rng.uniform(0.1, 2.0)
            w = window_of(n, AlmostSquareParams(theta, c))
            if w.lo > 0.0:  # unclamped
                mid = (w.lo + w.hi) / 2.0
                assert abs(mid - math.sqrt(n)) <= w.err + 1e-9 * math.sqrt(n)

    def test_range_error(self):
        with pytest.raises(OverflowError):
            window_of(2**63, AlmostSquareParams(0.3, 1.0))


class TestInWindow:
    def test_reference_example(self):
        assert in_window(999, 999999, AlmostSquareParams(0.25, 1.0))

    def test_13_low(self):
        assert not in_window(1, 13, AlmostSquareParams(0.3, 1.0))

    def test_theta_zero_center(self):
        assert in_window(4, 16, AlmostSquareParams(0.0, 1.0))

    def test_exact_rational_boundaries(self):
        # n = 625: sqrt = 25, n**0.25 = 5 exactly, window [20, 30]
        p = AlmostSquareParams(0.25, 1.0)
        assert in_window(20, 625, p)
        assert not in_window(19, 625, p)
        assert in_window(30, 625, p)
        assert not in_window(31, 625, p)

    def test_exact_boundary_fractional_c(self):
        # n = 16, theta = 1/2, C = 0.25: window [3, 5] exactly
        p = AlmostSquareParams(0.5, 0.25)
        assert in_window(3, 16, p)
        assert not in_window(2, 16, p)
        assert in_window(5, 16, p)
        assert not in_window(6, 16, p)

    def test_matches_high_precision(self):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randrange(2, 10**9)
            theta = rng.choice([0.0, 0.25, 0.3, 0.4, 0.5, rng.uniform(0, 0.5)])
            c = rng.choice([0.5, 1.0, 2.0, rng.uniform(0.1, 3.0)])
            lo, hi = hp_window(n, theta, c)
            a = max(1, int(lo) + rng.randrange(-2, 3))
            got = in_window(a, n, AlmostSquareParams(theta, c))
            # reference decision, trusting 256-bit evaluation away from ties
            ref = lo <= a <= hi
            if min(abs(a - lo), abs(a - hi)) > 1e-9:
                assert got == ref, (n, theta, c, a)

    def test_monotone_in_c(self):
        rng = random.Random(13)
        for _ in range(100):
            n = rng.randrange(2, 10**7)
            theta = rng.uniform(0.0, 0.5)
            c = rng.uniform(0.1, 1.5)
            a = rng.randrange(1, int(math.isqrt(n)) + 2)
            if in_window(a, n, AlmostSquareParams(theta, c)):
                assert in_window(a, n, AlmostSquareParams(theta, c * 2.0))

    def test_monotone_in_theta(self):
        rng = random.Random(17)
        for _ in range(100):
            n = rng.randrange(2, 10**7)
            theta = rng.uniform(0.0, 0.4)
            a = rng.randrange(1, int(math.isqrt(n)) + 2)
            p = AlmostSquareParams(theta, 1.0)
            if in_window(a, n, p):
                assert in_window(a, n, AlmostSquareParams(min(theta + 0.1, 0.5), 1.0))

    def test_deterministic(self):
        p = AlmostSquareParams(0.3, 1.0)
        vals = [in_window(999, 999999, p) for _ in range(5)]
        assert len(set(vals)) == 1

    def test_mpfr_escalation_path(self):
        # drive the directed-rounding fallback directly on non-tie cases
        from almsq.core import _in_window_mpfr
        assert _in_window_mpfr(999, 999999, 0.25, 1.0)
        assert not _in_window_mpfr(968, 999999, 0.25, 1.0)
        assert not _in_window_mpfr(1032, 999999, 0.25, 1.0)


class TestIntervalLength:
    def test_log_power(self):
        x = math.e ** 2
        spec = IntervalSpec(1.0, 0.0, 5.0)
        assert interval_length(x, spec) == pytest.approx(32.0, rel=1e-12)

    def test_sqrt(self):
        assert interval_length(1e6, IntervalSpec(1.0, 0.5, 0.0)) == pytest.approx(1000.0)

    def test_theorem_preset_scale(self):
        spec = IntervalSpec.theorem(0.3, 0.1)
        x = 1e8
        expected = x ** 0.4 * math.log(x) ** 5.1
        got = interval_length(x, spec)
        assert got == pytest.approx(expected, rel=1e-12)
        assert 4e9 < got < 5e9  # larger than x: the law is asymptotic

    def test_domain_error(self):
        with pytest.raises(ValueError):
            interval_length(2.0, IntervalSpec(1.0, 0.5, 0.0))

    def test_presets(self):
        t = IntervalSpec.theorem(0.3, 0.1)
        assert (t.coef, t.pow, t.logpow, t.preset) == (1.0, 0.4, 5.1, "theorem")
        c = IntervalSpec.corollary(0.2)
        assert (c.coef, c.pow, c.logpow, c.preset) == (1.0, 0.0, 5.2, "corollary")
        j = IntervalSpec.conjecture(0.3, 0.1)
        assert j.pow == pytest.approx(0.3)
        assert j.logpow == 0.0


class TestChooseParameters:
    def test_example_theta_03(self):
        with pytest.warns(RuntimeWarning):  # T, V clamp at this scale
            cfg, y = choose_parameters(1e8, AlmostSquareParams(0.3, 1.0), 0.1)
        assert cfg.bigU == pytest.approx(1e4)
        assert cfg.bigL == pytest.approx(10**2.4 / 5.0, rel=1e-12)
        assert y == pytest.approx(1e4 * 10**2.4 / 5.0, rel=1e-12)

    def test_example_theta_half(self):
        cfg, y = choose_parameters(1e8, AlmostSquareParams(0.5, 1.0), 0.1)
        assert cfg.bigU == pytest.approx(1e4)
        assert cfg.bigL == pytest.approx(2000.0)
        assert y == pytest.approx(2e7)
        assert cfg.eta == 0.5
        assert cfg.perron_c == pytest.approx(1.0 + 1.0 / math.log(1e8))

    def test_l_below_half_u(self):
        # C/(2C+3) < 1/2 for every C, so L < U/2 * X^(theta-1/2) * const
        for c in (0.1, 1.0, 10.0, 1e6):
            assert c / (2 * c + 3) < 0.5

    def test_l_le_half_u_at_theta_half(self):
        for x in (1e2, 1e6, 1e12):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                cfg, _ = choose_parameters(x, AlmostSquareParams(0.5, 1.0), 0.1)
            assert cfg.bigL <= cfg.bigU / 2

    def test_desk_scale_clamp(self):
        with pytest.warns(RuntimeWarning):
            cfg, _ = choose_parameters(1e6, AlmostSquareParams(0.5, 1.0), 0.1)
        assert cfg.bigV == 2.0
        assert cfg.bigT > 2.0

    def test_theta_range(self):
        with pytest.raises(ValueError):
            choose_parameters(1e8, AlmostSquareParams(0.2, 1.0), 0.1)


class TestAnalyticConfig:
    def test_validation(self):
        AnalyticConfig(bigU=10, bigL=0, bigV=10, bigT=10)
        with pytest.raises(ValueError):
            AnalyticConfig(bigU=10, bigL=11, bigV=10, bigT=10)
        with pytest.raises(ValueError):
            AnalyticConfig(bigU=10, bigL=1, bigV=1.5, bigT=10)
        with pytest.raises(ValueError):
            AnalyticConfig(bigU=10, bigL=1, bigV=10, bigT=10, eta=0.4)
