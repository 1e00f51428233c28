"""Brute-force evaluation of the diagonal/off-diagonal window sums, the
critical-line second moment, the window-polynomial mean value, and the
truncation-error majorant, each paired with its asymptotic upper bound.

The asymptotic bounds hide constants; these checks therefore report the
ratio lhs/bound per grid point and pin the per-check maximum as a
regression value rather than asserting ratio <= 1.

Each quadruple sum is computed two ways that must agree exactly: a
product-hashing join (production path) and an exhaustive quadruple loop
(cross-check). Both reduce the same per-product counts through an
identical, canonically ordered summation, so agreement is bitwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .analytic import zeta_em
from .core import AlmostSquareParams, AnalyticConfig, ScaleError, choose_parameters
from .util import det_map

_MAX_SIDE_PAIRS = 1_000_000_000   # guard for candidate (n, m) pairs per side
_MAX_JOIN = 40_000_000            # guard for distinct-product join size


@dataclass(frozen=True)
class BoundReport:
    """One grid point: computed quantity, bound at implied constant 1, ratio."""

    lhs: float
    bound: float
    ratio: float
    grid_point: tuple
    terms: tuple = ()

    def __post_init__(self):
        if self.lhs < 0 or self.bound <= 0:
            raise ValueError(f"need lhs >= 0 and bound > 0, got {self}")


@dataclass(frozen=True)
class LemmaGrid:
    """A grid of evaluation points plus the window-width exponent beta it
    must honor (the diagonal check needs 0 < L <= U/2 only; the
    off-diagonal check needs U**beta < L with beta < 1/2; the second
    moment needs the same shape with beta in [1/2, 1])."""

    points: tuple
    beta: float = 0.0
    beta_range: tuple = (0.0, 1.0)

    def __post_init__(self):
        lo, hi = self.beta_range
        if self.beta != 0.0 and not lo <= self.beta <= hi:
            raise ValueError(f"beta {self.beta} outside {self.beta_range}")


def _int_range(lo: float, hi_excl: float) -> np.ndarray:
    """Integers in the half-open interval [lo, hi_excl)."""
    start = math.ceil(lo)
    stop = math.ceil(hi_excl)
    return np.arange(start, stop, dtype=np.int64)


def _window_ints(u: float, el: float) -> np.ndarray:
    return np.arange(math.ceil(u - el), math.floor(u + el) + 1, dtype=np.int64)


def _rep_counts(n_vals: np.ndarray, m_vals: np.ndarray):
    """Distinct products of n*m with multiplicity, products ascending."""
    prods = (n_vals[:, None] * m_vals[None, :]).ravel()
    return np.unique(prods, return_counts=True)


def _check_side_sizes(n1, n2, u, el):
    c1 = len(_int_range(n1, 2 * n1)) * len(_window_ints(u, el))
    c2 = len(_int_range(n2, 2 * n2)) * len(_window_ints(u, el))
    if max(c1, c2) > _MAX_SIDE_PAIRS:
        raise ScaleError(f"grid too large: {max(c1, c2)} candidate pairs per side")
    return c1, c2


def _s1_reduce(p1, c1, p2, c2) -> float:
    """Canonical reduction shared by both strategies: sum of
    c1(p)*c2(p)/p over common products p ascending."""
    common, i1, i2 = np.intersect1d(p1, p2, assume_unique=True,
                                    return_indices=True)
    if len(common) == 0:
        return 0.0
    return float(np.sum(c1[i1] * c2[i2] / common.astype(np.float64)))


def s1_sum(n1: float, n2: float, u: float, el: float) -> float:
    """Diagonal sum: over n_i in [N_i, 2N_i), m_i in [U-L, U+L] with
    n1*m1 = n2*m2, of 1/sqrt(n1*n2*m1*m2). Equal products make each term
    exactly 1/(n1*m1), so the sum reduces to matched product counts.
    """
    if not 0 < el <= u / 2:
        raise ValueError(f"need 0 < L <= U/2, got L={el}, U={u}")
    _check_side_sizes(n1, n2, u, el)
    ms = _window_ints(u, el)
    if len(ms) == 0:
        return 0.0
    p1, c1 = _rep_counts(_int_range(n1, 2 * n1), ms)
    p2, c2 = _rep_counts(_int_range(n2, 2 * n2), ms)
    return _s1_reduce(p1, c1, p2, c2)


def s1_sum_exhaustive(n1: float, n2: float, u: float, el: float) -> float:
    """Quadruple-loop cross-check of s1_sum (same canonical reduction)."""
    if not 0 < el <= u / 2:
        raise ValueError(f"need 0 < L <= U/2, got L={el}, U={u}")
    ms = _window_ints(u, el)
    n1s = _int_range(n1, 2 * n1)
    n2s = _int_range(n2, 2 * n2)
    counts1: dict[int, int] = {}
    counts2: dict[int, int] = {}
    for a in n1s:
        for m in ms:
            p = int(a) * int(m)
            counts1[p] = counts1.get(p, 0) + 1
    for a in n2s:
        for m in ms:
            p = int(a) * int(m)
            counts2[p] = counts2.get(p, 0) + 1
    p1 = np.array(sorted(counts1), dtype=np.int64)
    c1 = np.array([counts1[p] for p in p1], dtype=np.int64)
    p2 = np.array(sorted(counts2), dtype=np.int64)
    c2 = np.array([counts2[p] for p in p2], dtype=np.int64)
    if len(p1) == 0 or len(p2) == 0:
        return 0.0
    return _s1_reduce(p1, c1, p2, c2)


def s1_bound(n1, n2, u, el) -> float:
    return (el + math.sqrt(u)) / u * math.log(n1 * n2 * u) ** 2


def _s2_reduce(p1, c1, p2, c2) -> float:
    """Canonical off-diagonal reduction: sum over product pairs p1 != p2 of
    c1*c2 / (sqrt(p1*p2) * |log(p2/p1)|), row-major over ascending products."""
    if len(p1) * len(p2) > _MAX_JOIN:
        raise ScaleError(f"grid too large: {len(p1)} x {len(p2)} product pairs")
    a = p1.astype(np.float64)[:, None]
    b = p2.astype(np.float64)[None, :]
    logs = np.abs(np.log1p((b - a) / a))
    with np.errstate(divide="ignore"):
        w = (c1.astype(np.float64)[:, None] * c2.astype(np.float64)[None, :]
             / (np.sqrt(a * b) * logs))
    w[p1[:, None] == p2[None, :]] = 0.0
    return float(np.sum(w))


def s2_sum(n1: float, n2: float, u: float, el: float,
           beta: float = 0.4) -> float:
    """Off-diagonal sum: as s1_sum but over n1*m1 != n2*m2, each term
    weighted by 1/|log(n2*m2/(n1*m1))|. Requires U**beta < L <= U/2."""
    if not (0.0 < beta < 0.5):
        raise ValueError(f"need 0 < beta < 1/2, got {beta}")
    if not u ** beta < el <= u / 2:
        raise ValueError(f"need U^beta < L <= U/2, got L={el}, U={u}, beta={beta}")
    _check_side_sizes(n1, n2, u, el)
    ms = _window_ints(u, el)
    if len(ms) == 0:
        return 0.0
    p1, c1 = _rep_counts(_int_range(n1, 2 * n1), ms)
    p2, c2 = _rep_counts(_int_range(n2, 2 * n2), ms)
    return _s2_reduce(p1, c1, p2, c2)


def s2_sum_exhaustive(n1: float, n2: float, u: float, el: float,
                      beta: float = 0.4) -> float:
    """Quadruple-loop cross-check of s2_sum (same canonical reduction)."""
    if not u ** beta < el <= u / 2:
        raise ValueError(f"need U^beta < L <= U/2, got L={el}, U={u}, beta={beta}")
    ms = _window_ints(u, el)
    n1s = _int_range(n1, 2 * n1)
    n2s = _int_range(n2, 2 * n2)
    counts1: dict[int, int] = {}
    counts2: dict[int, int] = {}
    for a in n1s:
        for m in ms:
            p = int(a) * int(m)
            counts1[p] = counts1.get(p, 0) + 1
    for a in n2s:
        for m in ms:
            p = int(a) * int(m)
            counts2[p] = counts2.get(p, 0) + 1
    p1 = np.array(sorted(counts1), dtype=np.int64)
    c1 = np.array([counts1[p] for p in p1], dtype=np.int64)
    p2 = np.array(sorted(counts2), dtype=np.int64)
    c2 = np.array([counts2[p] for p in p2], dtype=np.int64)
    if len(p1) == 0 or len(p2) == 0:
        return 0.0
    return _s2_reduce(p1, c1, p2, c2)


def s2_bound(n1, n2, u, el) -> float:
    lg = math.log(n1 * n2 * u)
    return (math.sqrt(n1 * n2) * el ** 2 / u * lg
            + n1 * n2 * el ** 2 / u ** 2 * lg)


def _max_step(t_hi: float, u: float, el: float) -> float:
    """Quadrature step that resolves the integrand oscillation: the
    integrand frequency is bounded by ln(U+L) plus the zeta sum length."""
    freq = math.log(u + el) + max(0.0, 0.5 * math.log(t_hi / (2.0 * math.pi)))
    return math.pi / freq


def _simpson_grid(t_lo: float, t_hi: float, step: float):
    m = 2 * max(1, math.ceil((t_hi - t_lo) / (2.0 * step)))
    ts = np.linspace(t_lo, t_hi, m + 1)
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    h = (t_hi - t_lo) / m
    return ts, w * h / 3.0


def _n_on_line(ts: np.ndarray, u: float, el: float) -> np.ndarray:
    """|N(1/2+it)|^2 on a t grid, vectorized over the window."""
    n0 = math.ceil(u - el)
    n1 = math.floor(u + el)
    if u - el < 0.5 or n0 > n1:
        raise ValueError("empty or sub-1/2 window")
    ns = np.arange(n0, n1 + 1, dtype=np.float64)
    out = np.empty(len(ts))
    chunk = max(1, 4_000_000 // len(ns))
    lns = np.log(ns)
    amp = ns ** -0.5
    for i in range(0, len(ts), chunk):
        tt = ts[i:i + chunk]
        vals = np.sum(amp[None, :] * np.exp(-1j * tt[:, None] * lns[None, :]),
                      axis=1)
        out[i:i + chunk] = np.abs(vals) ** 2
    return out


def second_moment(t_hi: float, u: float, el: float, step: float) -> float:
    """Composite-Simpson estimate of the integral over [1, T] of
    |zeta(1/2+it) * N(1/2+it)|^2 dt."""
    if t_hi <= 1.0:
        return 0.0
    max_step = _max_step(t_hi, u, el)
    if step > max_step:
        raise ValueError(f"resolution error: step {step} exceeds {max_step:.6g}")
    ts, weights = _simpson_grid(1.0, t_hi, step)
    nsq = _n_on_line(ts, u, el)
    zsq = np.array([abs(zeta_em(complex(0.5, t))) ** 2 for t in ts])
    return float(np.sum(weights * zsq * nsq))


def second_moment_bound(t_hi, u, el) -> float:
    lg = math.log(t_hi * u)
    return t_hi * el / u * lg ** 2 + math.sqrt(t_hi) * el ** 2 / u * lg


def second_moment_terms(t_hi, u, el) -> tuple:
    """The two bound terms plus the third term the proof display carries."""
    lg = math.log(t_hi * u)
    return (t_hi * el / u * lg ** 2,
            math.sqrt(t_hi) * el ** 2 / u * lg,
            t_hi * el ** 2 / u ** 2 * lg)


def mv_mean_value(u_hi: float, u: float, el: float, step: float) -> float:
    """Composite-Simpson estimate of the integral over [1, u_hi] of
    |N(1/2+it)|^2 dt, checked against the mean-value bound u*L/U + L."""
    if u_hi <= 1.0:
        return 0.0
    max_step = _max_step(u_hi, u, el)
    if step > max_step:
        raise ValueError(f"resolution error: step {step} exceeds {max_step:.6g}")
    ts, weights = _simpson_grid(1.0, u_hi, step)
    nsq = _n_on_line(ts, u, el)
    return float(np.sum(weights * nsq))


def mv_bound(u_hi, u, el) -> float:
    return u_hi * el / u + el


def perron_majorant(x: float, t_cut: float, u: float, el: float) -> float:
    """Exact value of the truncation-error majorant at x:

        sum over n in (x/2, 2x), n != x, of a_n * min(1, x/(T|x-n|))
        + (4x)**c / T * sum over n of a_n / n**c

    with a_n counting divisors of n inside [U-L, U+L] and c = 1 + 1/ln(x).
    The first sum sieves multiples of each window integer m; the tail is
    zeta(c) * sum over m of m**-c.
    """
    if not x > 2.0:
        raise ValueError(f"need x > 2, got {x}")
    if t_cut < 2.0:
        raise ValueError(f"need T >= 2, got {t_cut}")
    ms = _window_ints(u, el)
    if len(ms) == 0:
        return 0.0
    c = 1.0 + 1.0 / math.log(x)
    first = 0.0
    for m in ms:
        m = int(m)
        k_lo = int(x / (2.0 * m)) + 1          # first k with 2*m*k > x
        while 2 * m * k_lo <= x:
            k_lo += 1
        while k_lo > 1 and 2 * m * (k_lo - 1) > x:
            k_lo -= 1
        k_hi = int(2.0 * x / m)                 # last k with m*k < 2x
        while m * k_hi >= 2.0 * x:
            k_hi -= 1
        while m * (k_hi + 1) < 2.0 * x:
            k_hi += 1
        if k_hi < k_lo:
            continue
        ks = np.arange(k_lo, k_hi + 1, dtype=np.float64)
        n_vals = m * ks
        diff = np.abs(x - n_vals)
        mask = n_vals != x
        contrib = np.minimum(1.0, x / (t_cut * diff[mask]))
        first += float(np.sum(contrib))
    tail = ((4.0 * x) ** c / t_cut
            * float(np.sum(ms.astype(np.float64) ** -c))
            * zeta_em(complex(c, 0.0)).real)
    return first + tail


def perron_mean_square(big_x: float, big_y: float, a: float, t_cut: float,
                       u: float, el: float, samples: int,
                       workers: int | None = None) -> float:
    """Sample-mean estimate of (1/Y) * integral over [X, X+Y] of
    |majorant(a*y)|^2 dy, on a midpoint grid of `samples` points."""
    if not 1.0 <= a <= 2.0:
        raise ValueError(f"need 1 <= a <= 2, got {a}")
    if not (1.0 <= t_cut <= big_x and 1.0 <= big_y <= big_x):
        raise ValueError("need 1 <= T, Y <= X")
    if samples < 1:
        raise ValueError(f"need samples >= 1, got {samples}")
    h = big_y / samples
    ys = big_x + (np.arange(samples) + 0.5) * h
    vals = det_map(lambda y: perron_majorant(a * float(y), t_cut, u, el) ** 2,
                   ys, workers)
    return float(np.sum(np.array(vals)) / samples)


def perron_bound(big_x, big_y, t_cut, u, el) -> float:
    lg2 = math.log(big_x) ** 2
    return (el ** 2 * big_x ** 2 / (u ** 2 * t_cut ** 2) * lg2
            + big_x * el ** 2 / (t_cut * big_y) * lg2)


@dataclass(frozen=True)
class MeasureBound:
    """Predicted exceptional measure at scale X: the four bound terms, the
    total, and the predicted fraction |B|/Y (vacuous when >= 1)."""

    terms: tuple
    total: float
    big_y: float
    fraction: float
    vacuous: bool
    config: AnalyticConfig = field(repr=False, default=None)


def measure_bound(big_x: float, params: AlmostSquareParams,
                  eps: float = 0.1) -> MeasureBound:
    """Evaluate the four-term exceptional-measure bound under the standard
    parameter choices at scale X and report the predicted fraction."""
    cfg, big_y = choose_parameters(big_x, params, eps)
    lg = math.log(big_x)
    u, el, v, t = cfg.bigU, cfg.bigL, cfg.bigV, cfg.bigT
    t1 = t * (u / el) * lg ** 3
    t2 = math.sqrt(t) * u * lg ** 2
    t3 = big_y * v ** 2 / t ** 2 * lg ** 2
    t4 = v ** 2 * u ** 2 / (big_x * t) * lg ** 2
    total = t1 + t2 + t3 + t4
    fraction = total / big_y
    return MeasureBound(terms=(t1, t2, t3, t4), total=total, big_y=big_y,
                        fraction=fraction, vacuous=fraction >= 1.0,
                        config=cfg)


# ---------------------------------------------------------------------------
# Shipped default grids and the check runner
# ---------------------------------------------------------------------------

CHECKS = ("1", "2", "3", "4", "mv")

_DEFAULT_GRIDS = {
    # (N1, N2, U, L): 0 < L <= U/2
    "1": LemmaGrid(points=(
        (8, 8, 32, 16), (16, 16, 64, 32), (12, 8, 50, 20),
        (32, 32, 128, 64), (64, 64, 256, 100), (16, 64, 200, 64),
        (1000, 100, 100, 50),
    )),
    # (N1, N2, U, L): U^0.4 < L <= U/2
    "2": LemmaGrid(points=(
        (8, 8, 32, 8), (8, 8, 32, 16), (16, 16, 64, 16),
        (16, 8, 64, 32), (16, 16, 64, 32), (8, 16, 48, 24),
    ), beta=0.4, beta_range=(0.0, 0.5)),
    # (T, U, L): U^0.6 < L <= U/2
    "3": LemmaGrid(points=(
        (50, 50, 25), (100, 50, 16), (50, 100, 25),
        (100, 100, 50), (100, 100, 25), (200, 100, 50),
    ), beta=0.6, beta_range=(0.5, 1.0)),
    # (X, Y, a, T, U, L, samples)
    "4": LemmaGrid(points=(
        (1e5, 1e3, 1.0, 1e3, 300, 30, 200),
        (1e5, 1e3, 2.0, 1e3, 300, 30, 200),
        (1e5, 2e3, 1.0, 500, 200, 20, 200),
        (5e4, 1e3, 1.5, 1e3, 150, 15, 200),
    )),
    # (u, U, L): L <= U/2
    "mv": LemmaGrid(points=(
        (100, 100, 10), (100, 100, 50), (200, 200, 100),
        (500, 300, 60), (1000, 1000, 100), (1000, 1000, 500),
        (300, 64, 32), (500, 81, 27), (750, 400, 128), (1000, 500, 250),
    )),
}


def default_grid(check: str) -> LemmaGrid:
    if check not in _DEFAULT_GRIDS:
        raise ValueError(f"unknown check {check!r}, expected one of {CHECKS}")
    return _DEFAULT_GRIDS[check]


def _eval_point(check: str, point: tuple, beta: float) -> BoundReport:
    if check == "1":
        n1, n2, u, el = point
        lhs = s1_sum(n1, n2, u, el)
        bound = s1_bound(n1, n2, u, el)
        return BoundReport(lhs=lhs, bound=bound, ratio=lhs / bound,
                           grid_point=point)
    if check == "2":
        n1, n2, u, el = point
        lhs = s2_sum(n1, n2, u, el, beta)
        bound = s2_bound(n1, n2, u, el)
        return BoundReport(lhs=lhs, bound=bound, ratio=lhs / bound,
                           grid_point=point)
    if check == "3":
        t_hi, u, el = point
        step = 0.8 * _max_step(t_hi, u, el)
        lhs = second_moment(t_hi, u, el, step)
        bound = second_moment_bound(t_hi, u, el)
        return BoundReport(lhs=lhs, bound=bound, ratio=lhs / bound,
                           grid_point=point,
                           terms=second_moment_terms(t_hi, u, el))
    if check == "4":
        big_x, big_y, a, t_cut, u, el, samples = point
        lhs = perron_mean_square(big_x, big_y, a, t_cut, u, el, int(samples))
        bound = perron_bound(big_x, big_y, t_cut, u, el)
        return BoundReport(lhs=lhs, bound=bound, ratio=lhs / bound,
                           grid_point=point)
    if check == "mv":
        u_hi, u, el = point
        step = 0.8 * _max_step(u_hi, u, el)
        lhs = mv_mean_value(u_hi, u, el, step)
        bound = mv_bound(u_hi, u, el)
        return BoundReport(lhs=lhs, bound=bound, ratio=lhs / bound,
                           grid_point=point)
    raise ValueError(f"unknown check {check!r}")


def run_check(check: str, grid: LemmaGrid | None = None,
              workers: int | None = None) -> list[BoundReport]:
    """Evaluate one check over a grid; reports come back in grid order."""
    check = str(check)
    if grid is None:
        grid = default_grid(check)
    return det_map(lambda pt: _eval_point(check, pt, grid.beta),
                   grid.points, workers)
