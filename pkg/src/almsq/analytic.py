"""Numerical apparatus: zeta on the critical strip, the chi factor, the
short Dirichlet polynomial over the divisor window, the product counter
Phi, and the mean-square discrepancy between Phi and its main term.

Points on the strip are plain Python complex numbers (sigma = real part).

zeta_em is the in-house ground truth: Euler-Maclaurin summation with an
explicit Bernoulli tail and a computable truncation bound. zeta_afe is the
two-short-sums approximation it validates. The two sides stay independent:
zeta_afe never calls zeta_em.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import AnalyticConfig

TWO_PI = 2.0 * math.pi

# Bernoulli numbers B_2 .. B_22 (even index), exact.
_BERNOULLI = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
    Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
    Fraction(854513, 138),
]

# Stirling series coefficients B_{2k} / (2k * (2k-1)) for log-gamma.
_STIRLING = [float(b / (2 * k * (2 * k - 1)))
             for k, b in enumerate(_BERNOULLI, start=1)]
_STIRLING_SHIFT = 24.0  # recurrence pushes |z| at least this far out


def zeta_em_bound(s: complex, terms: int = 64,
                  order: int = 8) -> tuple[complex, float]:
    """Euler-Maclaurin value of zeta(s) and a reported absolute error bound.

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{k=1..order} B_2k/(2k)! * s(s+1)...(s+2k-2) * N^(-s-2k+1)

    with N = max(terms, 3|Im s| + 10). The truncation remainder is bounded
    by |next correction term| * |s+2K+1|/(sigma+2K+1); a pairwise-summation
    roundoff estimate is added so the reported bound covers the float path.
    """
    s = complex(s)
    if s == 1:
        raise ValueError("pole at s = 1")
    if terms < 10:
        raise ValueError(f"need terms >= 10, got {terms}")
    if not 1 <= order <= len(_BERNOULLI) - 1:
        raise ValueError(f"order must be in [1, {len(_BERNOULLI) - 1}]")
    sigma = s.real
    big_n = max(int(terms), int(3.0 * abs(s.imag)) + 10)

    n = np.arange(1, big_n, dtype=np.float64)
    direct_terms = n ** (-s)
    value = complex(np.sum(direct_terms))
    value += big_n ** (1.0 - s) / (s - 1.0) + 0.5 * big_n ** (-s)

    # Correction terms; poch tracks s(s+1)...(s+2k-2).
    poch = s
    npow = float(big_n)
    for k in range(1, order + 1):
        b2k = float(_BERNOULLI[k - 1]) / math.factorial(2 * k)
        value += b2k * poch * big_n ** (-s - (2 * k - 1))
        poch *= (s + (2 * k - 1)) * (s + 2 * k)
    k = order + 1
    b_next = abs(float(_BERNOULLI[k - 1])) / math.factorial(2 * k)
    next_term = b_next * abs(poch) * npow ** (-sigma - (2 * k - 1))
    denom = sigma + 2 * k - 1
    if denom <= 0:
        raise ValueError(f"sigma too small for order {order}: {sigma}")
    trunc = next_term * abs(s + 2 * k - 1) / denom
    roundoff = 1.2e-16 * math.log2(big_n + 1) * (
        float(np.sum(np.abs(direct_terms))) + abs(value))
    return value, trunc + roundoff


def zeta_em(s: complex, terms: int = 64, order: int = 8) -> complex:
    """zeta(s) by Euler-Maclaurin summation (s != 1)."""
    return zeta_em_bound(s, terms, order)[0]


def _loggamma_right(z: complex) -> complex:
    """log Gamma on Re(z) >= 0.4, Stirling series after an argument shift.

    The imaginary part may be off by a multiple of 2*pi relative to the
    standard branch; callers only exponentiate, so that is immaterial.
    """
    z = complex(z)
    if z.real < 0.4:
        raise ValueError(f"need Re(z) >= 0.4, got {z}")
    shift = 0.0
    w = z
    while abs(w) < _STIRLING_SHIFT:
        shift += cmath.log(w)
        w += 1.0
    out = (w - 0.5) * cmath.log(w) - w + 0.5 * math.log(TWO_PI)
    w2 = w * w
    wp = w
    for coef in _STIRLING:
        out += coef / wp
        wp *= w2
    return out - shift


def chi(s: complex) -> complex:
    """The factor (2*pi)**s / (2 * Gamma(s) * cos(pi*s/2)).

    Evaluated in log space so that the exponential growth of Gamma and cos
    along the imaginary direction cancels before exponentiation. Arguments
    with Re(s) < 1/2 go through the reflection chi(s) = 1/chi(1-s); poles
    (odd integers >= 1) raise.
    """
    s = complex(s)
    if s.imag < 0.0:
        return chi(s.conjugate()).conjugate()
    if s.real < 0.5:
        return 1.0 / chi(1.0 - s)
    if s.imag == 0.0 and s.real == int(s.real) and int(s.real) % 2 == 1:
        raise ValueError(f"pole of chi at s = {s.real}")
    # log cos(pi s/2) = -i pi s/2 - log 2 + log1p(exp(i pi s)), Im s >= 0
    w = cmath.exp(1j * math.pi * s)
    log_chi = (s * math.log(TWO_PI) + 0.5j * math.pi * s
               - _loggamma_right(s) - cmath.log(1.0 + w))
    out = cmath.exp(log_chi)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise ValueError(f"pole of chi at s = {s}")
    return out


def zeta_afe(t: float) -> complex:
    """Approximate functional equation value of zeta(1/2 + it), |t| >= 2.

    Two conjugate short sums of length sqrt(t/2pi) joined by chi(1/2+it).
    Negative t is served by Schwarz reflection.
    """
    if abs(t) < 2.0:
        raise ValueError(f"domain error: need |t| >= 2, got {t}")
    if t < 0:
        return zeta_afe(-t).conjugate()
    m = int(math.sqrt(t / TWO_PI))
    n = np.arange(1, m + 1, dtype=np.float64)
    s_sum = complex(np.sum(n ** (-(0.5 + 1j * t))))
    return s_sum + chi(0.5 + 1j * t) * s_sum.conjugate()


def convexity_ratio(sigma: float, t: float, terms: int = 64) -> float:
    """|zeta(sigma+it)| / ((|t|+2)**((1-sigma)/3) * ln|t|), for grids that
    confirm the strip growth bound stays under a modest constant."""
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"need 0 <= sigma <= 1, got {sigma}")
    if abs(t) < 2.0:
        raise ValueError(f"need |t| >= 2, got {t}")
    z = abs(zeta_em(complex(sigma, t), terms=terms))
    return z / ((abs(t) + 2.0) ** ((1.0 - sigma) / 3.0) * math.log(abs(t)))


def _window_range(cfg: AnalyticConfig) -> tuple[int, int]:
    n0 = max(1, math.ceil(cfg.bigU - cfg.bigL))
    n1 = math.floor(cfg.bigU + cfg.bigL)
    return n0, n1


def dirichlet_n(s: complex, cfg: AnalyticConfig) -> complex:
    """The finite sum of n**-s over integers n in [U-L, U+L]."""
    if cfg.bigU - cfg.bigL < 0.5:
        raise ValueError("window start below 1/2: need U - L >= 1/2")
    n0, n1 = _window_range(cfg)
    if n0 > n1:
        raise ValueError(f"empty window: no integers in [{cfg.bigU - cfg.bigL}, "
                         f"{cfg.bigU + cfg.bigL}]")
    n = np.arange(n0, n1 + 1, dtype=np.float64)
    return complex(np.sum(n ** (-complex(s))))


def phi_count(y: float, cfg: AnalyticConfig) -> int:
    """Number of products n*n' in [y, y*(1+1/V)] with n in [U-L, U+L].

    Counted per n as the integers n' in [y/n, y*(1+1/V)/n], with the
    boundary comparisons done in exact rational arithmetic (y and V are
    binary64 values, hence rationals).
    """
    if not y > 0:
        raise ValueError(f"need y > 0, got {y}")
    n0, n1 = _window_range(cfg)
    if n0 > n1:
        return 0
    yq = Fraction(y)
    hq = yq * (1 + 1 / Fraction(cfg.bigV))
    yn, yd = yq.numerator, yq.denominator
    hn, hd = hq.numerator, hq.denominator
    total = 0
    for n in range(n0, n1 + 1):
        lo = -((-yn) // (yd * n))      # ceil(y / n)
        hi = hn // (hd * n)            # floor(y*(1+1/V) / n)
        if lo < 1:
            lo = 1
        if hi >= lo:
            total += hi - lo + 1
    return total


def main_term(y: float, cfg: AnalyticConfig) -> float:
    """(y/V) * N(1): the smooth prediction for phi_count(y)."""
    if not y > 0:
        raise ValueError(f"need y > 0, got {y}")
    return y / cfg.bigV * dirichlet_n(1.0, cfg).real


@dataclass(frozen=True)
class DiscrepancyReport:
    i_xy: float
    main_term_sq: float
    samples: int
    method: str = "midpoint"
    tolerance: float | None = None


def _jump_count(x: float, y_len: float, cfg: AnalyticConfig) -> int:
    """Number of jump points of Phi inside [x, x+y_len]."""
    n0, n1 = _window_range(cfg)
    if n0 > n1:
        return 0
    v = cfg.bigV
    total = 0
    for n in range(n0, n1 + 1):
        exits = math.floor((x + y_len) / n) - math.floor(x / n)
        scale = (v + 1.0) / v
        entries = math.floor((x + y_len) * scale / n) - math.floor(x * scale / n)
        total += exits + entries
    return total


def discrepancy(x: float, y_len: float, cfg: AnalyticConfig, samples: int,
                method: str = "midpoint") -> DiscrepancyReport:
    """Mean square of Phi(y) - (y/V)N(1) over [x, x+y_len].

    method="midpoint": midpoint-rule estimate over `samples` equal
    subintervals, with a reported tolerance that covers both the jumps of
    the step function Phi and the curvature of the smooth term.

    method="exact": event sweep over the jump points of Phi, integrating
    the piecewise expression in closed form (intended for y_len <= 1e6).
    """
    if not y_len > 0:
        raise ValueError(f"need Y > 0, got {y_len}")
    if samples < 2:
        raise ValueError(f"need samples >= 2, got {samples}")
    if not (2.0 <= x / (cfg.bigU * cfg.bigT ** (1.0 / 3.0)) and cfg.bigT <= x):
        warnings.warn("config outside the comfortable contour regime: "
                      "expected 2 <= X/(U*T^(1/3)) and T <= X",
                      RuntimeWarning, stacklevel=2)
    n1_val = dirichlet_n(1.0, cfg).real
    slope = n1_val / cfg.bigV
    scale = (x / cfg.bigV) * n1_val

    if method == "midpoint":
        h = y_len / samples
        ys = x + (np.arange(samples) + 0.5) * h
        vals = np.array([phi_count(float(yy), cfg) - slope * yy for yy in ys])
        i_xy = float(np.sum(vals * vals) / samples)
        jumps = _jump_count(x, y_len, cfg)
        m_bound = float(np.max(np.abs(vals))) + 2.0
        tol = jumps * h * (2.0 * m_bound + 1.0) / y_len + h * h * slope * slope / 12.0
        return DiscrepancyReport(i_xy=i_xy, main_term_sq=scale * scale,
                                 samples=samples, method="midpoint",
                                 tolerance=tol)
    if method == "exact":
        if y_len > 1e6:
            raise ValueError("exact mode supports Y <= 1e6")
        return _discrepancy_exact(x, y_len, cfg, slope, scale)
    raise ValueError(f"unknown method {method!r}")


def _discrepancy_exact(x: float, y_len: float, cfg: AnalyticConfig,
                       slope: float, scale: float) -> DiscrepancyReport:
    """Exact mean square by sweeping the jump points of Phi.

    Phi(y) = #{products p : p*V/(V+1) <= y <= p}. Events live on the exact
    rational grid with denominator (Vn+Vd): a product p activates at key
    p*Vn and deactivates after key p*(Vn+Vd), where V = Vn/Vd exactly.
    """
    n0, n1 = _window_range(cfg)
    vq = Fraction(cfg.bigV)
    vn, vd = vq.numerator, vq.denominator
    denom = vn + vd
    xq = Fraction(x)
    endq = xq + Fraction(y_len)
    key_lo = xq * denom
    key_hi = endq * denom

    events: list[tuple[int, int]] = []
    active0 = 0
    hi_p = endq * denom / vn
    for n in range(n0, n1 + 1):
        # relevant products: exit p >= x and entry p*V/(V+1) <= x+Y
        lo_mult = -((-xq.numerator) // (xq.denominator * n))          # ceil(x/n)
        hi_mult = hi_p.numerator // (hi_p.denominator * n)            # floor(./n)
        for mult in range(max(1, lo_mult), hi_mult + 1):
            p = n * mult
            k_on = p * vn
            k_off = p * denom
            if k_on <= key_lo:
                active0 += 1
            else:
                events.append((k_on, 1))
            if k_off <= key_lo:
                active0 -= 1
            else:
                events.append((k_off, -1))

    events.sort()
    total = 0.0
    phi_level = active0
    cur_key = key_lo
    i = 0
    f_denom = float(denom)

    def seg_integral(level: int, a: Fraction, b: Fraction) -> float:
        # integral of (level - slope*y)^2 dy over [a, b]/denom, written
        # about the segment midpoint: exact for the quadratic and free of
        # the cancellation that endpoint powers would suffer at y ~ 1e6
        d = b - a
        w = float(d) / f_denom
        ym = float(a + d / 2) / f_denom
        g = level - slope * ym
        return w * (g * g + slope * slope * w * w / 12.0)

    while i < len(events):
        k, delta = events[i]
        kq = Fraction(k)
        if kq >= key_hi:
            break
        if kq > cur_key:
            total += seg_integral(phi_level, cur_key, kq)
            cur_key = kq
        phi_level += delta
        i += 1
    if cur_key < key_hi:
        total += seg_integral(phi_level, cur_key, key_hi)
    return DiscrepancyReport(i_xy=total / y_len, main_term_sq=scale * scale,
                             samples=0, method="exact", tolerance=0.0)
