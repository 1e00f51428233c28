"""Parameter objects, window arithmetic, and precision-safe membership tests.

The factor window of an integer n under parameters (theta, C) is

    [sqrt(n) - C*n**theta, sqrt(n) + C*n**theta].

Window endpoints are irrational for almost every n, so membership of an
integer in the window is decided exactly, in three stages:

1. a rational fast path when both sqrt(n) and n**theta are rational
   (theta is a binary64 value, hence a dyadic rational, so n**theta is
   rational exactly when n is a perfect q-th power for theta = p/q);
2. certified double-precision bounds with a generous error margin, which
   settle every comparison comfortably away from an endpoint;
3. directed-rounding MPFR evaluation with doubling precision for the rest.

Stage 3 terminates: an integer can coincide with an endpoint only when
both sqrt(n) and n**theta are rational (distinct fractional powers of a
non-power base are linearly independent over the rationals), and that
case never reaches stage 3.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

# Margin for the double-precision fast path, as a multiple of the window
# endpoint magnitude. sqrt() is correctly rounded and libm pow() is within
# a few ulp, so accumulated relative error stays below ~2^-48; 2^-45 keeps
# an 8x safety factor. Comparisons inside the margin fall through to MPFR.
_FLOAT_MARGIN = 2.0 ** -45

_START_PREC = 96
_MAX_PREC = 1 << 16

#: Largest supported n. Products a*b are formed in Python integers, so the
#: cap exists only to keep float conversions inside their accuracy budget.
MAX_N = 2 ** 63 - 1


class ScaleError(ValueError):
    """The requested computation is infeasible at this input scale."""


class PrecisionError(RuntimeError):
    """An exact comparison stayed ambiguous at the precision ceiling."""


@dataclass(frozen=True)
class AlmostSquareParams:
    """Window parameters: the half-width of the factor window is c_coef * n**theta."""

    theta: float
    c_coef: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.c_coef)):
            raise ValueError("theta and c_coef must be finite")
        if not 0.0 <= self.theta <= 0.5:
            raise ValueError(f"theta must lie in [0, 1/2], got {self.theta}")
        if self.c_coef <= 0.0:
            raise ValueError(f"c_coef must be positive, got {self.c_coef}")


@dataclass(frozen=True)
class Window:
    """Evaluated factor window [lo, hi] with a certified endpoint error radius.

    The lower endpoint is clamped at 0 (factors are positive), so the
    midpoint identity (lo+hi)/2 == sqrt(n) only holds when no clamping
    occurred, i.e. when c_coef * n**theta <= sqrt(n).
    """

    lo: float
    hi: float
    err: float = 0.0

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"window bounds out of order: [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class IntervalSpec:
    """Interval length law H(x) = coef * x**pow * ln(x)**logpow.

    Use the classmethod presets for the standard shapes; direct
    construction gets preset="custom".
    """

    coef: float
    pow: float
    logpow: float
    preset: str = "custom"

    _PRESETS = ("theorem", "corollary", "conjecture", "custom")

    def __post_init__(self):
        if self.coef <= 0:
            raise ValueError(f"coef must be positive, got {self.coef}")
        if self.preset not in self._PRESETS:
            raise ValueError(f"unknown preset {self.preset!r}")

    @classmethod
    def theorem(cls, theta: float, eps: float = 0.1) -> "IntervalSpec":
        """H(x) = x**(1-2*theta) * ln(x)**(5+eps)."""
        return cls(1.0, 1.0 - 2.0 * theta, 5.0 + eps, "theorem")

    @classmethod
    def corollary(cls, eps: float = 0.1) -> "IntervalSpec":
        """H(x) = ln(x)**(5+eps)."""
        return cls(1.0, 0.0, 5.0 + eps, "corollary")

    @classmethod
    def conjecture(cls, theta: float, eps: float = 0.1) -> "IntervalSpec":
        """H(x) = x**(1/2-theta+eps)."""
        return cls(1.0, 0.5 - theta + eps, 0.0, "conjecture")


@dataclass(frozen=True)
class AnalyticConfig:
    """Parameters of the counting apparatus.

    bigU/bigL place the short divisor window [U-L, U+L]; bigV sets the
    relative product-interval width 1/V; bigT is the integration cutoff;
    eta the vertical line; perron_c the Perron abscissa 1 + 1/ln(X).

    L = 0 is admitted (a degenerate single-integer window) because several
    sanity checks rely on it, even though production configurations keep
    L >= 1/2.
    """

    bigU: float
    bigL: float
    bigV: float
    bigT: float
    eta: float = 0.5
    perron_c: float = 1.1

    def __post_init__(self):
        if not 0.0 <= self.bigL <= self.bigU:
            raise ValueError(f"need 0 <= L <= U, got L={self.bigL}, U={self.bigU}")
        if self.bigV < 2.0:
            raise ValueError(f"need V >= 2, got {self.bigV}")
        if self.bigT < 2.0:
            raise ValueError(f"need T >= 2, got {self.bigT}")
        if not 0.5 <= self.eta < 1.0:
            raise ValueError(f"need 1/2 <= eta < 1, got {self.eta}")
        if not self.perron_c > 1.0:
            raise ValueError(f"need c > 1, got {self.perron_c}")


def _check_n(n: int):
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n > MAX_N:
        raise OverflowError(f"range error: n exceeds 63-bit support ({n})")


def _nth_root_exact(n: int, q: int):
    """The integer q-th root of n if n is a perfect q-th power, else None."""
    if n == 1:
        return 1
    if q == 1:
        return n
    if q >= n.bit_length():
        return None  # root would be 1, but n > 1
    r = round(n ** (1.0 / q))
    for c in (r - 1, r, r + 1):
        if c >= 1 and c ** q == n:
            return c
    return None


def _pow_exact(n: int, theta: float):
    """n**theta as an exact Fraction when it is rational, else None."""
    if theta == 0.0 or n == 1:
        return Fraction(1)
    th = Fraction(theta)
    root = _nth_root_exact(n, th.denominator)
    if root is None:
        return None
    return Fraction(root ** th.numerator)


def _float_window(n: int, theta: float, c: float):
    """Approximate window endpoints and a certified absolute slop."""
    nf = float(n)
    rt = math.sqrt(nf)
    half = c * math.pow(nf, theta)
    slop = (rt + half + 1.0) * _FLOAT_MARGIN
    return rt - half, rt + half, slop


def _window_enclosure(n: int, theta: float, c: float, prec: int):
    """Directed-rounding enclosures (lo_down, lo_up, hi_down, hi_up).

    All inputs are nonnegative and theta >= 0, so every intermediate is
    monotone in its operands and per-term directed rounding is sound.
    """
    dn = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
    xp = max(prec, n.bit_length() + 2)
    x = gmpy2.mpfr(n, xp)          # exact
    th = gmpy2.mpfr(theta, 53)     # exact
    cc = gmpy2.mpfr(c, 53)         # exact
    rt_d, rt_u = dn.sqrt(x), up.sqrt(x)
    # n >= 1 so ln(n) >= 0 and theta*ln(n) >= 0: exp/log/mul all monotone.
    h_d = dn.mul(cc, dn.exp(dn.mul(th, dn.log(x))))
    h_u = up.mul(cc, up.exp(up.mul(th, up.log(x))))
    lo_d = dn.sub(rt_d, h_u)
    lo_u = up.sub(rt_u, h_d)
    hi_d = dn.add(rt_d, h_d)
    hi_u = up.add(rt_u, h_u)
    return lo_d, lo_u, hi_d, hi_u


def _in_window_mpfr(a: int, n: int, theta: float, c: float) -> bool:
    prec = _START_PREC
    while prec <= _MAX_PREC:
        lo_d, lo_u, hi_d, hi_u = _window_enclosure(n, theta, c, prec)
        if a < lo_d or a > hi_u:
            return False
        if a >= lo_u and a <= hi_d:
            return True
        prec *= 2
    raise PrecisionError(
        f"window membership of a={a} in n={n} undecided at {_MAX_PREC} bits"
    )


def in_window(a: int, n: int, params: AlmostSquareParams) -> bool:
    """Exact test of sqrt(n) - C*n**theta <= a <= sqrt(n) + C*n**theta.

    The answer is independent of working precision: the float stage only
    decides comparisons that its certified margin covers, and everything
    else escalates.
    """
    _check_n(n)
    if a < 1:
        raise ValueError(f"a must be a positive integer, got {a}")
    theta, c = params.theta, params.c_coef
    rt = math.isqrt(n)
    if rt * rt == n:
        half = _pow_exact(n, theta)
        if half is not None:
            h = Fraction(c) * half
            return rt - h <= a <= rt + h
    lo, hi, slop = _float_window(n, theta, c)
    if lo + slop <= a <= hi - slop:
        return True
    if a < lo - slop or a > hi + slop:
        return False
    return _in_window_mpfr(a, n, theta, c)


def window_of(n: int, params: AlmostSquareParams) -> Window:
    """Evaluate the factor window of n, clamping the lower endpoint at 0."""
    _check_n(n)
    lo_d, lo_u, hi_d, hi_u = _window_enclosure(n, params.theta, params.c_coef, 128)
    lo = float(lo_d)
    hi = float(hi_u)
    span_err = max(float(gmpy2.mpfr(lo_u) - gmpy2.mpfr(lo_d)),
                   float(gmpy2.mpfr(hi_u) - gmpy2.mpfr(hi_d)))
    err = span_err + 4.0 * math.ulp(max(abs(hi), 1.0))
    if lo <= 0.0:
        lo = 0.0
    return Window(lo=lo, hi=hi, err=err)


def interval_length(x: float, spec: IntervalSpec) -> float:
    """H(x) = coef * x**pow * ln(x)**logpow, natural logarithm."""
    if not x > math.e:
        raise ValueError(f"domain error: need x > e, got {x}")
    return spec.coef * x ** spec.pow * math.log(x) ** spec.logpow


def choose_parameters(X: float, params: AlmostSquareParams,
                      eps: float = 0.1) -> tuple[AnalyticConfig, float]:
    """Standard parameter choices at scale X; returns (config, Y).

    U = sqrt(X), L = C*X**theta/(2C+3), T = X**(2*theta)/ln(X)**(4+eps/2),
    V = X**(2*theta)/ln(X)**(5+eps), Y = sqrt(X)*L, eta = 1/2,
    c = 1 + 1/ln(X). Requires 1/4 < theta <= 1/2.

    The formulas are asymptotic choices: at desk scale T or V can fall
    below their floor of 2. Both are clamped up to 2 with a warning, which
    keeps desk-scale configurations runnable (U, L, and Y are unaffected).
    """
    if not 0.25 < params.theta <= 0.5:
        raise ValueError(f"need 1/4 < theta <= 1/2, got {params.theta}")
    if not X > math.e:
        raise ValueError(f"domain error: need X > e, got {X}")
    if eps <= 0:
        raise ValueError(f"need eps > 0, got {eps}")
    C = params.c_coef
    lnx = math.log(X)
    U = math.sqrt(X)
    L = C * X ** params.theta / (2.0 * C + 3.0)
    T = X ** (2.0 * params.theta) / lnx ** (4.0 + eps / 2.0)
    V = X ** (2.0 * params.theta) / lnx ** (5.0 + eps)
    if T < 2.0 or V < 2.0:
        warnings.warn(
            f"X too small for these parameters: T = {T:.6g}, V = {V:.6g}; "
            "clamping to their floor of 2", RuntimeWarning, stacklevel=2)
        T = max(T, 2.0)
        V = max(V, 2.0)
    Y = U * L
    cfg = AnalyticConfig(bigU=U, bigL=L, bigV=V, bigT=T,
                         eta=0.5, perron_c=1.0 + 1.0 / lnx)
    return cfg, Y
