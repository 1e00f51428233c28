"""Almost-square certification and range enumeration.

Two independent algorithms must produce identical answers:

* ``enumerate_range`` generates candidate factor pairs directly inside the
  factor window (meet-in-the-window) and keeps the pairs that verify;
* ``enumerate_oracle`` applies per-integer trial division over the window,
  exactly ``certify`` run on every n in the range.

Both canonicalize a witness as the factorization with the smallest first
factor, so agreement is witness-by-witness, not just set-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    MAX_N,
    AlmostSquareParams,
    _float_window,
    in_window,
)

# Block sizing for the vectorized trial-division oracle: bounded so the
# (block x divisor-range) remainder matrix stays around 32 MB.
_ORACLE_BLOCK_ELEMS = 4_000_000
_ENUM_CHUNK_PAIRS = 4_000_000


@dataclass(frozen=True)
class Witness:
    """A certified factorization n = a*b with both factors in the window."""

    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.a > self.b:
            raise ValueError(f"need 1 <= a <= b, got a={self.a}, b={self.b}")
        if self.a * self.b != self.n:
            raise ValueError(f"{self.a} * {self.b} != {self.n}")


@dataclass(frozen=True)
class CorollaryWitness:
    """A factorization n = a*b with both factors in [sqrt(x)/2, 2*sqrt(x)].

    The factor bounds are anchored at x, not at n.
    """

    n: int
    a: int
    b: int
    x: float

    def __post_init__(self):
        if self.a < 1 or self.a > self.b:
            raise ValueError(f"need 1 <= a <= b, got a={self.a}, b={self.b}")
        if self.a * self.b != self.n:
            raise ValueError(f"{self.a} * {self.b} != {self.n}")


def _check_range(lo: int, hi: int):
    if lo < 1 or hi < lo:
        raise ValueError(f"need 1 <= lo <= hi, got lo={lo}, hi={hi}")
    if hi > MAX_N:
        raise OverflowError(f"range error: hi exceeds 63-bit support ({hi})")


def _divisor_floor(n: int, theta: float, c: float) -> int:
    """A safe integer lower bound for qualifying divisors a of n.

    A qualifying a satisfies both a >= sqrt(n) - c*n**theta and, through
    its cofactor, a >= n / (sqrt(n) + c*n**theta). Float evaluation is
    padded so the bound can only be too low; exact checks reject extras.
    """
    lo, hi, slop = _float_window(n, theta, c)
    bound = max(lo - slop, n / (hi + slop) - 2.0, 1.0)
    return max(1, int(bound))


def certify(n: int, params: AlmostSquareParams) -> Witness | None:
    """The witness with the smallest first factor, or None.

    Scans divisor candidates a ascending over the window's integer range
    up to floor(sqrt(n)) and verifies both factors exactly.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if n > MAX_N:
        raise OverflowError(f"range error: n exceeds 63-bit support ({n})")
    a_lo = _divisor_floor(n, params.theta, params.c_coef)
    a_hi = math.isqrt(n)
    for a in range(a_lo, a_hi + 1):
        if n % a == 0:
            b = n // a
            if in_window(a, n, params) and in_window(b, n, params):
                return Witness(n=n, a=a, b=b)
    return None


def _window_filter(n: np.ndarray, a: np.ndarray, b: np.ndarray,
                   params: AlmostSquareParams):
    """Classify factor pairs: definitely-in, definitely-out, or ambiguous."""
    nf = n.astype(np.float64)
    rt = np.sqrt(nf)
    half = params.c_coef * np.power(nf, params.theta)
    lo = rt - half
    hi = rt + half
    slop = (rt + half + 1.0) * 2.0 ** -45
    af = a.astype(np.float64)
    bf = b.astype(np.float64)
    definite_in = ((af >= lo + slop) & (af <= hi - slop)
                   & (bf >= lo + slop) & (bf <= hi - slop))
    definite_out = ((af < lo - slop) | (af > hi + slop)
                    | (bf < lo - slop) | (bf > hi + slop))
    return definite_in, ~definite_in & ~definite_out


def _enumerate_arrays(lo: int, hi: int, params: AlmostSquareParams):
    """All almost squares in [lo, hi] as arrays (n, a, b), sorted by n.

    Meet-in-the-window generation: factor candidates a run over
    [sqrt(lo) - C*hi**theta, sqrt(hi)]; for each a, cofactors b >= a are
    capped by the product range and by the largest window width in range.
    Candidates are settled by the certified float filter, with exact
    fallback for the rare ambiguous pairs. One witness (smallest a) per n.
    """
    _check_range(lo, hi)
    theta, c = params.theta, params.c_coef
    pad = c * hi ** theta
    a_min = max(1, int(math.sqrt(lo) - pad - 2.0))
    a_max = math.isqrt(hi)
    b_span = int(2.0 * pad) + 2

    ns, aas, bs = [], [], []
    chunk = max(64, _ENUM_CHUNK_PAIRS // (b_span + 2))
    for start in range(a_min, a_max + 1, chunk):
        a_vals = np.arange(start, min(start + chunk, a_max + 1), dtype=np.int64)
        b_lo = np.maximum(a_vals, (lo - 1) // a_vals + 1)
        b_hi = np.minimum(hi // a_vals, a_vals + b_span)
        counts = np.maximum(b_hi - b_lo + 1, 0)
        total = int(counts.sum())
        if total == 0:
            continue
        a_rep = np.repeat(a_vals, counts)
        starts = np.cumsum(counts) - counts
        b_rep = np.repeat(b_lo, counts) + (np.arange(total) - np.repeat(starts, counts))
        n_rep = a_rep * b_rep
        keep, unsure = _window_filter(n_rep, a_rep, b_rep, params)
        if unsure.any():
            for i in np.nonzero(unsure)[0]:
                ni, ai, bi = int(n_rep[i]), int(a_rep[i]), int(b_rep[i])
                if in_window(ai, ni, params) and in_window(bi, ni, params):
                    keep[i] = True
        if keep.any():
            ns.append(n_rep[keep])
            aas.append(a_rep[keep])
            bs.append(b_rep[keep])

    if not ns:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    n_all = np.concatenate(ns)
    a_all = np.concatenate(aas)
    b_all = np.concatenate(bs)
    order = np.lexsort((a_all, n_all))
    n_all, a_all, b_all = n_all[order], a_all[order], b_all[order]
    first = np.ones(len(n_all), dtype=bool)
    first[1:] = n_all[1:] != n_all[:-1]
    return n_all[first], a_all[first], b_all[first]


def enumerate_range(lo: int, hi: int,
                    params: AlmostSquareParams) -> list[Witness]:
    """One Witness (smallest a) per almost square in [lo, hi], sorted by n."""
    n, a, b = _enumerate_arrays(lo, hi, params)
    return [Witness(n=int(ni), a=int(ai), b=int(bi))
            for ni, ai, bi in zip(n, a, b)]


def enumerate_oracle(lo: int, hi: int,
                     params: AlmostSquareParams) -> list[Witness]:
    """Same contract as enumerate_range, by per-n trial division.

    Semantically this is certify() applied to every n in [lo, hi]; the
    divisibility tests are batched into remainder blocks so that the
    O((hi-lo) * hi**theta) work runs at array speed.
    """
    _check_range(lo, hi)
    theta, c = params.theta, params.c_coef
    # Global candidate floor: every qualifying divisor of every n in range
    # satisfies a >= n/whi(n) >= lo/whi(hi). Divisors found below a given
    # n's own floor are rejected by the exact verification.
    _, hi_w, slop = _float_window(hi, theta, c)
    a_min = max(1, int(lo / (hi_w + slop) - 2.0))
    a_max = math.isqrt(hi)
    if a_min > a_max:
        return []
    divisors = np.arange(a_min, a_max + 1, dtype=np.int64)
    block = max(1, _ORACLE_BLOCK_ELEMS // len(divisors))

    out: list[Witness] = []
    for n0 in range(lo, hi + 1, block):
        n1 = min(n0 + block, hi + 1)
        nb = np.arange(n0, n1, dtype=np.int64)
        rows, cols = np.nonzero((nb[:, None] % divisors[None, :]) == 0)
        prev_row = -1
        done = False
        for r, j in zip(rows.tolist(), cols.tolist()):
            if r == prev_row and done:
                continue
            if r != prev_row:
                prev_row, done = r, False
            n = n0 + r
            a = int(divisors[j])
            if a * a > n:
                done = True  # columns ascend; later a exceed sqrt(n) too
                continue
            b = n // a
            if in_window(a, n, params) and in_window(b, n, params):
                out.append(Witness(n=n, a=a, b=b))
                done = True
    return out


def corollary_certify(n: int, x: float) -> CorollaryWitness | None:
    """A factorization n = a*b with sqrt(x)/2 <= a <= b <= 2*sqrt(x), or None.

    Boundary comparisons are exact: a >= sqrt(x)/2 iff 4*a*a >= x and
    b <= 2*sqrt(x) iff b*b <= 4*x, both integer-vs-float comparisons.
    Returns the witness with the smallest a.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")
    rt = math.sqrt(x)
    a0 = max(1, int(rt / 2.0))
    while 4 * a0 * a0 < x:
        a0 += 1
    while a0 > 1 and 4 * (a0 - 1) * (a0 - 1) >= x:
        a0 -= 1
    # cofactor bound: b <= 2*sqrt(x) forces a >= n / (2*sqrt(x))
    a_start = max(a0, int(n / (2.0 * rt + 2.0)) - 1, 1)
    for a in range(a_start, math.isqrt(n) + 1):
        if n % a == 0:
            b = n // a
            if 4 * a * a >= x and b * b <= 4 * x:
                return CorollaryWitness(n=n, a=a, b=b, x=x)
    return None
