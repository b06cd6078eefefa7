"""Waring numbers g(e), the digit-count thresholds built from them, and
bounded sums of e-th powers.

All threshold arithmetic is done with :class:`fractions.Fraction`; nothing
here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, FormulaConditionFailed, Infeasible

DEFAULT_DP_CAP = 10**8


def dp_dtype(size: int):
    """int32 tables while ``size`` leaves headroom under the sentinel, int64 beyond."""
    return np.int32 if size < 2**28 else np.int64


def unreachable(dtype) -> int:
    """Sentinel for "not representable" in a min-count table of ``dtype``."""
    return 2**30 if np.dtype(dtype) == np.int32 else 2**62


@dataclass(frozen=True)
class WaringInfo:
    e: int
    g: int
    formula_validated: bool


@lru_cache(maxsize=None)
def compute_g(e: int) -> WaringInfo:
    """g(e) from Euler's closed form ``2^e + floor((3/2)^e) - 2``.

    The closed form is only returned when ``r + q <= 2^e`` holds, where
    ``q, r = divmod(3^e, 2^e)``.
    """
    if e < 1:
        raise ValueError(f"exponent must be >= 1, got {e}")
    if e == 1:
        return WaringInfo(1, 1, True)
    two, three = 2**e, 3**e
    q, r = divmod(three, two)
    if r + q > two:
        raise FormulaConditionFailed(f"Euler's condition fails for e={e}: r+q={r + q} > 2^e={two}")
    return WaringInfo(e, two + q - 2, True)


@dataclass(frozen=True)
class Thresholds:
    e: int
    b: int
    g: int
    p: int
    trail_constant: Fraction  # (g+1) / (1 - ((b-2)/(b-1))^e)
    d_cor: int

    def d_trail(self, delta: int) -> Fraction:
        return self.trail_constant + delta

    def meets_trail(self, digit_count: int, delta: int) -> bool:
        """Exact test of ``digit_count >= d_trail(delta)``."""
        c = self.trail_constant
        return (digit_count - delta) * c.denominator >= c.numerator

    def max_trail_delta(self, digit_count: int) -> int:
        """Largest delta with ``digit_count >= d_trail(delta)`` (0 or less if none)."""
        return digit_count - math.ceil(self.trail_constant)

    def corollary_applies(self, digit_count: int) -> bool:
        """True iff a number with ``digit_count`` base-b digits is >= b^d_cor."""
        return digit_count >= self.d_cor + 1


@lru_cache(maxsize=None)
def thresholds(e: int, b: int) -> Thresholds:
    if b < 2:
        raise ValueError(f"base must be >= 2, got {b}")
    g = compute_g(e).g
    p = 0
    while b**p <= g:
        p += 1
    top = (b - 1) ** e
    c = Fraction((g + 1) * top, top - (b - 2) ** e)
    d_cor = math.ceil(c + e + p)
    return Thresholds(e, b, g, p, c, d_cor)


# --- bounded power sums ------------------------------------------------------


def relax_coin(dp: np.ndarray, coin: int) -> np.ndarray:
    """Return ``dp`` after allowing any number of extra ``coin`` terms.

    ``out[s] = min_j dp[s - j*coin] + j``, evaluated per residue class with a
    running minimum so the whole update is vectorized.
    """
    n = len(dp)
    inf = unreachable(dp.dtype)
    rows = -(-n // coin)
    padded = np.full(rows * coin, inf, dtype=dp.dtype)
    padded[:n] = dp
    grid = padded.reshape(rows, coin)
    offs = np.arange(rows, dtype=dp.dtype)[:, None]
    out = np.minimum.accumulate(grid - offs, axis=0) + offs
    return np.minimum(out.reshape(-1)[:n], inf)


def _empty_table(size: int) -> np.ndarray:
    dtype = dp_dtype(size)
    base = np.full(size, unreachable(dtype), dtype=dtype)
    base[0] = 0
    return base


def full_table(coins: list[int], size: int) -> np.ndarray:
    """Fewest terms from all of ``coins`` for each of ``0..size-1``."""
    table = _empty_table(size)
    for c in coins:
        if c < size:
            table = relax_coin(table, c)
    return table


def suffix_tables(coins: list[int], size: int) -> list[np.ndarray]:
    """``tables[k][s]`` = fewest terms from ``coins[k:]`` summing to ``s``.

    ``tables[len(coins)]`` is the empty-coin table (only ``s = 0`` reachable).
    """
    tables = [_empty_table(size)]
    for c in reversed(coins):
        tables.append(relax_coin(tables[-1], c) if c < size else tables[-1])
    tables.reverse()
    return tables


def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise CapExceeded(f"DP table of {size} states exceeds cap {cap}")


def min_terms_table(limit: int, e: int, max_digit: int, cap: int = DEFAULT_DP_CAP) -> np.ndarray:
    """Fewest e-th powers of 1..max_digit summing to each of 0..limit."""
    _check_cap(limit + 1, cap)
    coins = [d**e for d in range(1, max_digit + 1) if d**e <= limit]
    return full_table(coins, limit + 1)


def min_terms(r: int, e: int, max_digit: int, cap: int = DEFAULT_DP_CAP) -> int:
    if r < 0:
        raise ValueError("r must be nonnegative")
    if max_digit < 1:
        raise ValueError("max_digit must be >= 1")
    return int(min_terms_table(r, e, max_digit, cap)[r])


def decompose_bounded(
    r: int, e: int, max_digit: int, max_terms: int, cap: int = DEFAULT_DP_CAP
) -> list[int]:
    """Fewest digits in 1..max_digit whose e-th powers sum to ``r``.

    Among minimum-size answers the lexicographically smallest nondecreasing
    list is returned.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return []
    _check_cap(r + 1, cap)
    digits = [d for d in range(1, max_digit + 1) if d**e <= r]
    coins = [d**e for d in digits]
    tables = suffix_tables(coins, r + 1)
    need = int(tables[0][r])
    if need > max_terms:
        raise Infeasible(f"{r} needs {need} e-th powers, only {max_terms} allowed")
    out: list[int] = []
    lo = 0
    while r:
        for j in range(lo, len(digits)):
            c = coins[j]
            if c <= r and tables[j][r - c] == need - 1:
                out.append(digits[j])
                r -= c
                need -= 1
                lo = j
                break
        else:  # pragma: no cover - tables guarantee a choice exists
            raise AssertionError("reconstruction lost feasibility")
    return out
