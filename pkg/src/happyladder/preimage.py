"""Smallest preimages under the digit power-sum map.

The smallest ``x`` with ``S(x) = t`` has as few digits as possible, no zero
digits, and its digits sorted ascending.  Writing ``top = (b-1)^e``, an
``n``-digit candidate made of ``b-1`` digits plus a few smaller ones ``d``
falls short of ``n * top`` by the sum of the "deficits" ``top - d^e``.  So
the search is a coin problem on the shortfall ``s = n*top - t``, which stays
below ``(g(e)+1) * top`` no matter how large ``t`` is.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, InvalidTarget
from .numerics import RleNumber, digit_power_sum, digits_of, from_value
from .waring import DEFAULT_DP_CAP, compute_g, full_table, suffix_tables, unreachable


@dataclass(frozen=True)
class DeficitSet:
    e: int
    b: int
    deficits: tuple[tuple[int, int], ...]  # (top - d^e, d) for d = 1..b-2
    max_power: int


def deficit_set(e: int, b: int) -> DeficitSet:
    top = (b - 1) ** e
    return DeficitSet(e, b, tuple((top - d**e, d) for d in range(1, b - 1)), top)


def _count_ok(entry, limit: int) -> bool:
    # ``limit`` may be astronomically large, so test the sentinel first.
    k = int(entry)
    return k < unreachable(entry.dtype) and k <= limit


class _DeficitSolver:
    def __init__(self, e: int, b: int, cap: int):
        self.e, self.b = e, b
        self.g = compute_g(e).g
        self.top = (b - 1) ** e
        self.size = (self.g + 1) * self.top
        if self.size > cap:
            raise CapExceeded(
                f"deficit table for e={e}, b={b} needs {self.size} states, cap is {cap}"
            )
        ds = deficit_set(e, b)
        self.digits = [d for _, d in ds.deficits]
        self.coins = [c for c, _ in ds.deficits]
        # Only the all-digit table is kept; reconstruction rebuilds the
        # per-digit tables up to the one shortfall it needs.
        self.table: np.ndarray = full_table(self.coins, self.size)

    def fits(self, s: int, n: int) -> bool:
        """Can a shortfall of ``s`` be spread over at most ``n`` non-maximal digits?"""
        return 0 <= s < self.size and _count_ok(self.table[s], n)

    def digit_count(self, t: int) -> int:
        q, r = divmod(t, self.top)
        n = q + (r > 0)
        upper = q + self.g
        while n <= upper:
            if self.fits(n * self.top - t, n):
                return n
            n += 1
        raise AssertionError(f"no preimage of {t} within {upper} digits; contradicts the digit-count bound")

    def build(self, t: int) -> RleNumber:
        n = self.digit_count(t)
        s = n * self.top - t
        tables = suffix_tables(self.coins, s + 1)
        small: list[int] = []
        left = n
        lo = 0
        while s:
            for j in range(lo, len(self.coins)):
                c = self.coins[j]
                if c <= s and _count_ok(tables[j][s - c], left - 1):
                    small.append(self.digits[j])
                    s -= c
                    left -= 1
                    lo = j
                    break
            else:  # pragma: no cover
                raise AssertionError("reconstruction lost feasibility")
        runs = [(d, 1) for d in small]
        if left:
            runs.append((self.b - 1, left))
        return RleNumber(self.b, tuple(runs))


@lru_cache(maxsize=32)
def _solver(e: int, b: int, cap: int) -> _DeficitSolver:
    return _DeficitSolver(e, b, cap)


def _validate(t: int, e: int, b: int) -> None:
    if t < 1:
        raise InvalidTarget(f"target must be >= 1, got {t}")
    if e < 1 or b < 2:
        raise ValueError(f"need e >= 1 and b >= 2, got e={e}, b={b}")


def preimage_digit_count(t: int, e: int, b: int, cap: int = DEFAULT_DP_CAP) -> int:
    """Number of digits of the smallest ``x`` with ``S(x) = t``."""
    _validate(t, e, b)
    if b == 2:
        return t
    return _solver(e, b, cap).digit_count(t)


def digit_count_feasible(t: int, e: int, b: int, n: int, cap: int = DEFAULT_DP_CAP) -> bool:
    """Does some ``n``-digit number without zero digits map to ``t``?"""
    _validate(t, e, b)
    if b == 2:
        return n == t
    solver = _solver(e, b, cap)
    s = n * solver.top - t
    if s < 0:
        return False
    if s >= solver.size:
        if s + 1 > cap:
            raise CapExceeded(f"shortfall {s} exceeds DP cap {cap}")
        return _count_ok(full_table(solver.coins, s + 1)[s], n)
    return solver.fits(s, n)


def min_preimage(t: int, e: int, b: int, cap: int = DEFAULT_DP_CAP) -> RleNumber:
    """Smallest positive ``x`` with digit power sum ``t``."""
    _validate(t, e, b)
    if b == 2:
        return RleNumber(2, ((1, t),))
    return _solver(e, b, cap).build(t)


def _fill(t: int, width: int, e: int, b: int, cap: int) -> list[tuple[int, int]] | None:
    """Smallest ``width``-digit string (leading zeros allowed) with power sum ``t``, as runs."""
    if t == 0:
        return [(0, width)] if width else []
    k = preimage_digit_count(t, e, b, cap)
    if k > width:
        return None
    runs = list(min_preimage(t, e, b, cap).runs)
    return ([(0, width - k)] if width > k else []) + runs


def next_preimage(t: int, e: int, b: int, after: int, cap: int = DEFAULT_DP_CAP) -> RleNumber:
    """Smallest ``x > after`` with digit power sum ``t``; zero digits allowed."""
    _validate(t, e, b)
    y = digits_of(after, b) if after >= 1 else []
    length = len(y)
    for i in range(length - 1, -1, -1):
        used = sum(d**e for d in y[:i])
        for d in range(y[i] + 1, b):
            rest = t - used - d**e
            if rest < 0:
                break
            tail = _fill(rest, length - i - 1, e, b, cap)
            if tail is not None:
                return RleNumber(b, tuple((v, 1) for v in y[:i]) + ((d, 1),) + tuple(tail))
    width = max(length + 1, preimage_digit_count(t, e, b, cap))
    while True:
        for d in range(1, b):
            rest = t - d**e
            if rest < 0:
                break
            tail = _fill(rest, width - 1, e, b, cap)
            if tail is not None:
                return RleNumber(b, ((d, 1),) + tuple(tail))
        width += 1


def min_preimage_excluding(
    t: int, e: int, b: int, excluded: int | None = None, cap: int = DEFAULT_DP_CAP
) -> RleNumber:
    """Smallest preimage of ``t`` other than ``excluded``.

    Only exclusion of the smallest preimage itself changes the answer; that
    is the case the ladder needs (a fixed point ``u`` is its own smallest
    preimage).
    """
    x = min_preimage(t, e, b, cap)
    if excluded is None or excluded < 1 or x != from_value(excluded, b):
        return x
    return next_preimage(t, e, b, after=excluded, cap=cap)


def is_preimage(x: RleNumber | int, t: int, e: int, b: int) -> bool:
    if isinstance(x, int):
        return digit_power_sum(x, e, b) == t
    return sum(c * d**e for d, c in x.runs) == t
