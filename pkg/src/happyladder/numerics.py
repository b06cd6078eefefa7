"""Exact base-b integers stored as digit runs, and the digit power-sum map.

An :class:`RleNumber` keeps the digit sequence of a positive integer as
``(digit, count)`` runs, most significant first.  Counts are Python ints, so
a number such as ``3788`` followed by ``10**975`` nines costs a few hundred
bytes.  Nothing here ever expands a run into individual digits unless the
caller asks for the value explicitly (:func:`value_of`), and that request is
guarded by a digit budget.
"""

from __future__ import annotations

import functools
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import groupby

from .errors import BaseMismatch, RepresentationOverflow, RleParseError

DEFAULT_DIGIT_BUDGET = 10**6

_LOG10_2 = 0.30102999566398120


@contextmanager
def unbounded_int_str():
    """Lift CPython's int<->str conversion limit for the enclosed block."""
    if not hasattr(sys, "set_int_max_str_digits"):
        yield
        return
    old = sys.get_int_max_str_digits()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def decimal_length_upper(n: int) -> int:
    """Cheap upper bound on the number of decimal digits of ``n >= 0``."""
    return int(n.bit_length() * _LOG10_2) + 1


@functools.total_ordering
@dataclass(frozen=True)
class RleNumber:
    base: int
    runs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        b = self.base
        if b < 2:
            raise ValueError(f"base must be >= 2, got {b}")
        merged: list[list[int]] = []
        for d, c in self.runs:
            d, c = int(d), int(c)
            if not 0 <= d < b:
                raise ValueError(f"digit {d} out of range for base {b}")
            if c < 1:
                raise ValueError(f"run count must be >= 1, got {c}")
            if merged and merged[-1][0] == d:
                merged[-1][1] += c
            else:
                merged.append([d, c])
        if not merged:
            raise ValueError("an RleNumber needs at least one run")
        if merged[0][0] == 0:
            raise ValueError("leading digit must be nonzero")
        object.__setattr__(self, "runs", tuple((d, c) for d, c in merged))

    @property
    def digit_count(self) -> int:
        return sum(c for _, c in self.runs)

    def trailing_run(self, digit: int) -> int:
        """Length of the least-significant run if it consists of ``digit``, else 0."""
        d, c = self.runs[-1]
        return c if d == digit else 0

    def digit_multiset(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for d, c in self.runs:
            counts[d] = counts.get(d, 0) + c
        return counts

    def is_nondecreasing(self) -> bool:
        return all(a[0] < b[0] for a, b in zip(self.runs, self.runs[1:]))

    def __lt__(self, other: RleNumber) -> bool:
        if not isinstance(other, RleNumber):
            return NotImplemented
        return compare(self, other) < 0

    def __str__(self) -> str:
        return format_rle(self)


def compare(x: RleNumber, y: RleNumber) -> int:
    """Three-way numeric comparison (-1, 0, 1) without materializing values."""
    if x.base != y.base:
        raise BaseMismatch(f"cannot compare base {x.base} with base {y.base}")
    nx, ny = x.digit_count, y.digit_count
    if nx != ny:
        return -1 if nx < ny else 1
    i = j = 0
    left_x, left_y = x.runs[0][1], y.runs[0][1]
    while i < len(x.runs):
        dx, dy = x.runs[i][0], y.runs[j][0]
        if dx != dy:
            return -1 if dx < dy else 1
        step = min(left_x, left_y)
        left_x -= step
        left_y -= step
        if left_x == 0:
            i += 1
            if i < len(x.runs):
                left_x = x.runs[i][1]
        if left_y == 0:
            j += 1
            if j < len(y.runs):
                left_y = y.runs[j][1]
    return 0


def power_sum(x: RleNumber, e: int) -> int:
    """Sum of the e-th powers of the base-b digits of ``x``."""
    if e < 1:
        raise ValueError("exponent must be >= 1")
    return sum(c * d**e for d, c in x.runs)


def digit_power_sum(v: int, e: int, b: int) -> int:
    """Per-digit reference loop over a plain int; used for small values and as an oracle."""
    total = 0
    while v:
        v, d = divmod(v, b)
        total += d**e
    return total


def _digits_small(v: int, b: int) -> list[int]:
    out = []
    while v:
        v, d = divmod(v, b)
        out.append(d)
    out.reverse()
    return out


def _digits_padded(v: int, b: int, width: int) -> list[int]:
    if width <= 64:
        ds = _digits_small(v, b)
        return [0] * (width - len(ds)) + ds
    half = width // 2
    hi, lo = divmod(v, b**half)
    return _digits_padded(hi, b, width - half) + _digits_padded(lo, b, half)


def digits_of(v: int, b: int) -> list[int]:
    """Base-b digits of ``v >= 1``, most significant first (divide and conquer)."""
    if v < 1:
        raise ValueError("value must be positive")
    if b == 10:
        with unbounded_int_str():
            return [ord(ch) - 48 for ch in str(v)]
    width = 1
    while b**width <= v:
        width *= 2
    ds = _digits_padded(v, b, width)
    k = next(i for i, d in enumerate(ds) if d)
    return ds[k:]


def from_value(v: int, b: int) -> RleNumber:
    if v < 1:
        raise ValueError(f"from_value needs v >= 1, got {v}")
    runs = tuple((d, sum(1 for _ in g)) for d, g in groupby(digits_of(v, b)))
    return RleNumber(b, runs)


def value_of(x: RleNumber, budget: int = DEFAULT_DIGIT_BUDGET) -> int:
    """Exact integer value of ``x``; refuses numbers longer than ``budget`` digits."""
    n = x.digit_count
    if n > budget:
        size = str(n) if n < 10**30 else f"~10^{decimal_length_upper(n) - 1}"
        raise RepresentationOverflow(f"value has {size} base-{x.base} digits, budget is {budget}")
    b = x.base
    value = 0
    shift = 0
    for d, c in reversed(x.runs):
        if d:
            value += d * ((b**c - 1) // (b - 1)) * b**shift
        shift += c
    return value


# --- text format -------------------------------------------------------------


def format_rle(x: RleNumber, budget: int = DEFAULT_DIGIT_BUDGET) -> str:
    """Render ``x`` in the run-length text format.

    Each run is written plainly or as ``[d^count]``, whichever is shorter
    (ties go to the plain form).  Bases above 10 write every digit in decimal
    and separate tokens with ``.``.
    """
    wide = x.base > 10
    tokens: list[str] = []
    with unbounded_int_str():
        for d, c in x.runs:
            if decimal_length_upper(c) > budget:
                raise RepresentationOverflow(f"run count needs more than {budget} decimal digits")
            sd = str(d)
            bracket = f"[{sd}^{c}]"
            if c <= len(bracket):
                plain_len = c * len(sd) + (c - 1 if wide else 0)
                if plain_len <= len(bracket):
                    tokens.extend([sd] * c)
                    continue
            tokens.append(bracket)
    return ("." if wide else "").join(tokens)


def parse_rle(text: str, base: int) -> RleNumber:
    """Parse the run-length text format (plain digits, ``[d^count]`` runs, optional ``.`` separators)."""
    s = text.strip()
    if not s:
        raise RleParseError("empty number", text, 0)
    runs: list[tuple[int, int]] = []
    i, n = 0, len(s)
    expect_token = True
    with unbounded_int_str():
        while i < n:
            ch = s[i]
            if ch == ".":
                if expect_token:
                    raise RleParseError("unexpected '.'", s, i)
                expect_token = True
                i += 1
                continue
            if ch == "[":
                close = s.find("]", i)
                if close < 0:
                    raise RleParseError("unterminated '['", s, i)
                body = s[i + 1 : close]
                digit_txt, caret, count_txt = body.partition("^")
                if not caret or not digit_txt.isdigit() or not count_txt.isdigit():
                    raise RleParseError("malformed run, expected [digit^count]", s, i)
                d, c = int(digit_txt), int(count_txt)
                if c < 1:
                    raise RleParseError("run count must be >= 1", s, i)
                if d >= base:
                    raise RleParseError(f"digit {d} not valid in base {base}", s, i + 1)
                runs.append((d, c))
                i = close + 1
            elif ch.isdigit():
                j = i + 1
                if base > 10:
                    while j < n and s[j].isdigit():
                        j += 1
                d = int(s[i:j])
                if d >= base:
                    raise RleParseError(f"digit {d} not valid in base {base}", s, i)
                runs.append((d, 1))
                i = j
            else:
                raise RleParseError(f"unexpected character {ch!r}", s, i)
            expect_token = False
    if expect_token:
        raise RleParseError("trailing '.'", s, n - 1)
    if runs[0][0] == 0:
        raise RleParseError("leading digit must be nonzero", s, 0)
    return RleNumber(base, tuple(runs))
