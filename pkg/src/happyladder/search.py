"""Brute-force oracles: trajectories, heights, cycles and exhaustive scans.

Heights are relative to an attractor ``u``: the height of ``x`` is the least
``n >= 0`` with ``S^n(x) = u``, or ``None`` if the trajectory never meets
``u``.  Scans evaluate ``S`` on whole blocks of integers with numpy and only
run the (memoized) trajectory walk on the few distinct images, which are
tiny compared to the scanned values.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import RepresentationOverflow
from .numerics import digit_power_sum

CHUNK = 1 << 20
DEFAULT_CYCLE_BOUND = 2 * 10**7


def power_sums(xs: np.ndarray, e: int, b: int) -> np.ndarray:
    """Vectorized digit power sums of a nonnegative int64 array."""
    table = np.array([d**e for d in range(b)], dtype=np.int64)
    x = xs.astype(np.int64, copy=True)
    out = np.zeros_like(x)
    while True:
        live = x > 0
        if not live.any():
            return out
        out += table[x % b]
        x //= b


@dataclass
class Trajectory:
    start: int
    steps: list[int]
    cycle_entry: int

    @property
    def cycle(self) -> list[int]:
        return self.steps[self.cycle_entry :]


def trajectory(x: int, e: int, b: int) -> Trajectory:
    """Iterate ``S`` from ``x`` until a value repeats.

    ``steps`` starts with ``x`` itself and lists each value once; the periodic
    tail begins at ``cycle_entry``.
    """
    seen: dict[int, int] = {}
    steps: list[int] = []
    cur = x
    while cur not in seen:
        seen[cur] = len(steps)
        steps.append(cur)
        cur = digit_power_sum(cur, e, b)
    return Trajectory(x, steps, seen[cur])


def height(x: int, u: int, e: int, b: int) -> int | None:
    """Least ``h`` with ``S^h(x) = u``; no memo, walks the trajectory directly."""
    if x < 1 or u < 1:
        raise ValueError("x and u must be positive")
    seen = set()
    cur, h = x, 0
    while cur not in seen:
        if cur == u:
            return h
        seen.add(cur)
        cur = digit_power_sum(cur, e, b)
        h += 1
    return None


class HeightMemo:
    """Memoized heights relative to one attractor."""

    def __init__(self, u: int, e: int, b: int):
        self.u, self.e, self.b = u, e, b
        self.memo: dict[int, int | None] = {u: 0}

    def __call__(self, y: int) -> int | None:
        memo = self.memo
        if y in memo:
            return memo[y]
        path: list[int] = []
        on_path: set[int] = set()
        cur = y
        while cur not in memo and cur not in on_path:
            on_path.add(cur)
            path.append(cur)
            cur = digit_power_sum(cur, self.e, self.b)
        base = memo.get(cur) if cur in memo else None
        n = len(path)
        for i, v in enumerate(path):
            memo[v] = None if base is None else base + n - i
        return memo[y]


def _scan_range(task: tuple[int, int, int, int, int]) -> dict[int, list[int]]:
    """Smallest two x of every height in ``[lo, hi)``."""
    lo, hi, u, e, b = task
    memo = HeightMemo(u, e, b)
    found: dict[int, list[int]] = {}
    for start in range(lo, hi, CHUNK):
        stop = min(start + CHUNK, hi)
        xs = np.arange(start, stop, dtype=np.int64)
        images, inverse = np.unique(power_sums(xs, e, b), return_inverse=True)
        image_heights = np.array(
            [-1 if (h := memo(int(v))) is None else h for v in images], dtype=np.int64
        )
        hs = image_heights[inverse.reshape(-1)]
        hs = np.where(hs >= 0, hs + 1, -1)
        if start <= u < stop:
            hs[u - start] = 0
        for hv in np.unique(hs[hs >= 0]):
            hv = int(hv)
            have = found.setdefault(hv, [])
            if len(have) >= 2:
                continue
            first = np.flatnonzero(hs == hv)[: 2 - len(have)]
            have.extend(int(start + i) for i in first)
    return found


def _merge(parts: list[dict[int, list[int]]]) -> dict[int, tuple[int, ...]]:
    merged: dict[int, list[int]] = {}
    for part in parts:
        for h, xs in part.items():
            merged.setdefault(h, []).extend(xs)
    return {h: tuple(sorted(xs)[:2]) for h, xs in sorted(merged.items())}


@dataclass
class ScanResult:
    """Smallest and second-smallest number of each height found in ``1..scan_limit``."""

    u: int
    e: int
    b: int
    scan_limit: int
    by_height: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def sigma(self, h: int) -> int | None:
        xs = self.by_height.get(h, ())
        return xs[0] if xs else None

    def tau(self, h: int) -> int | None:
        xs = self.by_height.get(h, ())
        return xs[1] if len(xs) > 1 else None


def scan(u: int, e: int, b: int, scan_limit: int, workers: int = 1) -> ScanResult:
    """Exhaustively compute heights of ``1..scan_limit``.

    With ``workers > 1`` the range is split into contiguous blocks scanned in
    separate processes; the per-block minima are merged, so the result does
    not depend on the worker count.
    """
    if scan_limit < 1:
        return ScanResult(u, e, b, scan_limit)
    if scan_limit >= 2**62 or (b - 1) ** e * 64 >= 2**62:
        raise RepresentationOverflow("scan range does not fit 64-bit vectorized arithmetic")
    hi = scan_limit + 1
    workers = max(1, min(workers, scan_limit))
    if workers == 1:
        parts = [_scan_range((1, hi, u, e, b))]
    else:
        bounds = np.linspace(1, hi, workers + 1).astype(np.int64)
        tasks = [(int(bounds[i]), int(bounds[i + 1]), u, e, b) for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_range, tasks))
    return ScanResult(u, e, b, scan_limit, _merge(parts))


@dataclass(frozen=True)
class SigmaTau:
    sigma: int | None
    tau: int | None
    scan_limit: int


def sigma_tau(h: int, u: int, e: int, b: int, scan_limit: int, workers: int = 1) -> SigmaTau:
    res = scan(u, e, b, scan_limit, workers)
    return SigmaTau(res.sigma(h), res.tau(h), scan_limit)


# --- cycles --------------------------------------------------------------------


@dataclass(frozen=True)
class CycleSet:
    e: int
    b: int
    cycles: tuple[tuple[int, ...], ...]
    contraction_bound: int

    def fixed_points(self) -> list[int]:
        return [c[0] for c in self.cycles if len(c) == 1]


def contraction_bound(e: int, b: int) -> int:
    """``b^n`` for the least ``n`` with ``n (b-1)^e < b^(n-1)``; ``S(x) < x`` from there on."""
    top = (b - 1) ** e
    n = 1
    while n * top >= b ** (n - 1):
        n += 1
    return b**n


def find_cycles(e: int, b: int, max_bound: int = DEFAULT_CYCLE_BOUND) -> CycleSet:
    """All cycles of ``S`` on the positive integers.

    Every ``x < M`` maps below ``M``, so ``S`` is a self-map of ``[0, M)``.
    Its cycle points are exactly the image of ``S^k`` for ``k >= M``, found
    by repeated squaring of the map.
    """
    m = contraction_bound(e, b)
    if m > max_bound:
        raise RepresentationOverflow(f"contraction bound {m} exceeds the cycle scan bound {max_bound}")
    f = power_sums(np.arange(m, dtype=np.int64), e, b)
    g = f.copy()
    steps = 1
    while steps < m:
        g = g[g]
        steps *= 2
    pending = set(int(v) for v in np.unique(g[1:]) if v > 0)
    cycles = []
    while pending:
        start = min(pending)
        cyc = [start]
        cur = int(f[start])
        while cur != start:
            cyc.append(cur)
            cur = int(f[cur])
        pending.difference_update(cyc)
        cycles.append(tuple(cyc))
    return CycleSet(e, b, tuple(cycles), m)
