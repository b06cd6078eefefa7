"""Certified ladders of smallest height-h numbers.

A ladder for fixed ``(e, b, u)`` lists sigma_0 = u, sigma_1, sigma_2, ...
where sigma_h is the smallest number of height h.  Each rung records why it
is trusted:

``EXHAUSTIVE:n``
    found by a full scan of ``1..n`` (n is the rung value itself).
``WILLMAP:tau``
    previous rung sigma and the next-smallest number tau of that height
    satisfy ``sigma + g(e)(b-1)^e <= tau``, so the smallest preimage of sigma
    is the next rung.
``COROLLARY``
    the previous rung is at least ``b^d_cor``, which forces the same
    conclusion.
``UPPERBOUND``
    a preimage of the previous rung, hence some number of the right height,
    but minimality is not established.
"""

from __future__ import annotations

import io
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import RepresentationOverflow
from .numerics import (
    DEFAULT_DIGIT_BUDGET,
    RleNumber,
    format_rle,
    from_value,
    parse_rle,
    power_sum,
    value_of,
)
from .preimage import min_preimage_excluding
from .search import ScanResult, height, scan
from .waring import DEFAULT_DP_CAP, compute_g, thresholds

EXHAUSTIVE = "EXHAUSTIVE"
WILLMAP = "WILLMAP"
COROLLARY = "COROLLARY"
UPPERBOUND = "UPPERBOUND"

DEFAULT_SCAN_LIMIT = 10**7


@dataclass(frozen=True)
class Certificate:
    kind: str
    value: int | None = None  # scan limit for EXHAUSTIVE, tau for WILLMAP

    def __post_init__(self):
        if self.kind not in (EXHAUSTIVE, WILLMAP, COROLLARY, UPPERBOUND):
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        if (self.kind in (EXHAUSTIVE, WILLMAP)) != (self.value is not None):
            raise ValueError(f"{self.kind} certificate value mismatch")

    @property
    def certified(self) -> bool:
        return self.kind != UPPERBOUND

    def __str__(self) -> str:
        return self.kind if self.value is None else f"{self.kind}:{self.value}"

    @classmethod
    def parse(cls, text: str) -> Certificate:
        kind, _, val = text.partition(":")
        return cls(kind, int(val) if val else None)


@dataclass(frozen=True)
class LadderEntry:
    h: int
    sigma: RleNumber
    certificate: Certificate


@dataclass
class Ladder:
    e: int
    b: int
    u: int
    entries: list[LadderEntry] = field(default_factory=list)

    @classmethod
    def start(cls, e: int, b: int, u: int) -> Ladder:
        if u < 1:
            raise ValueError("attractor u must be positive")
        return cls(e, b, u, [LadderEntry(0, from_value(u, b), Certificate(EXHAUSTIVE, u))])

    @property
    def top(self) -> int:
        return self.entries[-1].h


# --- theorem checks ---------------------------------------------------------


def willmap_holds(sigma: int, tau: int, e: int, b: int) -> bool:
    """Integer form of ``sigma/(b-1)^e + g(e) <= tau/(b-1)^e``."""
    return sigma + compute_g(e).g * (b - 1) ** e <= tau


def trailing_run_ok(sigma: RleNumber, delta: int) -> bool:
    """Are the last ``delta + 1`` digits all ``b - 1``?"""
    if delta < 1:
        raise ValueError("delta must be positive")
    return sigma.trailing_run(sigma.base - 1) >= delta + 1


def ninesmap_applicable(sigma: RleNumber, e: int) -> bool:
    th = thresholds(e, sigma.base)
    return sigma.trailing_run(sigma.base - 1) >= e + th.p + 1


def trail_conformance(sigma: RleNumber, e: int) -> bool:
    """Check the trailing-run guarantee for every delta the digit count unlocks.

    The guarantee is monotone in delta, so only the largest applicable delta
    needs testing.
    """
    delta = thresholds(e, sigma.base).max_trail_delta(sigma.digit_count)
    return delta < 1 or trailing_run_ok(sigma, delta)


# --- extension -------------------------------------------------------------


def extend(
    ladder: Ladder,
    target_h: int,
    scan_limit: int = DEFAULT_SCAN_LIMIT,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
    dp_cap: int = DEFAULT_DP_CAP,
    workers: int = 1,
    scan_result: ScanResult | None = None,
) -> Ladder:
    """Return a copy of ``ladder`` extended up to height ``target_h``.

    Raises :class:`RepresentationOverflow` (with the partial ladder in
    ``entries``) once a rung is too long to materialize.
    """
    e, b, u = ladder.e, ladder.b, ladder.u
    out = Ladder(e, b, u, list(ladder.entries))
    if not out.entries or out.entries[0].sigma != from_value(u, b):
        raise ValueError("ladder must start at h=0 with sigma = u")
    if out.top >= target_h:
        return out
    res = scan_result if scan_result is not None else scan(u, e, b, scan_limit, workers)
    th = thresholds(e, b)
    while out.top < target_h:
        prev = out.entries[-1]
        h = prev.h
        found = res.sigma(h + 1)
        if found is not None:
            out.entries.append(LadderEntry(h + 1, from_value(found, b), Certificate(EXHAUSTIVE, found)))
            continue
        try:
            t = value_of(prev.sigma, digit_budget)
        except RepresentationOverflow as exc:
            raise RepresentationOverflow(
                f"cannot extend past h={h}: {exc}", entries=out.entries
            ) from None
        cand = min_preimage_excluding(t, e, b, u if h == 0 else None, dp_cap)
        if power_sum(cand, e) != t:  # pragma: no cover - solver soundness
            raise AssertionError(f"preimage of rung {h} does not map back")
        cert = Certificate(UPPERBOUND)
        if prev.certificate.certified and h >= 1:
            tau = res.tau(h) if res.sigma(h) == t else None
            if tau is not None and willmap_holds(t, tau, e, b):
                cert = Certificate(WILLMAP, tau)
            elif th.corollary_applies(prev.sigma.digit_count):
                cert = Certificate(COROLLARY)
        out.entries.append(LadderEntry(h + 1, cand, cert))
    return out


# --- file format ------------------------------------------------------------

_HEADER = re.compile(r"^e=(\d+) b=(\d+) u=(\d+)$")
_RUNG = re.compile(r"^h=(\d+) sigma=(\S+) cert=(\S+)$")


def dumps(ladder: Ladder, digit_budget: int = DEFAULT_DIGIT_BUDGET) -> str:
    lines = [f"e={ladder.e} b={ladder.b} u={ladder.u}"]
    for r in ladder.entries:
        lines.append(f"h={r.h} sigma={format_rle(r.sigma, digit_budget)} cert={r.certificate}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Ladder:
    lines = [ln.strip() for ln in io.StringIO(text) if ln.strip()]
    if not lines:
        raise ValueError("empty ladder file")
    m = _HEADER.match(lines[0])
    if not m:
        raise ValueError(f"bad ladder header: {lines[0]!r}")
    e, b, u = (int(g) for g in m.groups())
    ladder = Ladder(e, b, u)
    for lineno, line in enumerate(lines[1:], start=2):
        m = _RUNG.match(line)
        if not m:
            raise ValueError(f"line {lineno}: bad rung {line!r}")
        ladder.entries.append(
            LadderEntry(int(m.group(1)), parse_rle(m.group(2), b), Certificate.parse(m.group(3)))
        )
    return ladder


def save(ladder: Ladder, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(ladder))


def load(path: str | os.PathLike) -> Ladder:
    return loads(Path(path).read_text())


# --- verification -------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    h: int
    passed: bool
    detail: str = ""


def verify(
    ladder: Ladder,
    scan_limit: int = 10**5,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
    dp_cap: int = DEFAULT_DP_CAP,
    workers: int = 1,
) -> list[Check]:
    """Re-derive every rung's certificate and the structural guarantees.

    Values up to ``scan_limit`` are re-checked against a fresh exhaustive
    scan.
    """
    e, b, u = ladder.e, ladder.b, ladder.u
    th = thresholds(e, b)
    res = scan(u, e, b, scan_limit, workers)
    checks: list[Check] = []

    def add(name, h, ok, detail=""):
        checks.append(Check(name, h, bool(ok), detail))

    ents = ladder.entries
    add("starts-at-u", 0, ents and ents[0].h == 0 and ents[0].sigma == from_value(u, b))
    add("heights-contiguous", 0, [r.h for r in ents] == list(range(len(ents))))
    values: list[int | None] = []
    for r in ents:
        try:
            values.append(value_of(r.sigma, digit_budget))
        except RepresentationOverflow:
            values.append(None)

    for i, r in enumerate(ents):
        h, cert, v = r.h, r.certificate, values[i]
        prev_v = values[i - 1] if i else None
        if cert.kind == EXHAUSTIVE:
            add("exhaustive-limit", h, v is not None and cert.value is not None and cert.value >= v)
            if v is not None:
                add("exhaustive-height", h, height(v, u, e, b) == h, f"sigma={v}")
                if v <= scan_limit:
                    add("exhaustive-minimal", h, res.sigma(h) == v, f"scan gives {res.sigma(h)}")
        elif i == 0:
            add("start-certificate", h, False, f"rung 0 must be {EXHAUSTIVE}")
        else:
            prev = ents[i - 1]
            if prev_v is None:
                add("conservation", h, False, "previous rung not materializable")
            else:
                add("conservation", h, power_sum(r.sigma, e) == prev_v, "S(sigma_h) = sigma_(h-1)")
                if cert.certified:
                    excl = u if i == 1 else None
                    canon = min_preimage_excluding(prev_v, e, b, excl, dp_cap)
                    add("canonical-preimage", h, canon == r.sigma, f"expected {format_rle(canon)}")
            if cert.certified and not prev.certificate.certified:
                add("certified-chain", h, False, "certified rung above an uncertified one")
            if cert.kind == WILLMAP:
                tau = cert.value
                ok = prev_v is not None and prev_v < tau and willmap_holds(prev_v, tau, e, b)
                add("willmap-inequality", h, ok, f"sigma={prev_v} tau={tau}")
                add("tau-height", h, height(tau, u, e, b) == h - 1)
                if tau <= scan_limit:
                    add("tau-second-smallest", h, res.tau(h - 1) == tau, f"scan gives {res.tau(h - 1)}")
            elif cert.kind == COROLLARY:
                add("corollary-threshold", h, h >= 2 and th.corollary_applies(prev.sigma.digit_count),
                    f"{prev.sigma.digit_count} digits vs d_cor={th.d_cor}")
                add("ninesmap-applicable", h, ninesmap_applicable(prev.sigma, e))
            elif cert.kind == UPPERBOUND:
                add("not-attractor", h, r.sigma != from_value(u, b))
        if h >= 1 and cert.certified:
            add("trailing-run", h, trail_conformance(r.sigma, e),
                f"{r.sigma.digit_count} digits, trailing run {r.sigma.trailing_run(b - 1)}")
    return checks


def digit_multisets_equal(x: int, y: int, b: int) -> bool:
    return from_value(x, b).digit_multiset() == from_value(y, b).digit_multiset()
