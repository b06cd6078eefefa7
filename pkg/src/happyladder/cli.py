"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 resource cap (CapExceeded or RepresentationOverflow).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import ladder as ladder_mod
from .errors import CapExceeded, RepresentationOverflow, RleParseError
from .numerics import (
    DEFAULT_DIGIT_BUDGET,
    RleNumber,
    format_rle,
    from_value,
    parse_rle,
    power_sum,
    unbounded_int_str,
    value_of,
)
from .preimage import min_preimage_excluding
from .search import find_cycles, height, scan
from .waring import DEFAULT_DP_CAP, compute_g, thresholds

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class Config:
    e: int = 2
    b: int = 10
    u: int = 1
    scan_limit: int = ladder_mod.DEFAULT_SCAN_LIMIT
    dp_cap: int = DEFAULT_DP_CAP
    digit_budget: int = DEFAULT_DIGIT_BUDGET
    workers: int = 1
    output: Path | None = None
    format: str = "text"

    def __post_init__(self):
        for name in ("e", "u", "scan_limit", "dp_cap", "digit_budget", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.b < 2:
            raise ValueError("--b must be at least 2")


def read_number(text: str, b: int) -> RleNumber:
    """Plain decimal text is a value; anything with ``[`` or ``.`` is run-length text in base b."""
    if text.strip().isdigit():
        with unbounded_int_str():
            v = int(text)
        if v < 1:
            raise RleParseError("number must be positive", text, 0)
        return from_value(v, b)
    return parse_rle(text, b)


def _positive(text: str) -> int:
    try:
        v = int(text.replace("_", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _power_of_ten(text: str) -> int:
    """Accept ``100000`` as well as ``1e5`` or ``10^5``."""
    t = text.lower().replace("10^", "1e")
    if "e" in t:
        mant, _, exp = t.partition("e")
        return _positive(mant or "1") * 10 ** _positive(exp)
    return _positive(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="happyladder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, u=False):
        sp.add_argument("--e", type=_positive, default=2, help="exponent (default 2)")
        sp.add_argument("--b", type=_positive, default=10, help="base (default 10)")
        if u:
            sp.add_argument("--u", type=_positive, default=1, help="attractor (default 1)")
        sp.add_argument("--format", choices=("text", "lines"), default="text")
        sp.add_argument("--dp-cap", type=_power_of_ten, default=DEFAULT_DP_CAP)
        sp.add_argument("--digit-budget", type=_power_of_ten, default=DEFAULT_DIGIT_BUDGET)

    def scanning(sp, default=ladder_mod.DEFAULT_SCAN_LIMIT):
        sp.add_argument("--scan-limit", type=_power_of_ten, default=default)
        sp.add_argument("--workers", type=_positive, default=1)

    sp = sub.add_parser("spsum", help="digit power sum of a number")
    sp.add_argument("x", help="decimal value or run-length text such as 3788[9^973]")
    common(sp)

    sp = sub.add_parser("height", help="height of x relative to u")
    sp.add_argument("x")
    common(sp, u=True)

    sp = sub.add_parser("cycles", help="all cycles of the digit power-sum map")
    common(sp)

    sp = sub.add_parser("sigma", help="smallest and second-smallest number of height h by scanning")
    sp.add_argument("--h", type=int, required=True)
    common(sp, u=True)
    scanning(sp, default=10**5)

    sp = sub.add_parser("preimage", help="smallest x with digit power sum t")
    sp.add_argument("t")
    sp.add_argument("--exclude", type=_positive, default=None)
    common(sp)

    sp = sub.add_parser("thresholds", help="g(e), p, d_cor and the trailing-run constant")
    common(sp)

    sp = sub.add_parser("ladder", help="build or resume a certified ladder")
    sp.add_argument("--to", type=int, required=True, dest="to")
    sp.add_argument("-o", "--output", type=Path, default=None)
    common(sp, u=True)
    scanning(sp)

    sp = sub.add_parser("verify", help="check a ladder file, a scan range, or a sigma/tau pair")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--ladder", type=Path, help="ladder file to re-check")
    src.add_argument("--range", type=_power_of_ten, dest="range_limit", help="scan 1..N and check every height")
    src.add_argument("--sigma", type=_positive, help="digit-multiset report for a sigma/tau pair (needs --tau)")
    sp.add_argument("--tau", type=_positive)
    common(sp, u=True)
    scanning(sp, default=10**5)
    return p


def _emit(args, pairs: list[tuple[str, object]], text: str) -> None:
    if args.format == "lines":
        with unbounded_int_str():
            print(" ".join(f"{k}={v}" for k, v in pairs))
    else:
        print(text)


def cmd_spsum(args) -> int:
    x = read_number(args.x, args.b)
    with unbounded_int_str():
        print(power_sum(x, args.e))
    return EXIT_OK


def cmd_height(args) -> int:
    x = value_of(read_number(args.x, args.b), args.digit_budget)
    h = height(x, args.u, args.e, args.b)
    print("none" if h is None else h)
    return EXIT_OK


def cmd_cycles(args) -> int:
    cs = find_cycles(args.e, args.b)
    if args.format == "lines":
        for c in cs.cycles:
            print(f"length={len(c)} cycle={','.join(map(str, c))}")
    else:
        print(f"contraction bound: {cs.contraction_bound}")
        for c in cs.cycles:
            label = "fixed point" if len(c) == 1 else f"{len(c)}-cycle"
            print(f"{label}: {' -> '.join(map(str, c))}")
    return EXIT_OK


def cmd_sigma(args) -> int:
    res = scan(args.u, args.e, args.b, args.scan_limit, args.workers)
    sigma, tau = res.sigma(args.h), res.tau(args.h)
    fmt = lambda v: "absent" if v is None else str(v)  # noqa: E731
    _emit(
        args,
        [("h", args.h), ("sigma", fmt(sigma)), ("tau", fmt(tau)), ("scan_limit", args.scan_limit)],
        f"h={args.h}  sigma={fmt(sigma)}  tau={fmt(tau)}  (scanned 1..{args.scan_limit})",
    )
    return EXIT_OK


def cmd_preimage(args) -> int:
    t = value_of(read_number(args.t, 10), args.digit_budget)
    x = min_preimage_excluding(t, args.e, args.b, args.exclude, args.dp_cap)
    print(format_rle(x, args.digit_budget))
    return EXIT_OK


def cmd_thresholds(args) -> int:
    th = thresholds(args.e, args.b)
    c = th.trail_constant
    _emit(
        args,
        [("e", th.e), ("b", th.b), ("g", th.g), ("p", th.p), ("trail_constant", c), ("d_cor", th.d_cor)],
        f"g({th.e}) = {th.g}\np = {th.p}\n"
        f"trailing-run constant = {c} (~{float(c):.4f})\nd_cor = {th.d_cor}",
    )
    return EXIT_OK


def _summary(lad: ladder_mod.Ladder) -> str:
    rows = [("h", "digits", "trailing", "certificate")]
    with unbounded_int_str():
        for r in lad.entries:
            n = r.sigma.digit_count
            tr = r.sigma.trailing_run(lad.b - 1)
            short = lambda v: str(v) if v < 10**12 else f"~10^{len(str(v)) - 1}"  # noqa: E731
            rows.append((str(r.h), short(n), short(tr), str(r.certificate)))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows)


def config_from_args(args) -> Config:
    return Config(
        e=args.e,
        b=args.b,
        u=getattr(args, "u", 1),
        scan_limit=getattr(args, "scan_limit", ladder_mod.DEFAULT_SCAN_LIMIT),
        dp_cap=args.dp_cap,
        digit_budget=args.digit_budget,
        workers=getattr(args, "workers", 1),
        output=getattr(args, "output", None),
        format=args.format,
    )


def cmd_ladder(args) -> int:
    cfg = config_from_args(args)
    e, b, u = cfg.e, cfg.b, cfg.u
    lad = ladder_mod.Ladder.start(e, b, u)
    if cfg.output is not None and cfg.output.exists():
        old = ladder_mod.load(cfg.output)
        if (old.e, old.b, old.u) == (e, b, u) and old.entries:
            lad = old
    status = EXIT_OK
    notice = None
    try:
        lad = ladder_mod.extend(lad, args.to, cfg.scan_limit, cfg.digit_budget, cfg.dp_cap, cfg.workers)
    except RepresentationOverflow as exc:
        lad = ladder_mod.Ladder(e, b, u, exc.entries)
        notice = f"truncated: {exc}; last exact rung h={lad.top}"
        status = EXIT_CAP
    text = ladder_mod.dumps(lad, cfg.digit_budget)
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)
    if cfg.format == "text":
        print(_summary(lad), file=sys.stderr)
    if notice:
        print(notice, file=sys.stderr)
    return status


def cmd_verify(args) -> int:
    failures = 0
    if args.ladder is not None:
        lad = ladder_mod.load(args.ladder)
        checks = ladder_mod.verify(lad, args.scan_limit, args.digit_budget, args.dp_cap, args.workers)
        for c in checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status} h={c.h} {c.name}" + (f" ({c.detail})" if c.detail and not c.passed else ""))
            failures += not c.passed
        print(f"{len(checks) - failures}/{len(checks)} checks passed")
    elif args.range_limit is not None:
        e, b, u = args.e, args.b, args.u
        res = scan(u, e, b, args.range_limit, args.workers)
        for h, xs in res.by_height.items():
            sig = xs[0]
            ok = height(sig, u, e, b) == h
            if h >= 1:
                ok = ok and ladder_mod.trail_conformance(from_value(sig, b), e)
            failures += not ok
            line = f"{'PASS' if ok else 'FAIL'} h={h} sigma={sig}"
            if len(xs) > 1:
                tau = xs[1]
                line += (
                    f" tau={tau} willmap={str(ladder_mod.willmap_holds(sig, tau, e, b)).lower()}"
                    f" digit multisets equal: {str(ladder_mod.digit_multisets_equal(sig, tau, b)).lower()}"
                )
            print(line)
    else:
        if args.tau is None:
            print("error: --sigma needs --tau", file=sys.stderr)
            return EXIT_USAGE
        eq = ladder_mod.digit_multisets_equal(args.sigma, args.tau, args.b)
        print(f"sigma={args.sigma} tau={args.tau} digit multisets equal: {str(eq).lower()}")
    return EXIT_VERIFY if failures else EXIT_OK


COMMANDS = {
    "spsum": cmd_spsum,
    "height": cmd_height,
    "cycles": cmd_cycles,
    "sigma": cmd_sigma,
    "preimage": cmd_preimage,
    "thresholds": cmd_thresholds,
    "ladder": cmd_ladder,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        compute_g(args.e)
        return COMMANDS[args.command](args)
    except RleParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapExceeded, RepresentationOverflow) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
