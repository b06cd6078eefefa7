"""Build the certified ladder for one (e, b, u) and print a summary.

    python scripts/reproduce_ladder.py --e 2 --b 10 --u 1 --to 12
"""

import argparse
import time

from happyladder import ladder as L
from happyladder.errors import RepresentationOverflow


def short_count(n: int) -> str:
    return str(n) if n < 10**9 else f"~10^{len(str(n)) - 1}"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--e", type=int, default=2)
    ap.add_argument("--b", type=int, default=10)
    ap.add_argument("--u", type=int, default=1)
    ap.add_argument("--to", type=int, default=12)
    ap.add_argument("--scan-limit", type=int, default=10**6)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    t0 = time.perf_counter()
    status = "complete"
    try:
        lad = L.extend(L.Ladder.start(args.e, args.b, args.u), args.to, scan_limit=args.scan_limit)
    except RepresentationOverflow as exc:
        lad = L.Ladder(args.e, args.b, args.u, exc.entries)
        status = f"truncated ({exc})"
    for r in lad.entries:
        text = str(r.sigma)
        if len(text) > 60:
            text = text[:28] + "..." + text[-28:]
        print(f"h={r.h:<3} digits={short_count(r.sigma.digit_count):<10} {r.certificate!s:<18} {text}")
    print(f"status: {status}  [{time.perf_counter() - t0:.2f}s]")

    checks = L.verify(lad, scan_limit=min(args.scan_limit, 10**5))
    bad = [c for c in checks if not c.passed]
    print(f"verify: {len(checks) - len(bad)}/{len(checks)} checks passed")
    for c in bad:
        print(f"  FAIL h={c.h} {c.name} {c.detail}")
    if args.out:
        L.save(lad, args.out)


if __name__ == "__main__":
    main()
