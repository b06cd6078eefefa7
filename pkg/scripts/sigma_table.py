"""Exhaustive sigma/tau table for a few (e, b, u), with the willmap test and
whether tau is a rearrangement of sigma's digits."""

import sys

from happyladder.ladder import digit_multisets_equal, willmap_holds
from happyladder.search import scan

CONFIGS = [(2, 10, 1), (3, 10, 1), (2, 8, 1), (1, 10, 1), (2, 3, 1)]
limit = int(float(sys.argv[1])) if len(sys.argv) > 1 else 10**6

for e, b, u in CONFIGS:
    res = scan(u, e, b, limit)
    print(f"e={e} b={b} u={u}  scanned 1..{limit}")
    for h, xs in res.by_height.items():
        line = f"  h={h:<3} sigma={xs[0]:<10}"
        if len(xs) > 1:
            s, t = xs
            line += f" tau={t:<10} willmap={willmap_holds(s, t, e, b)!s:<5} permutation={digit_multisets_equal(s, t, b)}"
        print(line)
