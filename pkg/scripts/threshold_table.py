"""Print g(e), p and the corollary threshold d_cor over a grid of (e, b)."""

from happyladder.waring import thresholds

print(f"{'e':>2} {'b':>3} {'g':>4} {'p':>2} {'trail const':>12} {'d_cor':>6}")
for e in range(1, 7):
    for b in (2, 3, 4, 5, 8, 10, 12, 16):
        th = thresholds(e, b)
        print(f"{e:>2} {b:>3} {th.g:>4} {th.p:>2} {float(th.trail_constant):>12.3f} {th.d_cor:>6}")
