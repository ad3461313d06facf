#!/usr/bin/env python3
"""Sweep one polynomial row, comparing every asymptotic value to the exact one.

For each x the evaluator picks a region formula; the windowed relative error
normalizes |approx - exact| by the largest exact magnitude within five grid
columns, which keeps the metric meaningful at sign changes (nodes).

    python3 demos/accuracy_sweep.py [N] [q] [n]
"""

import sys

from krawtchouk_wkb import Params, approx
from krawtchouk_wkb.cli import exact_table, norm_err


def bar(err: float, width: int = 40) -> str:
    filled = min(width, int(err * 10 * width))
    return "#" * filled


def main() -> int:
    N = int(sys.argv[1]) if len(sys.argv) > 1 else 100
    q = sys.argv[2] if len(sys.argv) > 2 else "0.34894783"
    n = int(sys.argv[3]) if len(sys.argv) > 3 else 10
    params = Params.from_q(N, q)
    table = exact_table(N, q)
    print(f"N={N}  q={q}  degree n={n}   (error bar full scale = 10%)")
    print(f"{'x':>4} {'region':>8} {'exact sign':>10} {'windowed err':>13}")
    worst = (0.0, -1, "")
    for x in range(0, N + 1):
        av = approx(x, n, params)
        err = norm_err(av, table, n, x)
        sign, _ = table.signed_log(n, x)
        label = av.region.label
        if x % 2 == 0 or err > 0.01:
            print(f"{x:>4} {label:>8} {sign:>10} {err:>12.2%} {bar(err)}")
        if err > worst[0]:
            worst = (err, x, label)
    print(f"\nworst windowed error: {worst[0]:.2%} at x={worst[1]} (region {worst[2]})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
