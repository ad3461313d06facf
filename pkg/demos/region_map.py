#!/usr/bin/env python3
"""Print an ASCII map of the twelve asymptotic regions on the (x, n) grid.

Each grid point is classified by the same rules the evaluator uses; mirrored
points (right half, evaluated by symmetry) are shown in lowercase.

    python3 demos/region_map.py [N] [q]
"""

import sys

from krawtchouk_wkb import Params, classify

GLYPHS = {
    "I": "L", "II": "W", "III": "M", "IV": "P", "V": "E", "VI": "K",
    "VII": "Z", "VIII": "A", "IX": "B", "X": ".", "XI": "T", "XII": "C",
}


def main() -> int:
    N = int(sys.argv[1]) if len(sys.argv) > 1 else 60
    q = sys.argv[2] if len(sys.argv) > 2 else "0.64894783"
    params = Params.from_q(N, q)
    print(f"N={N}  q={q}  (rows: degree n, bottom to top; cols: x)")
    print("legend:", "  ".join(f"{g}={t}" for t, g in GLYPHS.items()),
          " lowercase/,=mirrored")
    step = max(1, N // 60)
    for n in range(N, -1, -step):
        cells = []
        for x in range(0, N + 1, step):
            rid = classify(x, n, params)
            g = GLYPHS[rid.tag]
            if rid.mirrored:
                g = "," if g == "." else g.lower()
            cells.append(g)
        print(f"n={n:>4}  " + "".join(cells))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
