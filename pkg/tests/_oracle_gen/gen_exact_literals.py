"""Generate frozen literals for the exact-core tests.

Independent route: the package evaluates K_n(x) by a binomial sum and a
three-term recurrence; here we instead expand the generating function

    sum_n K_n(x) t^n = (1 + q t)^x (1 - p t)^(N - x)

with sympy and read off coefficients.  Run this script and paste its output
into tests/test_exact_core.py; the tests must not recompute these.
"""

import sympy as sp


def gf_krawtchouk(n, x, N, p):
    q = 1 - p
    t = sp.symbols("t")
    poly = sp.Poly(sp.expand((1 + q * t) ** x * (1 - p * t) ** (N - x)), t)
    return poly.coeff_monomial(t**n)


CASES = [
    # (n, x, N, p)
    (3, 4, 10, sp.Rational(1, 2)),
    (5, 2, 12, sp.Rational(1, 3)),
    (4, 9, 11, sp.Rational(2, 7)),
    (7, 7, 14, sp.Rational(64894783, 100000000)),
    (2, 0, 9, sp.Rational(3, 5)),
    (6, 13, 13, sp.Rational(1, 4)),
]

if __name__ == "__main__":
    for n, x, N, p in CASES:
        v = sp.nsimplify(gf_krawtchouk(n, x, N, p))
        print(f"    # N={N}, p={p}: generating-function coefficient of t^{n} at x={x}")
        print(f"    ((({n}, {x}), {N}, '{p}'), Fraction('{sp.Rational(v)}')),")
