"""Exact rational evaluation of Krawtchouk polynomials.

Everything in this module is exact: parameters are :class:`fractions.Fraction`
values, tables are integer-scaled, and the identity checks used elsewhere in
the package really are equality tests.  These values are the ground truth
against which every asymptotic approximation is measured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RationalLike = Union[int, str, Fraction]

__all__ = [
    "DomainError",
    "Params",
    "ExactTable",
    "krawtchouk_sum",
    "krawtchouk_real",
    "build_table",
    "weight",
    "orthogonality_sum",
    "symmetry_image",
    "lemma3_value",
    "signed_log",
]


class DomainError(ValueError):
    """An argument lies outside the domain an operation supports."""


def _as_fraction(value: RationalLike, what: str) -> Fraction:
    # Floats are refused on purpose: Fraction(0.64894783) is the nearest
    # binary double, not the decimal the caller meant.  Strings stay exact.
    if isinstance(value, float):
        raise DomainError(
            f"{what} must be exact; pass {value!r} as a string or Fraction "
            f"so it parses to the intended rational"
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse {what}={value!r} as a rational") from exc


def _check_range(name: str, value: int, upper: int) -> None:
    if not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if not 0 <= value <= upper:
        raise DomainError(f"{name}={value} outside [0, {upper}]")


@dataclass(frozen=True)
class Params:
    """A problem instance: size N and success probability p, with q = 1 - p."""

    N: int
    p: Fraction
    q: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N!r}")
        if not isinstance(self.p, Fraction) or not isinstance(self.q, Fraction):
            raise DomainError("p and q must be Fractions; use Params.from_p/from_q")
        if not Fraction(0) < self.p < Fraction(1):
            raise DomainError(f"p must lie strictly inside (0, 1), got {self.p}")
        if self.p + self.q != 1:
            raise DomainError(f"p + q must equal 1 exactly (p={self.p}, q={self.q})")

    @classmethod
    def from_p(cls, N: int, p: RationalLike) -> "Params":
        pv = _as_fraction(p, "p")
        return cls(N=N, p=pv, q=1 - pv)

    @classmethod
    def from_q(cls, N: int, q: RationalLike) -> "Params":
        qv = _as_fraction(q, "q")
        return cls(N=N, p=1 - qv, q=qv)

    def swapped(self) -> "Params":
        """The p <-> q mirror instance used by the symmetry identity."""
        return Params(N=self.N, p=self.q, q=self.p)

    # -- floating views used by the asymptotic modules ---------------------

    @property
    def eps(self) -> float:
        return 1.0 / self.N

    @property
    def pf(self) -> float:
        return float(self.p)

    @property
    def qf(self) -> float:
        return float(self.q)

    # -- integer scaling ----------------------------------------------------
    # q = 1 - p shares p's denominator b (gcd(b - a, b) = gcd(a, b) = 1), so
    # b**n * K_n(x) is an integer for integer x.  All table arithmetic runs
    # on those integers.

    @property
    def denom(self) -> int:
        return self.p.denominator

    @property
    def p_num(self) -> int:
        return self.p.numerator

    @property
    def q_num(self) -> int:
        return self.q.numerator


class ExactTable:
    """Immutable (N+1) x (N+1) table of exact ``K_n(x)`` values.

    Row ``n`` is stored as a tuple of integers scaled by ``denom**n``; the
    :meth:`value` accessor undoes the scaling.  Once built, the table is
    read-only and safe to share between threads.
    """

    __slots__ = ("params", "_rows")

    def __init__(self, params: Params, rows: tuple) -> None:
        self.params = params
        self._rows = rows

    def value(self, n: int, x: int) -> Fraction:
        """Exact ``K_n(x)``."""
        _check_range("n", n, self.params.N)
        _check_range("x", x, self.params.N)
        return Fraction(self._rows[n][x], self.params.denom**n)

    def scaled_row(self, n: int) -> tuple:
        """Row ``n`` as integers, scaled by ``denom**n`` (internal units)."""
        return self._rows[n]

    def signed_log(self, n: int, x: int):
        """``(sign, ln|K_n(x)|)`` without building a huge float."""
        num = self._rows[n][x]
        if num == 0:
            return 0, float("-inf")
        ln = _ln_abs_int(num) - n * math.log(self.params.denom)
        return (1 if num > 0 else -1), ln


def _ln_abs_int(value: int) -> float:
    """log(|value|) for integers far beyond float range."""
    value = abs(value)
    if value == 0:
        return float("-inf")
    bits = value.bit_length()
    if bits <= 900:
        return math.log(value)
    shift = bits - 64
    return math.log(value >> shift) + shift * math.log(2)


def signed_log(value: Fraction):
    """``(sign, ln|value|)`` of an exact rational, overflow-free."""
    if value == 0:
        return 0, float("-inf")
    sign = 1 if value > 0 else -1
    return sign, _ln_abs_int(value.numerator) - _ln_abs_int(value.denominator)


def krawtchouk_sum(n: int, x: int, params: Params) -> Fraction:
    """Evaluate ``K_n(x)`` by its terminating binomial sum, exactly.

    K_n(x) = sum_k C(x,k) C(N-x, n-k) q^k (-p)^(n-k).  Binomials whose upper
    index is smaller than the lower one vanish, so at most min(n,x)+1 terms
    are live.  The sum is accumulated as a single integer over denom**n.
    """
    _check_range("n", n, params.N)
    _check_range("x", x, params.N)
    N = params.N
    ap, aq = params.p_num, params.q_num
    total = 0
    for k in range(min(n, x) + 1):
        c = math.comb(x, k) * math.comb(N - x, n - k)
        if c:
            total += c * aq**k * (-ap) ** (n - k)
    return Fraction(total, params.denom**n)


def _falling_binom(a: Fraction, k: int) -> Fraction:
    """Generalized binomial C(a, k) = a(a-1)...(a-k+1)/k! for rational a."""
    num = Fraction(1)
    for i in range(k):
        num *= a - i
    return num / math.factorial(k)


def krawtchouk_real(n: int, x, params: Params) -> float:
    """``K_n`` extended to real ``x`` via falling-factorial binomials.

    A float ``x`` is taken at face value as the dyadic rational it stores and
    the whole computation stays exact until the final conversion, so integer
    inputs reproduce :func:`krawtchouk_sum` to the last bit.
    """
    _check_range("n", n, params.N)
    xv = Fraction(x)
    N, p, q = params.N, params.p, params.q
    total = Fraction(0)
    for k in range(n + 1):
        c1 = _falling_binom(xv, k)
        if c1 == 0:
            continue
        c2 = _falling_binom(N - xv, n - k)
        if c2 == 0:
            continue
        total += c1 * c2 * q**k * (-p) ** (n - k)
    return float(total)


def build_table(params: Params) -> ExactTable:
    """Build the full table of ``K_n(x)`` from the three-term recurrence.

    Seeds are K_0(x) = 1 and K_1(x) = x - pN; each later row comes from

        (n+1) K_{n+1}(x) = -pq (N-n+1) K_{n-1}(x) - [p(N-n) + nq - x] K_n(x),

    run in integer-scaled arithmetic with an exact-divisibility check.  As a
    final self-check one extra step is taken: the implied degree-(N+1) row
    must vanish identically, because it equals C(x, N+1) for x <= N.
    """
    N = params.N
    b = params.denom
    ap, aq = params.p_num, params.q_num
    rows = [tuple([1] * (N + 1))]
    rows.append(tuple(b * x - ap * N for x in range(N + 1)))
    for n in range(1, N):
        prev, cur = rows[n - 1], rows[n]
        lead = ap * aq * (N - n + 1)
        base = ap * (N - n) + n * aq
        nxt = []
        for x in range(N + 1):
            rhs = -lead * prev[x] - (base - x * b) * cur[x]
            quot, rem = divmod(rhs, n + 1)
            if rem:
                raise ArithmeticError(
                    f"recurrence step n={n}, x={x} not divisible by n+1 (internal bug)"
                )
            nxt.append(quot)
        rows.append(tuple(nxt))
    # Implied row N+1: -pq * J_{N-1} - (N q - x) * J_N must be zero for every x.
    prev, cur = rows[N - 1], rows[N]
    for x in range(N + 1):
        rhs = -ap * aq * prev[x] - (N * aq - x * b) * cur[x]
        if rhs != 0:
            raise ArithmeticError(
                f"table self-check failed: implied K_{{N+1}}({x}) != 0"
            )
    return ExactTable(params, tuple(rows))


def weight(x: int, params: Params) -> Fraction:
    """Binomial weight C(N,x) p^x q^(N-x), exactly."""
    _check_range("x", x, params.N)
    N = params.N
    return math.comb(N, x) * params.p**x * params.q ** (N - x)


def orthogonality_sum(i: int, j: int, params: Params, table: ExactTable) -> Fraction:
    """sum_k K_i(k) K_j(k) weight(k), exactly.

    Equals C(N,j) (pq)^j when i == j and 0 otherwise; the whole sum is
    accumulated as one integer over denom**(i+j+N).
    """
    _check_range("i", i, params.N)
    _check_range("j", j, params.N)
    N = params.N
    ap, aq = params.p_num, params.q_num
    ri, rj = table.scaled_row(i), table.scaled_row(j)
    total = 0
    for k in range(N + 1):
        total += math.comb(N, k) * ap**k * aq ** (N - k) * ri[k] * rj[k]
    return Fraction(total, params.denom ** (i + j + N))


def symmetry_image(n: int, x: int, params: Params) -> Fraction:
    """(-1)^n K_n(N-x) with p and q swapped; equals K_n(x) exactly."""
    _check_range("n", n, params.N)
    _check_range("x", x, params.N)
    value = krawtchouk_sum(n, params.N - x, params.swapped())
    return -value if n % 2 else value


def lemma3_value(m: int, n: int, params: Params) -> float:
    """Envelope value (-p)^n C(N,n) (1 - n/(pN))^m as a float.

    Exact (up to rounding) for m in {0, 1}; for larger fixed m it is the
    small-x asymptotic of K_n(m).  Log-gamma keeps the binomial finite far
    past the point where C(N,n) overflows a double.  The base 1 - n/(pN)
    is negative for n > pN, which is fine: its sign is tracked separately.
    """
    if not isinstance(m, int) or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    _check_range("n", n, params.N)
    N = params.N
    ln_mag = (
        math.lgamma(N + 1)
        - math.lgamma(n + 1)
        - math.lgamma(N - n + 1)
        + n * math.log(params.pf)
    )
    sign = -1 if n % 2 else 1
    if m > 0:
        t = 1 - Fraction(n) / (params.p * N)
        if t == 0:
            return 0.0
        if t < 0 and m % 2:
            sign = -sign
        ln_mag += m * math.log(abs(float(t)))
    return sign * math.exp(ln_mag)
