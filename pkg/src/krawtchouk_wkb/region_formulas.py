"""Final asymptotic approximations for each of the twelve regions.

Every formula returns an :class:`ApproxValue`: a real approximation to the
polynomial value at one grid point, together with an imaginary-residue
diagnostic, the region it came from, and the log-magnitude for overflow-free
reporting.  Internally each formula works in a scale-split representation
``mantissa * exp(scale)`` with a complex O(1) mantissa and a real scale that
absorbs everything growing like N, so sums of exponentially mismatched terms
and values beyond double range are handled uniformly.

Phases of the form exp(i*pi*t) are snapped to +-1 (and cos/sin factors to
exact 0/+-1) whenever t is within 1e-9 of an integer, which is the case for
every integer grid point; this makes the integer-x algebraic identities hold
exactly instead of to rounding, and makes im_residue exactly zero on the
purely real evaluation paths.  Non-integer inputs keep the full complex phase
and report its leaked imaginary part.

The :func:`approx` dispatcher classifies the point, routes it to the matching
formula, and applies the mirror symmetry (evaluate at (N-x, n) with the roles
of p and q swapped, multiply by (-1)^n) for points on the mirrored side.
"""

from __future__ import annotations

import cmath
import math
from typing import List, NamedTuple, Tuple

from .exact_core import DomainError, Params
from .special_fns import airy_ai, airy_bi, hermite, lambda_j, pcf_d
from .state_space import (
    DEFAULT_CONFIG,
    ClassifierConfig,
    RegionId,
    ScaledPoint,
    classify,
    corner_coords,
    u0,
    y_pm,
)
from .wkb_core import SingularityError, k_pm_log, lambda_pm, phi0, psi0, theta, u0_log_ratio, vartheta

__all__ = [
    "ApproxValue",
    "k1",
    "k2",
    "k3_k4",
    "k5",
    "k6",
    "k7",
    "k8",
    "k9",
    "k10",
    "k11",
    "k12",
    "approx",
    "evaluate_region",
]

#: Distance from an integer (or half-integer) below which trigonometric
#: factors of pi*t are snapped to their exact values.
_SNAP = 1e-9

#: exp() arguments beyond these act as overflow/underflow in doubles.
_EXP_MAX = 709.0
_EXP_MIN = -745.0

_Scaled = Tuple[complex, float]


class ApproxValue(NamedTuple):
    """One asymptotic evaluation.

    value is the real approximation (may be +-0.0 or +-inf when the true
    magnitude leaves double range; sign and ln_scale stay meaningful).
    im_residue is the magnitude of the imaginary part that was discarded --
    an implementation diagnostic that should be tiny for integer inputs.
    region records which formula produced the value, and ln_scale is
    ln|value| (-inf for an exact zero), valid even when value overflows.
    """

    value: float
    im_residue: float
    region: RegionId
    ln_scale: float


def _cospi(t: float) -> float:
    """cos(pi*t) with integer and half-integer arguments made exact."""
    r = round(t)
    if abs(t - r) < _SNAP:
        return 1.0 if r % 2 == 0 else -1.0
    k = math.floor(t)
    if abs(t - k - 0.5) < _SNAP:
        return 0.0
    return math.cos(math.pi * t)


def _sinpi(t: float) -> float:
    """sin(pi*t) with integer and half-integer arguments made exact."""
    r = round(t)
    if abs(t - r) < _SNAP:
        return 0.0
    k = math.floor(t)
    if abs(t - k - 0.5) < _SNAP:
        return 1.0 if k % 2 == 0 else -1.0
    return math.sin(math.pi * t)


def _phase_factor(t: float) -> complex:
    """exp(i*pi*t) snapped to exactly +-1 at integer t."""
    r = round(t)
    if abs(t - r) < _SNAP:
        return complex(1.0 if r % 2 == 0 else -1.0, 0.0)
    return cmath.exp(complex(0.0, math.pi * t))


def _from_log(lk: complex) -> _Scaled:
    """Split a log-space value into (unit-phase mantissa, real scale)."""
    return _phase_factor(lk.imag / math.pi), lk.real


def _sum_scaled(terms: List[_Scaled]) -> _Scaled:
    """Add scale-split terms on the largest scale; vastly smaller terms underflow to 0."""
    live = [(m, s) for m, s in terms if m != 0.0]
    if not live:
        return 0.0j, 0.0
    smax = max(s for _, s in live)
    total = 0.0j
    for m, s in live:
        d = s - smax
        if d > _EXP_MIN:
            total += m * math.exp(d)
    return total, smax


def _signed_exp(sign_carrier: float, ln_mag: float) -> float:
    """sign(sign_carrier) * exp(ln_mag) with saturation instead of OverflowError."""
    if ln_mag > _EXP_MAX:
        return math.copysign(math.inf, sign_carrier)
    return math.copysign(math.exp(ln_mag), sign_carrier)


def _finalize(m: complex, s: float, region: RegionId) -> ApproxValue:
    re, im = m.real, m.imag
    if re == 0.0:
        value, ln_scale = 0.0, -math.inf
    else:
        ln_scale = s + math.log(abs(re))
        value = _signed_exp(re, ln_scale)
    if im == 0.0:
        im_residue = 0.0
    else:
        im_residue = abs(_signed_exp(1.0, s + math.log(abs(im))))
    return ApproxValue(value, im_residue, region, ln_scale)


def _zero(region: RegionId) -> ApproxValue:
    return ApproxValue(0.0, 0.0, region, -math.inf)


def _check_count(value: int, name: str, params: Params) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if not 0 <= value <= params.N:
        raise DomainError(f"{name}={value} outside [0, {params.N}]")


def _check_real(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# The twelve formulas
# ---------------------------------------------------------------------------


def k1(n: int, y: float, params: Params) -> ApproxValue:
    """Bottom rows away from the center: (y - p)^n / (n! eps^n)."""
    _check_count(n, "n", params)
    y = _check_real(y, "y")
    region = RegionId("I")
    if n == 0:
        return ApproxValue(1.0, 0.0, region, 0.0)
    d = y - params.pf
    if d == 0.0:
        return _zero(region)
    s = n * (math.log(abs(d)) - math.log(params.eps)) - math.lgamma(n + 1)
    m = complex(1.0 if d > 0.0 or n % 2 == 0 else -1.0, 0.0)
    return _finalize(m, s, region)


def k2(n: int, eta: float, params: Params) -> ApproxValue:
    """Bottom-center corner: scaled Hermite polynomial in the corner variable."""
    _check_count(n, "n", params)
    eta = _check_real(eta, "eta")
    region = RegionId("II")
    H = hermite(n, eta)
    if H == 0.0:
        return _zero(region)
    p, q = params.pf, params.qf
    s = (0.5 * n * (math.log(p * q / 2.0) - math.log(params.eps))
         - math.lgamma(n + 1) + math.log(abs(H)))
    return _finalize(complex(math.copysign(1.0, H), 0.0), s, region)


def k3_k4(pt: ScaledPoint, params: Params) -> ApproxValue:
    """Lower exterior of the oscillatory zone: single dominant branch.

    Left of the lower turning curve the minus branch applies (value alternates
    like (-1)^n); right of the upper curve the plus branch applies.
    """
    if pt.z >= params.pf:
        raise DomainError(
            "single-branch exterior formula requires z < p; the upper-left "
            "exterior uses the interference formula instead"
        )
    ym, yp = y_pm(pt.z, params)
    if pt.y < ym:
        branch, region = "-", RegionId("III")
    elif pt.y > yp:
        branch, region = "+", RegionId("IV")
    else:
        raise DomainError(
            f"point (y={pt.y!r}, z={pt.z!r}) lies between the turning curves; "
            "use the oscillatory-interior formula"
        )
    m, s = _from_log(k_pm_log(branch, pt, params))
    return _finalize(m, s, region)


def k5(x: float, z: float, params: Params) -> ApproxValue:
    """Left edge above the crossover, small x: explicit two-term form.

    The second term carries sin(pi*x) and vanishes identically at integer x;
    Gamma(x+1)*sin(pi*x) keeps it regular at x = 0.
    """
    x = _check_real(x, "x")
    z = _check_real(z, "z")
    if x < 0.0:
        raise DomainError(f"x={x} must be nonnegative")
    p, q = params.pf, params.qf
    if z == p:
        raise SingularityError("z = p is the corner layer; use the corner formula")
    if not p < z < 1.0:
        raise DomainError(f"left-edge formula requires p < z < 1, got z={z!r}")
    region = RegionId("V")
    N = params.N
    eps = params.eps
    phase = _phase_factor(z * N)  # alternation factor exp(i*pi*z/eps)
    s1 = (0.5 * math.log(eps) - 0.5 * math.log(2.0 * math.pi * z * (1.0 - z))
          + phi0(z, params).real * N + x * math.log((z - p) / p))
    terms = [(_cospi(x) * phase, s1)]
    sn = _sinpi(x)
    if sn != 0.0:
        s2 = (math.log(eps / math.pi) + math.lgamma(x + 1.0)
              + x * math.log(q * eps / (z - p)) - math.log(z - p)
              + (z - 1.0) * math.log(q) * N)
        terms.append((-sn * phase, s2))
    m, s = _sum_scaled(terms)
    return _finalize(m, s, region)


def k6(x: float, u: float, params: Params) -> ApproxValue:
    """Left-edge corner at the crossover: parabolic-cylinder profile in u."""
    x = _check_real(x, "x")
    u = _check_real(u, "u")
    if x < 0.0:
        raise DomainError(f"x={x} must be nonnegative")
    region = RegionId("VI")
    p, q = params.pf, params.qf
    N = params.N
    D = pcf_d(x, u).real
    if D == 0.0:
        return _zero(region)
    root_pqN = math.sqrt(p * q * N)
    s = (0.5 * math.log(params.eps) - 0.5 * math.log(2.0 * math.pi * p * q)
         + 0.5 * x * math.log(q * params.eps / p) - 0.25 * u * u
         + math.log(abs(D))
         - q * math.log(q) * N - u * math.log(q) * root_pqN)
    # Oscillation factor exp[i*pi*(p/eps - u*sqrt(pq/eps))]; the argument is
    # exactly pi*n when u comes from an integer grid point.
    m = math.copysign(1.0, D) * _phase_factor(p * N - u * root_pqN)
    return _finalize(m, s, region)


def k7(pt: ScaledPoint, params: Params) -> ApproxValue:
    """Upper-left exterior: two-branch interference form.

    value = Re{ (w + 1)/2 * K+ + (w - 1) * K- } with w = exp(2*pi*i*y/eps).
    At integer x, w = 1 exactly and the dominant minus branch cancels, leaving
    K+ alone; the minus branch is then not evaluated at all (it is singular
    at y = 0).
    """
    if pt.z <= params.pf:
        raise DomainError(f"interference formula requires z > p, got z={pt.z!r}")
    ym = y_pm(pt.z, params)[0]
    if pt.y >= ym:
        raise DomainError(
            f"point (y={pt.y!r}, z={pt.z!r}) is not left of the lower turning curve"
        )
    region = RegionId("VII")
    w = _phase_factor(2.0 * pt.y * params.N)
    mp, sp = _from_log(k_pm_log("+", pt, params))
    terms = [(0.5 * (w + 1.0) * mp, sp)]
    cm = w - 1.0
    if cm != 0.0:
        mm, sm = _from_log(k_pm_log("-", pt, params))
        terms.append((cm * mm, sm))
    m, s = _sum_scaled(terms)
    return _finalize(m, s, region)


def k8(beta: float, z: float, params: Params) -> ApproxValue:
    """Lower turning strip: Airy profile across the curve (z < p)."""
    beta = _check_real(beta, "beta")
    z = _check_real(z, "z")
    p = params.pf
    if z == p:
        raise SingularityError("strip coefficient diverges at z = p")
    if not 0.0 < z < p:
        raise DomainError(f"lower-strip formula requires 0 < z < p, got z={z!r}")
    region = RegionId("VIII")
    N = params.N
    th = theta(z, params)
    ai = airy_ai(th ** (2.0 / 3.0) * beta)
    if ai == 0.0:
        return _zero(region)
    ps0 = psi0(z, params)
    slope = u0_log_ratio(z, params)  # real for z < p
    s = (math.log(params.eps) / 3.0 + ps0.real * N
         + slope.real * beta * params.eps ** (-1.0 / 3.0)
         + math.log(abs(ai)) - math.log(th) / 3.0
         - 0.5 * math.log(z * u0(z, params)))
    m = math.copysign(1.0, ai) * _phase_factor(ps0.imag * N / math.pi)
    return _finalize(m, s, region)


def k9(beta: float, z: float, params: Params) -> ApproxValue:
    """Upper turning strip (z > p): Airy pair weighted by interference factors.

    At integer x the weights collapse to (2, 0) so only the Ai term remains.
    """
    beta = _check_real(beta, "beta")
    z = _check_real(z, "z")
    p = params.pf
    if z == p:
        raise SingularityError("strip coefficient diverges at z = p")
    if not p < z < 1.0:
        raise DomainError(f"upper-strip formula requires p < z < 1, got z={z!r}")
    region = RegionId("IX")
    N = params.N
    vt = vartheta(z, params)
    arg = vt ** (2.0 / 3.0) * beta
    lam_p = lambda_pm("+", beta, z, params)
    lam_m = lambda_pm("-", beta, z, params)
    bracket = lam_p * airy_ai(arg)
    if lam_m != 0.0:
        bracket += 1j * lam_m * airy_bi(arg)
    if bracket == 0.0:
        return _zero(region)
    ps0 = psi0(z, params)
    slope = u0_log_ratio(z, params)  # carries -i*pi for z > p
    stretch = params.eps ** (-1.0 / 3.0)
    s = (math.log(params.eps) / 3.0 + ps0.real * N + slope.real * beta * stretch
         + math.log(0.5) - math.log(vt) / 3.0
         - 0.5 * math.log(z * u0(z, params)))
    t = (ps0.imag * N + slope.imag * beta * stretch) / math.pi
    m = _phase_factor(t) * bracket
    return _finalize(m, s, region)


def k10(pt: ScaledPoint, params: Params) -> ApproxValue:
    """Oscillatory interior: sum of the two conjugate branches."""
    ym, yp = y_pm(pt.z, params)
    if not ym < pt.y < yp:
        raise DomainError(
            f"point (y={pt.y!r}, z={pt.z!r}) is not between the turning curves"
        )
    region = RegionId("X")
    terms = [_from_log(k_pm_log(branch, pt, params)) for branch in ("+", "-")]
    m, s = _sum_scaled(terms)
    return _finalize(m, s, region)


def k11(j: int, y: float, params: Params) -> ApproxValue:
    """Top rows (n = N - j for small j): two combinatorial terms.

    The second term has binomial support x >= N - j and vanishes outside it.
    """
    _check_count(j, "j", params)
    y = _check_real(y, "y")
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"y={y} outside the unit interval")
    p, q = params.pf, params.qf
    if y == q:
        raise SingularityError("y = q is the top corner layer; use the corner formula")
    N = params.N
    xf = y * N
    x = round(xf)
    if abs(xf - x) > _SNAP * max(1.0, N):
        raise DomainError(f"y*N={xf!r} must be an integer for the binomial term")
    region = RegionId("XI")
    sign_qy = 1.0 if y < q else -1.0
    s1 = (math.log(math.comb(N, j)) + (N - j) * math.log(p)
          + xf * math.log(q / p) + j * (math.log(abs(q - y)) - math.log(q)))
    m1 = ((-1.0 if (N - j) % 2 else 1.0) * _cospi(xf)
          * (sign_qy if j % 2 else 1.0))
    terms = [(complex(m1, 0.0), s1)]
    if x >= N - j and y < 1.0:
        c2 = math.comb(x, N - j)
        if c2:
            s2 = math.log(c2) + (j + 1) * (math.log1p(-y) - math.log(abs(q - y)))
            m2 = sign_qy if (j + 1) % 2 else 1.0
            terms.append((complex(m2, 0.0), s2))
    m, s = _sum_scaled(terms)
    return _finalize(m, s, region)


def k12(j: int, xi: float, params: Params) -> ApproxValue:
    """Top corner: parabolic-cylinder profile in the corner variable xi.

    The sin factor vanishes identically at integer x (its argument reduces to
    pi*(N - x) there), so only the D_j term survives on the grid.
    """
    _check_count(j, "j", params)
    xi = _check_real(xi, "xi")
    region = RegionId("XII")
    p, q = params.pf, params.qf
    N = params.N
    root = xi * math.sqrt(2.0 * p * q * N)
    t = p * N - root  # trig argument in units of pi; equals N - x on the grid
    s_common = ((p * math.log(p) + q * math.log(q)) * N + root * math.log(q / p)
                - 0.5 * j * math.log(p * q * params.eps) + 0.5 * xi * xi)
    terms: List[_Scaled] = []
    cs = _cospi(t)
    if cs != 0.0:
        D = pcf_d(j, math.sqrt(2.0) * xi).real
        if D != 0.0:
            sA = s_common + math.log(abs(D)) - math.lgamma(j + 1)
            terms.append((complex(math.copysign(1.0, D) * cs, 0.0), sA))
    sn = _sinpi(t)
    if sn != 0.0:
        lam = lambda_j(j, xi)
        if lam != 0.0:
            sB = s_common + math.log(abs(lam)) - 0.5 * math.log(2.0 * math.pi)
            terms.append((complex(-math.copysign(1.0, lam) * sn, 0.0), sB))
    m, s = _sum_scaled(terms)
    return _finalize(m, s, region)


# ---------------------------------------------------------------------------
# Dispatcher
# ---------------------------------------------------------------------------


def _eval_tag(tag: str, x: int, n: int, params: Params) -> ApproxValue:
    pt = ScaledPoint.from_indices(x, n, params)
    if tag == "I":
        return k1(n, pt.y, params)
    if tag == "II":
        return k2(n, corner_coords(x, n, params).eta, params)
    if tag in ("III", "IV"):
        return k3_k4(pt, params)
    if tag == "V":
        return k5(float(x), pt.z, params)
    if tag == "VI":
        return k6(float(x), corner_coords(x, n, params).u, params)
    if tag == "VII":
        return k7(pt, params)
    if tag == "VIII":
        return k8(corner_coords(x, n, params).beta, pt.z, params)
    if tag == "IX":
        return k9(corner_coords(x, n, params).beta, pt.z, params)
    if tag == "X":
        return k10(pt, params)
    if tag == "XI":
        return k11(corner_coords(x, n, params).j, pt.y, params)
    if tag == "XII":
        cc = corner_coords(x, n, params)
        return k12(cc.j, cc.xi, params)
    raise DomainError(f"unknown region tag {tag!r}")


def evaluate_region(tag: str, x: int, n: int, params: Params) -> ApproxValue:
    """Evaluate one region's formula at (x, n), bypassing the classifier.

    Useful for sweeping a single formula across (and beyond) its nominal
    domain; raises DomainError for an unknown tag and propagates each
    formula's own domain/singularity errors unchanged.
    """
    if tag not in (
        "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII",
    ):
        raise DomainError(f"unknown region tag {tag!r}")
    return _eval_tag(tag, x, n, params)


def approx(x: int, n: int, params: Params,
           cfg: ClassifierConfig = DEFAULT_CONFIG) -> ApproxValue:
    """Classify (x, n) and evaluate the matching regional formula.

    Mirrored points are evaluated at (N - x, n) with the roles of p and q
    swapped and the result multiplied by (-1)^n; the reported region keeps the
    mirrored flag from the classifier.
    """
    rid = classify(x, n, params, cfg)
    if rid.mirrored:
        inner = "III" if rid.tag == "IV" else rid.tag
        base = _eval_tag(inner, params.N - x, n, params.swapped())
        sign = -1.0 if n % 2 else 1.0
        return ApproxValue(sign * base.value, base.im_residue, rid, base.ln_scale)
    base = _eval_tag(rid.tag, x, n, params)
    return ApproxValue(base.value, base.im_residue, rid, base.ln_scale)
