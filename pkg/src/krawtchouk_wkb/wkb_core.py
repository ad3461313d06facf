"""Phase and amplitude building blocks for the two asymptotic branches.

Each branch contributes K = sqrt(eps/(2*pi)) * exp(psi/eps) * L, where the
phase psi and the amplitude L are algebraic functions of the branch root U.
All logarithms and square roots take principal branches with negative reals
mapped to +i*pi, which fixes every sign convention downstream; exp(psi/eps)
is only ever formed in log-space (``k_pm_log``) because its real part grows
like N.

The remaining operations are the turning-strip ingredients: the phase
``psi0`` and slope ``u0_log_ratio`` of the strip expansion, the curvature
coefficients ``theta``/``vartheta`` feeding the oscillator-equation argument,
the interference coefficients ``lambda_pm``, and the left-edge phase
``phi0``.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

from .exact_core import DomainError, Params
from .special_fns import RangeError
from .state_space import ScaledPoint, u0, u_pm, y_pm

__all__ = [
    "SingularityError",
    "ComplexAmplitude",
    "plog",
    "psqrt",
    "psi_pm",
    "l_pm",
    "k_pm",
    "k_pm_log",
    "amplitude",
    "psi0",
    "theta",
    "vartheta",
    "u0_log_ratio",
    "lambda_pm",
    "phi0",
]

#: Relative half-width of the coalescence guard around the turning curves.
_COALESCENCE_RTOL = 1e-10

#: Snap tolerance for integer winding numbers in ``lambda_pm``.
_WINDING_SNAP = 1e-9


class SingularityError(ArithmeticError):
    """A branch quantity was requested on or too close to one of its poles."""


class ComplexAmplitude(NamedTuple):
    """Phase/amplitude pair (psi, L) of one branch at one point."""

    psi: complex
    L: complex


def plog(w: complex) -> complex:
    """Principal-branch complex logarithm with negative reals mapped to +i*pi.

    ``cmath.log`` sends a negative real carrying a -0.0 imaginary part to the
    lower branch cut (-i*pi); this wrapper normalizes the signed zero first.
    """
    w = complex(w)
    if w.imag == 0.0:
        w = complex(w.real, 0.0)
    if w == 0.0:
        raise SingularityError("logarithm of a vanishing branch factor")
    return cmath.log(w)


def psqrt(w: complex) -> complex:
    """Principal-branch square root with negative reals mapped to +i*sqrt."""
    w = complex(w)
    if w.imag == 0.0:
        w = complex(w.real, 0.0)
    return cmath.sqrt(w)


def _branch_root(branch: str, pt: ScaledPoint, params: Params) -> complex:
    if branch not in ("+", "-"):
        raise DomainError(f"branch must be '+' or '-', got {branch!r}")
    um, up = u_pm(pt, params)
    return up if branch == "+" else um


def _guarded_root(branch: str, pt: ScaledPoint, params: Params) -> complex:
    if not 0.0 < pt.z < 1.0:
        raise SingularityError(f"branch quantities are singular at z={pt.z!r}")
    U = _branch_root(branch, pt, params)
    r2 = u0(pt.z, params) ** 2
    if abs(U * U - r2) < _COALESCENCE_RTOL * r2:
        raise SingularityError(
            f"branches coalesce near (y={pt.y!r}, z={pt.z!r}); "
            "use the turning-strip formulas there"
        )
    return U


def psi_pm(branch: str, pt: ScaledPoint, params: Params) -> complex:
    """Branch phase psi = ln[U^{z-1} (U-p)^{1-y} (U+q)^y], principal branches."""
    U = _guarded_root(branch, pt, params)
    p, q = params.pf, params.qf
    y, z = pt.y, pt.z
    return (z - 1.0) * plog(U) + (1.0 - y) * plog(U - p) + y * plog(U + q)


def l_pm(branch: str, pt: ScaledPoint, params: Params) -> complex:
    """Branch amplitude L = sqrt[(U-p)(U+q) / (z * (U^2 - u0^2))]."""
    U = _guarded_root(branch, pt, params)
    p, q = params.pf, params.qf
    r2 = u0(pt.z, params) ** 2
    return psqrt((U - p) * (U + q) / (pt.z * (U * U - r2)))


def amplitude(branch: str, pt: ScaledPoint, params: Params) -> ComplexAmplitude:
    """Both branch ingredients at once."""
    return ComplexAmplitude(psi_pm(branch, pt, params), l_pm(branch, pt, params))


def k_pm_log(branch: str, pt: ScaledPoint, params: Params) -> complex:
    """log of the branch contribution K = sqrt(eps/(2*pi)) e^{psi/eps} L.

    The real part is ln|K| and the imaginary part the accumulated phase (not
    reduced mod 2*pi).  psi/eps is computed as psi*N, which is exact in the
    scaling.
    """
    psi = psi_pm(branch, pt, params)
    L = l_pm(branch, pt, params)
    half_log_pref = 0.5 * (math.log(params.eps) - math.log(2.0 * math.pi))
    return half_log_pref + psi * params.N + plog(L)


def k_pm(branch: str, pt: ScaledPoint, params: Params) -> complex:
    """The branch contribution itself; raises RangeError if it overflows doubles."""
    lk = k_pm_log(branch, pt, params)
    try:
        return cmath.exp(lk)
    except OverflowError as exc:
        raise RangeError(
            f"|K| = exp({lk.real:.6g}) exceeds double range; use k_pm_log"
        ) from exc


def psi0(z: float, params: Params) -> complex:
    """Phase of the turning-strip expansion on the lower curve.

    psi0 = z*pi*i + (z-1) ln u0 + Y^-(z) ln(u0 - q) + (1 - Y^-(z)) ln(u0 + p);
    for z > p the factor u0 - q is negative and contributes +i*pi*Y^-.
    Singular at z = p, where u0 = q.
    """
    if not 0.0 < z < 1.0:
        raise SingularityError(f"psi0 is singular at z={z!r}")
    p, q = params.pf, params.qf
    r = u0(z, params)
    ym = y_pm(z, params)[0]
    return (
        complex(0.0, z * math.pi)
        + (z - 1.0) * plog(r)
        + ym * plog(r - q)
        + (1.0 - ym) * plog(r + p)
    )


def theta(z: float, params: Params) -> float:
    """Strip curvature coefficient sqrt(u0/z) / ((u0+p)(u0-q)); positive for z < p."""
    if not 0.0 < z < 1.0:
        raise SingularityError(f"theta is singular at z={z!r}")
    p, q = params.pf, params.qf
    r = u0(z, params)
    den = (r + p) * (r - q)
    if den == 0.0:
        raise SingularityError("theta diverges where u0 = q (z = p)")
    return math.sqrt(r / z) / den


def vartheta(z: float, params: Params) -> float:
    """Negated curvature coefficient, positive for z > p."""
    return -theta(z, params)


def u0_log_ratio(z: float, params: Params) -> complex:
    """ln(u0+p) - ln(u0-q) with principal branches taken factor-wise.

    For z > p the second factor is negative, so the difference carries -i*pi;
    taking plog of the quotient would flip that sign and corrupt the strip
    phase, so the factors must stay separate.
    """
    if not 0.0 < z < 1.0:
        raise SingularityError(f"u0_log_ratio is singular at z={z!r}")
    p, q = params.pf, params.qf
    r = u0(z, params)
    if r == q:
        raise SingularityError("u0_log_ratio diverges where u0 = q (z = p)")
    return plog(r + p) - plog(r - q)


def lambda_pm(sign: str, beta: float, z: float, params: Params) -> complex:
    """Interference coefficients exp{2*pi*i*[Y^-(z) - beta*eps^{2/3}]/eps} ± 1.

    The winding number [Y^-(z) - beta*eps^{2/3}]/eps equals x when beta was
    derived from an integer grid point; windings within 1e-9 of an integer
    are snapped so that the '+' value is exactly 2 and the '-' value exactly 0.
    """
    if sign not in ("+", "-"):
        raise DomainError(f"sign must be '+' or '-', got {sign!r}")
    eps = params.eps
    winding = (y_pm(z, params)[0] - beta * eps ** (2.0 / 3.0)) / eps
    nearest = round(winding)
    if abs(winding - nearest) < _WINDING_SNAP:
        w = complex(1.0, 0.0)
    else:
        w = cmath.exp(complex(0.0, 2.0 * math.pi * winding))
    return w + 1.0 if sign == "+" else w - 1.0


def phi0(z: float, params: Params) -> complex:
    """Left-edge phase (z-1) ln(1-z) - z ln z + z (ln p + i*pi)."""
    if not 0.0 < z < 1.0:
        raise SingularityError(f"phi0 is singular at z={z!r}")
    p = params.pf
    real = (z - 1.0) * math.log1p(-z) - z * math.log(z) + z * math.log(p)
    return complex(real, z * math.pi)
