"""Scaled coordinates, branch roots, the oscillation ellipse, and the region classifier.

An index pair (x, n) on the integer grid [0, N]^2 maps to scaled coordinates
(y, z) = (x*eps, n*eps) with eps = 1/N.  The quadratic governing the two
asymptotic branches has roots U^- <= U^+ that are real outside an ellipse E
inscribed in the unit square and complex conjugates inside it; the curves
y = Y^-(z) and y = Y^+(z), where the roots coalesce, bound the oscillatory
zone.  ``classify`` assigns every grid point to one of twelve regions:

* bulk zones III, IV (exponential, below/above the ellipse), VII
  (oscillatory-exponential wedge) and X (oscillatory interior),
* turning-curve strips VIII (z < p) and IX (z > p) of width O(eps^{2/3}),
* edge layers I (small n), V (small x, z > p) and XI (n near N),
* corner layers II (small n, y near p), VI (small x, z near p) and
  XII (n near N, y near q) of width O(sqrt(eps)).

Points to the right of the upper turning curve are classified by reflecting
(x, n) -> (N - x, n) with p and q exchanged (the symmetry of the polynomial
family); such results carry ``mirrored=True``, and a reflected lower-zone
tag III is reported as IV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from .exact_core import DomainError, Params

__all__ = [
    "ScaledPoint",
    "RegionId",
    "ClassifierConfig",
    "CornerCoords",
    "DEFAULT_CONFIG",
    "REGION_TAGS",
    "u0",
    "y_pm",
    "ellipse_residual",
    "u_pm",
    "classify",
    "corner_coords",
]

#: The twelve region tags in canonical order.
REGION_TAGS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII")

_TAG_SET = frozenset(REGION_TAGS)


@dataclass(frozen=True)
class ScaledPoint:
    """A point (y, z) in the unit square of scaled coordinates."""

    y: float
    z: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.y) and math.isfinite(self.z)):
            raise DomainError("scaled coordinates must be finite")
        if not (-1e-12 <= self.y <= 1.0 + 1e-12):
            raise DomainError(f"y={self.y!r} outside the unit interval")
        if not (-1e-12 <= self.z <= 1.0 + 1e-12):
            raise DomainError(f"z={self.z!r} outside the unit interval")

    @classmethod
    def from_indices(cls, x: int, n: int, params: Params) -> "ScaledPoint":
        """Scaled point (x*eps, n*eps) for an integer grid point.

        Every module builds scaled coordinates through this constructor so
        that classification and evaluation agree bit-for-bit.
        """
        eps = params.eps
        return cls(x * eps, n * eps)


@dataclass(frozen=True)
class RegionId:
    """A region tag, plus whether the point was classified via reflection."""

    tag: str
    mirrored: bool = False

    def __post_init__(self) -> None:
        if self.tag not in _TAG_SET:
            raise DomainError(f"unknown region tag {self.tag!r}")

    @property
    def label(self) -> str:
        """Compact display form; reflected classifications get a ``*``."""
        return self.tag + ("*" if self.mirrored else "")


@dataclass(frozen=True)
class ClassifierConfig:
    """Layer widths for the classifier.

    The analysis fixes only the *order* of each layer's width (sqrt(eps) for
    corners, eps^{2/3} for the turning strips); the multipliers here are
    tunable so overlap studies can widen or shrink the strips.  Zero widths
    are permitted (they disable a layer), negative values are not.

    The default strip multiplier is 0.9: measured against the exact values at
    eps = 0.01, the Airy strip forms stay inside the figure error budget only
    for |beta| <~ 0.95 and degrade to 15-60% windowed error by |beta| ~ 1.8,
    while the branch forms on either side remain accurate right up to the
    strip edge, so a narrow strip hands each point to the better formula.
    """

    n_small: int = 4
    x_small: int = 8
    j_small: int = 4
    corner_width: float = 3.0
    beta_max: float = 0.9

    def __post_init__(self) -> None:
        for name in ("n_small", "x_small", "j_small"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise DomainError(f"{name} must be a nonnegative integer, got {v!r}")
        for name in ("corner_width", "beta_max"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v >= 0):
                raise DomainError(f"{name} must be finite and >= 0, got {v!r}")


DEFAULT_CONFIG = ClassifierConfig()


def u0(z: float, params: Params) -> float:
    """The positive root magnitude sqrt(p*q*(1-z)/z) at the branch-coalescence point.

    Singular as z -> 0; equals q at z = p and vanishes at z = 1.
    """
    if not 0.0 < z <= 1.0:
        raise DomainError(f"u0 requires 0 < z <= 1, got z={z!r}")
    p, q = params.pf, params.qf
    return math.sqrt(p * q * (1.0 - z) / z)


def _y_minus_total(z: float, params: Params) -> float:
    """Lower turning curve, continued to the closed interval [0, 1]."""
    p, q = params.pf, params.qf
    return p + (q - p) * z - 2.0 * math.sqrt(p * q * z * (1.0 - z))


def y_pm(z: float, params: Params) -> Tuple[float, float]:
    """The turning curves (Y^-(z), Y^+(z)) where the two branch roots coalesce.

    Both tend to p as z -> 0 and meet at q when z = 1.
    """
    if not 0.0 < z <= 1.0:
        raise DomainError(f"y_pm requires 0 < z <= 1, got z={z!r}")
    p, q = params.pf, params.qf
    mid = p + (q - p) * z
    half = 2.0 * math.sqrt(p * q * z * (1.0 - z))
    return mid - half, mid + half


def ellipse_residual(pt: ScaledPoint, params: Params) -> float:
    """Signed residual of the oscillation ellipse E: negative inside, positive outside.

    Algebraically identical to the discriminant of the branch quadratic, so
    its sign also decides whether the roots are real or complex conjugates.
    """
    p, q = params.pf, params.qf
    w = pt.y - 0.5
    v = pt.z - 0.5
    return w * w + v * v + 2.0 * (p - q) * w * v - p * q


def u_pm(pt: ScaledPoint, params: Params) -> Tuple[complex, complex]:
    """The two branch roots (U^-, U^+) of z*U^2 + [p - y + z(q-p)]*U + pq(1-z) = 0.

    Real with U^- <= U^+ outside the ellipse, complex conjugates (U^+ in the
    upper half plane) inside it, and both equal to ±u0(z) on the turning
    curves y = Y^±(z).  The smaller-magnitude root is computed from the root
    product pq(1-z)/z to avoid cancellation.
    """
    y, z = pt.y, pt.z
    if not 0.0 < z <= 1.0:
        raise DomainError(f"u_pm requires 0 < z <= 1, got z={z!r}")
    p, q = params.pf, params.qf
    b = p - y + z * (q - p)
    c = p * q * (1.0 - z)
    disc = b * b - 4.0 * z * c
    # A discriminant at rounding level means the point sits on a turning
    # curve to within double precision; split roots there would carry a
    # spurious sqrt(ulp) ~ 1e-8 separation, so collapse to the double root.
    if abs(disc) <= 1e-14 * (b * b + abs(4.0 * z * c)):
        r = -b / (2.0 * z)
        return complex(r, 0.0), complex(r, 0.0)
    if disc < 0.0:
        re = -b / (2.0 * z)
        im = math.sqrt(-disc) / (2.0 * z)
        return complex(re, -im), complex(re, im)
    s = math.sqrt(disc)
    if b >= 0.0:
        um = (-b - s) / (2.0 * z)
        up = c / (z * um) if um != 0.0 else (-b + s) / (2.0 * z)
    else:
        up = (-b + s) / (2.0 * z)
        um = c / (z * up) if up != 0.0 else (-b - s) / (2.0 * z)
    return complex(um, 0.0), complex(up, 0.0)


def _check_index(value: int, name: str, N: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if not 0 <= value <= N:
        raise DomainError(f"{name}={value} outside [0, {N}]")


def _direct_tag(x: int, n: int, params: Params, cfg: ClassifierConfig) -> Optional[str]:
    """Tag for the unreflected orientation, or None when the point belongs to
    the reflected half (on or beyond the upper turning strip)."""
    N = params.N
    eps, p, q = params.eps, params.pf, params.qf
    y, z = x * eps, n * eps
    corner_y = cfg.corner_width * math.sqrt(2.0 * p * q * eps)
    if n <= cfg.n_small:
        return "II" if abs(y - p) <= corner_y else "I"
    if N - n <= cfg.j_small:
        return "XII" if abs(y - q) <= corner_y else "XI"
    if x <= cfg.x_small:
        if abs(z - p) <= cfg.corner_width * math.sqrt(p * q * eps):
            return "VI"
        if z > p:
            return "V"
        # Small x with z below the corner falls through to the bulk tests:
        # the left edge there belongs to the exponential zone III (or its
        # turning strip VIII), not to a separate layer.
    ym, yp = y_pm(z, params)
    strip = cfg.beta_max * eps ** (2.0 / 3.0)
    if abs(y - ym) <= strip:
        return "VIII" if z < p else "IX"
    if abs(y - yp) <= strip:
        return None
    if y < ym:
        return "VII" if z > p else "III"
    if y < yp:
        return "X"
    return None


def classify(x: int, n: int, params: Params, cfg: ClassifierConfig = DEFAULT_CONFIG) -> RegionId:
    """Assign the grid point (x, n) to one of the twelve regions.

    Layer tests run in priority order -- corners beat edges beat strips beat
    bulk zones -- so membership is total and deterministic.  Points on or
    beyond the upper turning strip are reflected to (N - x, n) with p and q
    exchanged and re-classified; a reflected III is reported as IV, any other
    reflected tag keeps its name, and both carry ``mirrored=True``.
    """
    _check_index(x, "x", params.N)
    _check_index(n, "n", params.N)
    tag = _direct_tag(x, n, params, cfg)
    if tag is not None:
        return RegionId(tag, mirrored=False)
    mtag = _direct_tag(params.N - x, n, params.swapped(), cfg)
    if mtag is None:  # pragma: no cover - excluded by the strip geometry
        raise AssertionError("classifier fell through both orientations")
    return RegionId("IV" if mtag == "III" else mtag, mirrored=True)


class CornerCoords(NamedTuple):
    """Stretched layer coordinates attached to a grid point.

    eta:  (y - p)/sqrt(2pq*eps)   -- corner layer at (p, 0)
    u:    (p - z)/sqrt(pq*eps)    -- corner layer at (0, p)
    beta: (Y^-(z) - y)/eps^{2/3}  -- turning strip (positive outside E)
    xi:   (y - q)/sqrt(2pq*eps)   -- corner layer at (q, 1)
    j:    N - n                   -- distance from the top row
    """

    eta: float
    u: float
    beta: float
    xi: float
    j: int


def corner_coords(x: int, n: int, params: Params) -> CornerCoords:
    """All five stretched coordinates for the grid point (x, n)."""
    _check_index(x, "x", params.N)
    _check_index(n, "n", params.N)
    eps, p, q = params.eps, params.pf, params.qf
    y, z = x * eps, n * eps
    s2 = math.sqrt(2.0 * p * q * eps)
    eta = (y - p) / s2
    u = (p - z) / math.sqrt(p * q * eps)
    beta = (_y_minus_total(z, params) - y) / eps ** (2.0 / 3.0)
    xi = (y - q) / s2
    return CornerCoords(eta, u, beta, xi, params.N - n)
