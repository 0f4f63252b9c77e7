"""Hyperbolic, spherical and Euclidean geometry primitives.

Everything here is a pure function on immutable values.  The hyperbolic
plane is handled in three interchangeable charts:

* Poincare disk   -- a complex number z with |z| < 1 (display chart)
* axial (u, v)    -- signed distance u along a fixed axis geodesic and
                     signed perpendicular distance v to it (solver chart)
* hyperboloid     -- (x, y, z) with z^2 - x^2 - y^2 = 1, z > 0 (used
                     internally for exact geodesic arithmetic)

Curvature is fixed at -1 throughout.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

# Hyperbolic radii are capped before exponentiation; beyond ~700 the
# Poincare transform overflows double precision.
RHO_MAX = 700.0

_DOMAIN_TOL = 1e-12


class DomainError(ValueError):
    """Argument outside the valid domain of a geometric function."""


def _acosh(x):
    """arccosh with clamping of rounding noise just below 1."""
    if x < 1.0:
        if x < 1.0 - _DOMAIN_TOL:
            raise DomainError(f"arccosh argument {x!r} < 1")
        x = 1.0
    return math.acosh(x)


def _atanh(x):
    """arctanh with clamping of rounding noise just outside (-1, 1)."""
    if abs(x) >= 1.0:
        if abs(x) >= 1.0 + _DOMAIN_TOL:
            raise DomainError(f"arctanh argument {x!r} outside (-1, 1)")
        x = math.copysign(1.0 - 1e-16, x)
    return math.atanh(x)


@dataclass(frozen=True)
class PoincarePoint:
    """Point of the open unit disk, stored as a complex number."""

    z: complex

    def __post_init__(self):
        if not abs(self.z) < 1.0:
            raise DomainError(f"|z| = {abs(self.z)!r} >= 1 is outside the disk")

    @property
    def abs(self) -> float:
        return abs(self.z)


@dataclass(frozen=True)
class LobachevskyPoint:
    """Axial coordinates: any pair of reals is a valid point."""

    u: float
    v: float


@dataclass(frozen=True)
class HyperbolicPolar:
    """Polar chart (rho, theta); theta is normalized to [0, 2*pi)."""

    rho: float
    theta: float

    def __post_init__(self):
        if self.rho < 0:
            raise DomainError(f"rho = {self.rho!r} < 0")
        object.__setattr__(self, "theta", self.theta % (2.0 * math.pi))


@dataclass(frozen=True)
class SpherePoint:
    """Point of the unit sphere in R^3."""

    p: tuple

    def __init__(self, p):
        arr = np.asarray(p, dtype=float)
        if arr.shape != (3,):
            raise DomainError("sphere point must be a 3-vector")
        n = float(np.linalg.norm(arr))
        if abs(n - 1.0) > 1e-12:
            raise DomainError(f"|p| = {n!r} is not 1 within 1e-12")
        object.__setattr__(self, "p", tuple(arr))

    @property
    def vec(self) -> np.ndarray:
        return np.asarray(self.p)


@dataclass(frozen=True)
class EuclideanPoint:
    x: float
    y: float


@dataclass(frozen=True)
class MobiusTranslation:
    """Disk automorphism carrying z0 to the origin."""

    z0: complex

    def __post_init__(self):
        if not abs(self.z0) < 1.0:
            raise DomainError(f"|z0| = {abs(self.z0)!r} >= 1")


# ---------------------------------------------------------------------------
# Mobius transformations


def mobius_apply(t: MobiusTranslation, z: PoincarePoint) -> PoincarePoint:
    """f(z) = (z - z0) / (-conj(z0) z + 1); carries t.z0 to the origin."""
    w = _mobius_apply_c(t.z0, z.z)
    return PoincarePoint(w)


def mobius_unapply(t: MobiusTranslation, y: PoincarePoint) -> PoincarePoint:
    """Inverse of mobius_apply; carries the origin back to t.z0."""
    w = _mobius_unapply_c(t.z0, y.z)
    return PoincarePoint(w)


def _mobius_apply_c(z0: complex, z: complex) -> complex:
    return (z - z0) / (-z0.conjugate() * z + 1.0)


def _mobius_unapply_c(z0: complex, y: complex) -> complex:
    # (-y - z0) / (-conj(z0) y - 1) simplified by multiplying through by -1.
    return (y + z0) / (z0.conjugate() * y + 1.0)


# ---------------------------------------------------------------------------
# Distances


def poincare_distance(p: PoincarePoint, q: PoincarePoint) -> float:
    """Geodesic distance between two disk points."""
    y = _mobius_apply_c(p.z, q.z)
    return 2.0 * _atanh(abs(y))


def lobachevsky_distance(a: LobachevskyPoint, b: LobachevskyPoint) -> float:
    """Geodesic distance in axial coordinates.

    Via the hyperboloid embedding (sinh u cosh v, sinh v, cosh u cosh v):
    cosh d = cosh(u1 - u2) cosh v1 cosh v2 - sinh v1 sinh v2.
    """
    c = (math.cosh(a.u - b.u) * math.cosh(a.v) * math.cosh(b.v)
         - math.sinh(a.v) * math.sinh(b.v))
    return _acosh(c)


def sphere_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Great-circle arc length in [0, pi]."""
    d = float(np.dot(p.vec, q.vec))
    return math.acos(min(1.0, max(-1.0, d)))


def distance_gradient(a: LobachevskyPoint, b: LobachevskyPoint):
    """Riemannian gradient of d(., b) at a, as a (du, dv) pair.

    The axial metric is ds^2 = cosh^2(v) du^2 + dv^2, so the u component
    of the coordinate gradient is divided by cosh^2(v).  The result has
    unit Riemannian length and points in the direction of increasing
    distance (away from b).  Returns (0, 0) for coincident points.
    """
    ch = math.cosh(a.u - b.u)
    sh = math.sinh(a.u - b.u)
    cv1, sv1 = math.cosh(a.v), math.sinh(a.v)
    cv2, sv2 = math.cosh(b.v), math.sinh(b.v)
    cosh_d = ch * cv1 * cv2 - sv1 * sv2
    sinh_d = math.sqrt(max(0.0, cosh_d * cosh_d - 1.0))
    if sinh_d < 1e-12:
        return (0.0, 0.0)
    # Coordinate partials of d = arccosh(C) with respect to (u1, v1).
    du = sh * cv1 * cv2 / sinh_d
    dv = (ch * sv1 * cv2 - cv1 * sv2) / sinh_d
    gu = du / (cv1 * cv1)
    gv = dv
    norm = math.sqrt(cv1 * cv1 * gu * gu + gv * gv)
    return (gu / norm, gv / norm)


# ---------------------------------------------------------------------------
# Chart conversions


def lobachevsky_to_hyperboloid(a: LobachevskyPoint):
    """(u, v) -> (x, y, z) on the upper hyperboloid sheet."""
    cv = math.cosh(a.v)
    return (math.sinh(a.u) * cv, math.sinh(a.v), math.cosh(a.u) * cv)


def hyperboloid_to_poincare(x: float, y: float, z: float) -> PoincarePoint:
    return PoincarePoint(complex(x, y) / (1.0 + z))


def lobachevsky_to_poincare(a: LobachevskyPoint) -> PoincarePoint:
    x, y, z = lobachevsky_to_hyperboloid(a)
    return hyperboloid_to_poincare(x, y, z)


def poincare_to_lobachevsky(p: PoincarePoint) -> LobachevskyPoint:
    s = abs(p.z) ** 2
    denom = 1.0 - s
    x = 2.0 * p.z.real / denom
    y = 2.0 * p.z.imag / denom
    z = (1.0 + s) / denom
    return LobachevskyPoint(_atanh(x / z), math.asinh(y))


def polar_to_poincare(hp: HyperbolicPolar) -> PoincarePoint:
    """(rho, theta) -> tanh(rho/2) e^{i theta}."""
    if hp.rho > RHO_MAX:
        raise DomainError(
            f"rho = {hp.rho!r} exceeds the practical limit {RHO_MAX}; clamp first")
    r = math.tanh(hp.rho / 2.0)
    return PoincarePoint(r * cmath.exp(1j * hp.theta))


def poincare_to_polar(p: PoincarePoint) -> HyperbolicPolar:
    return HyperbolicPolar(2.0 * _atanh(abs(p.z)), cmath.phase(p.z))


# ---------------------------------------------------------------------------
# Projections


def lambert_inverse_radius(r: float) -> float:
    """Radius rule of the inverse hyperbolic Lambert azimuthal projection.

    f(r) = arccosh(r^2 / 2 + 1); preserves areas:
    2 pi (cosh f(r) - 1) = pi r^2.
    """
    if r < 0:
        raise DomainError(f"r = {r!r} < 0")
    return _acosh(0.5 * r * r + 1.0)
