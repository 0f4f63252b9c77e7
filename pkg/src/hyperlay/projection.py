"""Method 1: lift a 2D Euclidean layout into H^2 by the inverse
hyperbolic Lambert azimuthal projection, and map to display coordinates."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .geometry import DomainError, lambert_inverse_radius

# Default hyperbolic radius of the farthest node after projection at
# coverage 1; tanh(6/2) ~ 0.995 keeps it inside the display clamp.
RHO_BASE = 6.0

GEOMETRIES = ("euclidean", "hyperbolic", "spherical")


@dataclass
class Layout:
    """Per-node coordinates tagged with geometry, scale and provenance.

    coords is (n, 2) for euclidean [x, y] and hyperbolic [u, v] axial
    coordinates, (n, 3) unit vectors for spherical.
    """

    geometry: str
    coords: np.ndarray
    alpha: float = 1.0
    method: str = ""
    polygons: list = field(default_factory=list)
    euclidean_source: np.ndarray = None  # kept by the projection pipeline

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"unknown geometry {self.geometry!r}")
        self.coords = np.asarray(self.coords, dtype=float)
        want = 3 if self.geometry == "spherical" else 2
        if self.coords.ndim != 2 or self.coords.shape[1] != want:
            raise ValueError(
                f"{self.geometry} layout needs (n, {want}) coords, "
                f"got {self.coords.shape}")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")

    @property
    def n(self) -> int:
        return len(self.coords)


def _require_euclidean(l: Layout):
    if l.geometry != "euclidean":
        raise ValueError(f"expected a euclidean layout, got {l.geometry}")


def center_layout(l: Layout) -> Layout:
    """Translate so the centroid of the node positions is the origin."""
    _require_euclidean(l)
    c = l.coords.mean(axis=0)
    polygons = [replace(p, vertices=p.vertices - c) for p in l.polygons]
    return replace(l, coords=l.coords - c, polygons=polygons)


def coverage_scale(l: Layout, coverage: float, rho_base: float = RHO_BASE) -> Layout:
    """Scale a centered layout so its farthest node projects to
    hyperbolic radius coverage * rho_base."""
    _require_euclidean(l)
    if not 0.5 <= coverage <= 1.5:
        raise ValueError(f"coverage {coverage!r} outside [0.5, 1.5]")
    rmax = float(np.hypot(l.coords[:, 0], l.coords[:, 1]).max())
    if rmax == 0.0:
        return replace(l)
    # R solves lambert_inverse_radius(R) = coverage * rho_base.
    target = np.sqrt(2.0 * (np.cosh(coverage * rho_base) - 1.0))
    s = target / rmax
    polygons = [replace(p, vertices=p.vertices * s) for p in l.polygons]
    return replace(l, coords=l.coords * s, polygons=polygons)


def _plane_to_lobachevsky(xy: np.ndarray) -> np.ndarray:
    """Inverse Lambert radius rule applied point-wise, result in axial
    (u, v) coordinates."""
    r = np.hypot(xy[:, 0], xy[:, 1])
    theta = np.arctan2(xy[:, 1], xy[:, 0])
    rho = np.arccosh(0.5 * r * r + 1.0)
    # polar -> Poincare -> axial, vectorized
    t = np.tanh(rho / 2.0)
    zx, zy = t * np.cos(theta), t * np.sin(theta)
    s = zx * zx + zy * zy
    denom = 1.0 - s
    hx = 2.0 * zx / denom
    hy = 2.0 * zy / denom
    hz = (1.0 + s) / denom
    u = np.arctanh(hx / hz)
    v = np.arcsinh(hy)
    return np.column_stack([u, v])


def project_to_hyperbolic(l: Layout) -> Layout:
    """Replace each polar radius r by arccosh(r^2/2 + 1), angles kept."""
    _require_euclidean(l)
    rho = lambert_inverse_radius(float(np.hypot(*l.coords.T).max()))
    if rho > 700.0:
        raise DomainError("projected radius exceeds the practical limit 700")
    coords = _plane_to_lobachevsky(l.coords)
    polygons = [replace(p, vertices=_plane_to_lobachevsky(p.vertices))
                for p in l.polygons]
    return Layout(geometry="hyperbolic", coords=coords, alpha=l.alpha,
                  method=l.method or "project", polygons=polygons,
                  euclidean_source=l.coords.copy())


def lobachevsky_to_disk(coords: np.ndarray) -> np.ndarray:
    """Axial (u, v) -> complex Poincare coordinates, vectorized."""
    u, v = coords[:, 0], coords[:, 1]
    cv = np.cosh(v)
    x = np.sinh(u) * cv
    y = np.sinh(v)
    z = np.cosh(u) * cv
    return (x + 1j * y) / (1.0 + z)


def to_display(l: Layout, clamp: float = 0.999) -> np.ndarray:
    """Display coordinates in the Poincare disk, radius clamped.

    Returns an (n,) complex array with |z| <= clamp.
    """
    if l.geometry != "hyperbolic":
        raise ValueError(f"expected a hyperbolic layout, got {l.geometry}")
    return clamp_disk(lobachevsky_to_disk(l.coords), clamp)


def clamp_disk(z: np.ndarray, clamp: float = 0.999) -> np.ndarray:
    r = np.abs(z)
    over = r > clamp
    if np.any(over):
        z = z.copy()
        z[over] *= clamp / r[over]
    return z


def project_pipeline(positions: np.ndarray, coverage: float = 1.0,
                     rho_base: float = RHO_BASE, polygons=()) -> Layout:
    """center -> coverage scale -> inverse Lambert, in one call."""
    l = Layout(geometry="euclidean", coords=positions, method="project",
               polygons=list(polygons))
    return project_to_hyperbolic(coverage_scale(center_layout(l), coverage,
                                                rho_base))
