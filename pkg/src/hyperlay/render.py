"""Static Poincare-disk rendering to SVG: geodesic edges, node disks,
cluster polygons and focus+context label scaling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .projection import Layout, clamp_disk, lobachevsky_to_disk, to_display


@dataclass
class RenderStyle:
    edge_opacity: float = 1.0
    label_base_px: float = 15.0
    zoom: float = 1.0
    clamp: float = 0.999
    disk_px: int = 400

    def __post_init__(self):
        if not 0.0 <= self.edge_opacity <= 1.0:
            raise ValueError("edge_opacity outside [0, 1]")
        if not 0.0 <= self.label_base_px <= 40.0:
            raise ValueError("label_base_px outside [0, 40]")
        if not 0.5 <= self.zoom <= 1.5:
            raise ValueError("zoom outside [0.5, 1.5]")
        if not 0.0 < self.clamp < 1.0:
            raise ValueError("clamp outside (0, 1)")


@dataclass
class GeodesicArc:
    """Hyperbolic line segment in the disk: a diameter chord or an arc of
    a circle orthogonal to the unit circle (|center|^2 = radius^2 + 1)."""

    kind: str                 # "diameter-segment" | "circular-arc"
    p: complex
    q: complex
    center: complex = None
    radius: float = None


# triangle-area threshold below which p, q, origin count as collinear
_COLLINEAR_EPS = 1e-9


def geodesic_arc(p: complex, q: complex) -> GeodesicArc:
    """Geodesic through two disk points.

    Built from the circle through p, q and the inversion of p across the
    unit circle; configurations collinear with the origin degrade to a
    diameter segment.
    """
    p = complex(p)
    q = complex(q)
    if not (abs(p) < 1 and abs(q) < 1):
        raise ValueError("points must lie strictly inside the disk")
    if p == q:
        raise ValueError("geodesic through coincident points is undefined")
    cross = p.real * q.imag - p.imag * q.real
    if abs(cross) < _COLLINEAR_EPS:
        return GeodesicArc("diameter-segment", p, q)
    if abs(p) < _COLLINEAR_EPS or abs(q) < _COLLINEAR_EPS:
        return GeodesicArc("diameter-segment", p, q)
    pinv = p / (abs(p) ** 2)
    c = _circumcenter(p, q, pinv)
    r = abs(c - p)
    return GeodesicArc("circular-arc", p, q, center=c, radius=r)


def _circumcenter(a: complex, b: complex, c: complex) -> complex:
    d = 2.0 * (a.real * (b.imag - c.imag) + b.real * (c.imag - a.imag)
               + c.real * (a.imag - b.imag))
    ux = (abs(a) ** 2 * (b.imag - c.imag) + abs(b) ** 2 * (c.imag - a.imag)
          + abs(c) ** 2 * (a.imag - b.imag)) / d
    uy = (abs(a) ** 2 * (c.real - b.real) + abs(b) ** 2 * (a.real - c.real)
          + abs(c) ** 2 * (b.real - a.real)) / d
    return complex(ux, uy)


def label_size(style: RenderStyle, z: complex) -> float:
    """Focus+context label scaling: base * (1 - |z|^2) px.

    (1 - |z|^2) is the reciprocal conformal factor of the Poincare
    metric, so sizes shrink toward the rim and equal the base at the
    center.
    """
    return style.label_base_px * (1.0 - abs(z) ** 2)


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def svg_arc_center(p: complex, q: complex, r: float, sweep: int) -> complex:
    """Arc center implied by an SVG 'A r r 0 0 sweep' command (spec
    section F.6.5, equal radii, large-arc flag 0)."""
    mid = (p + q) / 2.0
    half = (p - q) / 2.0
    d2 = abs(half) ** 2
    s = math.sqrt(max(0.0, r * r - d2) / d2)
    sign = 1.0 if sweep == 0 else -1.0
    return mid + sign * s * complex(half.imag, -half.real)


def _arc_path(arc: GeodesicArc) -> str:
    p, q = arc.p, arc.q
    if arc.kind == "diameter-segment":
        return (f"M {_fmt(p.real)} {_fmt(p.imag)} "
                f"L {_fmt(q.real)} {_fmt(q.imag)}")
    r = arc.radius
    # geodesic arcs subtend less than half their circle, so the
    # large-arc flag is always 0; the sweep flag is whichever choice
    # reproduces the orthogonal-circle center
    sweep = 1 if (abs(svg_arc_center(p, q, r, 1) - arc.center)
                  < abs(svg_arc_center(p, q, r, 0) - arc.center)) else 0
    return (f"M {_fmt(p.real)} {_fmt(p.imag)} "
            f"A {_fmt(r)} {_fmt(r)} 0 0 {sweep} "
            f"{_fmt(q.real)} {_fmt(q.imag)}")


def render_svg(l: Layout, g: Graph, style: RenderStyle = None) -> str:
    """Pure function from (layout, graph, style) to an SVG document."""
    if style is None:
        style = RenderStyle()
    z = display_coords(l, style.clamp)
    size = int(round(2.2 * style.disk_px * style.zoom))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
        f'height="{size}" viewBox="-1.1 -1.1 2.2 2.2">',
        '<circle cx="0" cy="0" r="1" fill="white" stroke="#888" '
        'stroke-width="0.004"/>',
    ]
    for poly in l.polygons:
        pts = clamp_disk(lobachevsky_to_disk(np.asarray(poly.vertices)),
                         style.clamp)
        parts = []
        for a, b in zip(pts, np.roll(pts, -1)):
            if abs(a - b) < 1e-12:
                continue
            parts.append(_arc_path(geodesic_arc(a, b)))
        if parts:
            out.append(f'<path d="{" ".join(parts)} Z" fill="{poly.color}" '
                       f'fill-opacity="0.35" stroke="none" '
                       f'data-cluster="{poly.cluster}"/>')
    for (u, v) in g.edges:
        zu, zv = z[u], z[v]
        if abs(zu - zv) < 1e-12:
            continue
        path = _arc_path(geodesic_arc(zu, zv))
        out.append(f'<path d="{path}" fill="none" stroke="black" '
                   f'stroke-width="0.003" '
                   f'stroke-opacity="{_fmt(style.edge_opacity)}"/>')
    for i, zi in enumerate(z):
        factor = 1.0 - abs(zi) ** 2
        out.append(f'<circle cx="{_fmt(zi.real)}" cy="{_fmt(zi.imag)}" '
                   f'r="{_fmt(0.015 * factor)}" fill="#1f77b4"/>')
    if style.label_base_px > 0:
        for i, zi in enumerate(z):
            px = label_size(style, zi)
            out.append(
                f'<text x="{_fmt(zi.real)}" y="{_fmt(zi.imag - 0.02)}" '
                f'font-size="{_fmt(px / style.disk_px)}" '
                f'font-family="Arial" text-anchor="middle">'
                f'{_escape(g.labels[i])}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def display_coords(l: Layout, clamp: float = 0.999) -> np.ndarray:
    """Disk coordinates for any geometry.

    Hyperbolic layouts use the Poincare projection; Euclidean layouts are
    drawn directly (scaled into the disk); spherical layouts use an
    azimuthal equidistant view from the north pole.  Only the hyperbolic
    route is part of the drawing contract, the others are conveniences.
    """
    if l.geometry == "hyperbolic":
        return to_display(l, clamp)
    if l.geometry == "euclidean":
        w = l.coords[:, 0] + 1j * l.coords[:, 1]
        w = w - w.mean()
        rmax = np.abs(w).max()
        if rmax > 0:
            w = w * (0.95 / rmax)
        return clamp_disk(w, clamp)
    # spherical: geodesic distance from the pole as display radius / pi
    x, y, zc = l.coords.T
    theta = np.arccos(np.clip(zc, -1.0, 1.0))
    phi = np.arctan2(y, x)
    w = (theta / math.pi) * np.exp(1j * phi)
    return clamp_disk(w, clamp)


def _escape(s: str) -> str:
    return (s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))
