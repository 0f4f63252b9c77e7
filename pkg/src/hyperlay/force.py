"""Method 2: Kamada-Kawai style layout computed directly in H^2 via
per-node tangent-plane steps."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, DistanceMatrix, apsp
from .hmds import Schedule, init_layout, schedule_eta, _SALT_NODES
from .projection import Layout, clamp_disk, lobachevsky_to_disk
from .geometry import _atanh


@dataclass
class ForceParams:
    max_iterations: int = 200
    tolerance: float = 1e-3          # hyperbolic units of per-node movement
    clamp: float = 0.999
    alpha: float = 1.0               # scale applied to target distances
    schedule_kind: str = "exponential"

    def __post_init__(self):
        if not (self.max_iterations > 0 and self.tolerance > 0
                and 0 < self.clamp < 1 and self.alpha > 0):
            raise ValueError("invalid force parameters")


def spring_constants(D: DistanceMatrix) -> np.ndarray:
    """Classic Kamada-Kawai weighting k_ij = d_ij^-2 (zero diagonal)."""
    k = np.zeros_like(D.d)
    off = ~np.eye(D.n, dtype=bool)
    k[off] = 1.0 / D.d[off] ** 2
    return k


def kk_energy(l: Layout, D: DistanceMatrix, p: ForceParams = None) -> float:
    """E = sum_{i<j} 1/2 k_ij (gdist(p_i, p_j) - alpha d_ij)^2 with the
    hyperbolic geodesic distance."""
    if l.geometry != "hyperbolic":
        raise ValueError("energy is defined for hyperbolic layouts")
    if p is None:
        p = ForceParams()
    k = spring_constants(D)
    delta = _pairwise_hyperbolic(l.coords)
    iu = np.triu_indices(D.n, k=1)
    diff = delta[iu] - p.alpha * D.d[iu]
    return float(np.sum(0.5 * k[iu] * diff * diff))


def _pairwise_hyperbolic(coords: np.ndarray) -> np.ndarray:
    u, v = coords[:, 0], coords[:, 1]
    cv = np.cosh(v)
    x, y, z = np.sinh(u) * cv, np.sinh(v), np.cosh(u) * cv
    c = np.outer(z, z) - np.outer(x, x) - np.outer(y, y)
    return np.arccosh(np.maximum(c, 1.0))


def tangent_map(center: int, l: Layout, clamp: float = 0.999) -> np.ndarray:
    """Map every node into the Euclidean tangent plane at `center`.

    The center goes to the plane origin; every other node keeps its angle
    as seen after the Mobius translation of the center to the disk origin
    and gets plane radius equal to its hyperbolic distance to the center.
    Returns an (n, 2) array.
    """
    z = clamp_disk(lobachevsky_to_disk(l.coords), clamp)
    zc = z[center]
    y = (z - zc) / (-np.conj(zc) * z + 1.0)
    r = np.abs(y)
    rho = 2.0 * np.arctanh(np.minimum(r, 1.0 - 1e-16))
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(r > 0, y / np.where(r > 0, r, 1.0), 0.0)
    w = rho * unit
    out = np.column_stack([w.real, w.imag])
    out[center] = 0.0
    return out


def tangent_unmap(center: int, moved: np.ndarray, l: Layout,
                  clamp: float = 0.999) -> np.ndarray:
    """Place the center's new plane position back into H^2.

    Returns the center's new axial (u, v) coordinates; other nodes are
    untouched by a tangent-plane step.
    """
    from .hmds import hyperboloid_to_lob  # avoid import cycle at top

    z = clamp_disk(lobachevsky_to_disk(l.coords), clamp)
    zc = z[center]
    rho = math.hypot(moved[0], moved[1])
    disk_r = min(math.tanh(rho / 2.0), clamp)
    if rho > 0:
        y = disk_r * complex(moved[0], moved[1]) / rho
    else:
        y = 0j
    back = (y + zc) / (np.conj(zc) * y + 1.0)
    if abs(back) > clamp:
        back *= clamp / abs(back)
    s = abs(back) ** 2
    denom = 1.0 - s
    hx = 2.0 * back.real / denom
    hy = 2.0 * back.imag / denom
    hz = (1.0 + s) / denom
    return np.array([_atanh(hx / hz), math.asinh(hy)])


def layout_force(g: Graph, D: DistanceMatrix = None, p: ForceParams = None,
                 seed: int = 0):
    """Tangent-plane gradient descent on the spring energy.

    Each pass visits every node in a seeded shuffled order: map all nodes
    into the tangent plane at that node, move the node opposite the plane
    gradient of its energy terms (per-pair contributions capped at
    eta * k_ij <= 1 and averaged), and map it back.  Stops after
    max_iterations passes or when the largest per-node hyperbolic
    displacement in a pass drops below the tolerance.

    Returns (Layout, energy trace).
    """
    if D is None:
        D = apsp(g)
    if p is None:
        p = ForceParams()
    n = g.n
    layout = init_layout(g, "random", "hyperbolic", seed, D=D, alpha=p.alpha)
    layout.method = "force"
    if n == 1:
        return layout, np.array([(0, 0.0)])
    k = spring_constants(D)
    sched = Schedule.from_distances(D, kind=p.schedule_kind,
                                    t_max=p.max_iterations)
    rng = np.random.default_rng([seed, _SALT_NODES])
    trace = []
    for t in range(p.max_iterations):
        eta = schedule_eta(sched, t)
        max_disp = 0.0
        for i in rng.permutation(n):
            plane = tangent_map(i, layout, p.clamp)
            r = np.hypot(plane[:, 0], plane[:, 1])
            degenerate = r < 1e-9
            degenerate[i] = False  # the center is legitimately at 0
            if np.any(degenerate):
                jit = rng.normal(size=(int(degenerate.sum()), 2))
                jit *= 1e-6 / np.linalg.norm(jit, axis=1, keepdims=True)
                plane[degenerate] += jit
                r = np.hypot(plane[:, 0], plane[:, 1])
            mu = np.minimum(eta * k[i], 1.0)
            mu[i] = 0.0
            resid = mu * (r - p.alpha * D.d[i])
            resid[i] = 0.0
            step = (resid / np.where(r > 0.0, r, 1.0))[:, None] * plane
            move = step.sum(axis=0) / (n - 1)
            disp = float(np.hypot(move[0], move[1]))
            layout.coords[i] = tangent_unmap(i, move, layout, p.clamp)
            max_disp = max(max_disp, disp)
        trace.append((t, kk_energy(layout, D, p)))
        if max_disp < p.tolerance:
            break
    return layout, np.array(trace)
