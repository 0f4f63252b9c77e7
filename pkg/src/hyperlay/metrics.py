"""Embedding-quality measures and the cross-geometry comparison harness."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .graphs import Graph, DistanceMatrix, apsp
from .hmds import GEOM_CODE, SgdParams, _solver_coords, replace_params, run_mds
from .projection import Layout


@dataclass
class QualityReport:
    stress: float
    distortion: float
    geometry: str
    alpha: float
    wall_time_seconds: float = 0.0
    iterations_run: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.stress < 0 or self.distortion < 0:
            raise ValueError("stress and distortion must be nonnegative")


def stress(l: Layout, D: DistanceMatrix, weights: str = "inv-square",
           alpha: float = None) -> float:
    """Sum over i<j of w_ij (gdist(X_i, X_j) - alpha d_ij)^2."""
    if l.n != D.n:
        raise ValueError("layout / distance matrix size mismatch")
    if alpha is None:
        alpha = l.alpha
    return float(K.stress_sum(GEOM_CODE[l.geometry], _solver_coords(l),
                              D.d, alpha, weights == "inv-square"))


def distortion(l: Layout, D: DistanceMatrix) -> float:
    """Mean over i<j of |gdist/alpha - d_ij| / d_ij.

    Realized distances are divided by the layout's scale factor so the
    measure is in graph units and comparable across geometries.
    """
    if l.n != D.n:
        raise ValueError("layout / distance matrix size mismatch")
    return float(K.distortion_mean(GEOM_CODE[l.geometry], _solver_coords(l),
                                   D.d, l.alpha))


def evaluate(l: Layout, D: DistanceMatrix, wall_time=0.0, iterations=0,
             seed=0) -> QualityReport:
    return QualityReport(stress=stress(l, D), distortion=distortion(l, D),
                         geometry=l.geometry, alpha=l.alpha,
                         wall_time_seconds=wall_time,
                         iterations_run=iterations, seed=seed)


def compare_geometries(g: Graph, params: SgdParams = None, seeds=None,
                       D: DistanceMatrix = None):
    """Run the SGD solver per geometry with the per-geometry default
    scale factor, averaged over a seed set.

    Returns (mean distortion by geometry, argmin geometry, all reports).
    """
    if params is None:
        params = SgdParams()
    if seeds is None:
        seeds = list(range(10))
    if D is None:
        D = apsp(g)
    reports = {}
    means = {}
    for geometry in ("spherical", "euclidean", "hyperbolic"):
        p = replace_params(params, alpha_mode="default", alpha=None)
        geo_reports = []
        for seed in seeds:
            ps = replace_params(p, seed=seed)
            t0 = time.perf_counter()
            layout, trace = run_mds(g, geometry, ps, D=D)
            dt = time.perf_counter() - t0
            geo_reports.append(evaluate(layout, D, wall_time=dt,
                                        iterations=len(trace), seed=seed))
        reports[geometry] = geo_reports
        means[geometry] = float(np.mean([r.distortion for r in geo_reports]))
    best = min(means, key=means.get)
    return means, best, reports


def format_comparison(means: dict, best: str, sep: str = "\t") -> str:
    lines = [sep.join(["geometry", "mean_distortion"])]
    for geometry in ("spherical", "euclidean", "hyperbolic"):
        lines.append(sep.join([geometry, f"{means[geometry]:.6f}"]))
    lines.append(f"best{sep}{best}")
    return "\n".join(lines) + "\n"
