"""Metric MDS in hyperbolic, spherical and Euclidean geometry, solved by
stochastic gradient descent over node pairs, plus a full gradient-descent
reference solver for comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from .graphs import Graph, DistanceMatrix, apsp
from .projection import Layout, _plane_to_lobachevsky

GEOM_CODE = {"euclidean": K.EUCLIDEAN, "hyperbolic": K.HYPERBOLIC,
             "spherical": K.SPHERICAL}

SCHEDULE_KINDS = ("exponential", "inverse-t", "inverse-sqrt-t")
SHUFFLE_MODES = ("reshuffle", "replacement", "index-shuffle")
INIT_MODES = ("random", "smart")

# salts for independent per-purpose random streams derived from one seed
_SALT_INIT = 101
_SALT_PAIRS = 211
_SALT_NODES = 307


@dataclass(frozen=True)
class Schedule:
    """Learning-rate schedule eta(t) for t in [0, t_max].

    exponential:    eta_max * exp(-b t), b chosen so eta(t_max) = eta_min
    inverse-t:      a / (1 + b t)       with a = d_min^2
    inverse-sqrt-t: a / sqrt(1 + b t)   with a = d_min^2
    """

    kind: str
    eta_max: float
    eta_min: float
    t_max: int

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if not (self.eta_max > 0 and self.eta_min > 0 and self.t_max > 0):
            raise ValueError("schedule parameters must be positive")

    @classmethod
    def from_distances(cls, D: DistanceMatrix, kind="exponential",
                       t_max=20, eps=0.1):
        return cls(kind=kind, eta_max=D.d_max ** 2,
                   eta_min=eps * D.d_min ** 2, t_max=t_max)


def schedule_eta(s: Schedule, t: int) -> float:
    if not 0 <= t <= s.t_max:
        raise ValueError(f"t = {t} outside [0, {s.t_max}]")
    if s.kind == "exponential":
        b = math.log(s.eta_max / s.eta_min) / s.t_max
        return s.eta_max * math.exp(-b * t)
    a = s.eta_min / 0.1  # a = d_min^2 under the default eps
    if s.kind == "inverse-t":
        b = (a / s.eta_min - 1.0) / s.t_max
        return a / (1.0 + b * t)
    b = ((a / s.eta_min) ** 2 - 1.0) / s.t_max
    return a / math.sqrt(1.0 + b * t)


@dataclass
class SgdParams:
    """All tunables of the SGD solver."""

    schedule_kind: str = "exponential"
    t_max: int = 20
    eps: float = 0.1
    shuffle: str = "reshuffle"
    init: str = "random"
    alpha_mode: str = "default"   # "default" | "fixed" | "search"
    alpha: float = None           # used when alpha_mode == "fixed"
    weights: str = "inv-square"   # "inv-square" | "unit"
    stop: str = "fixed"           # "fixed" | "convergence"
    tolerance: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.shuffle not in SHUFFLE_MODES:
            raise ValueError(f"unknown shuffle mode {self.shuffle!r}")
        if self.init not in INIT_MODES:
            raise ValueError(f"unknown init mode {self.init!r}")
        if self.alpha_mode not in ("default", "fixed", "search"):
            raise ValueError(f"unknown alpha mode {self.alpha_mode!r}")
        if self.weights not in ("inv-square", "unit"):
            raise ValueError(f"unknown weight rule {self.weights!r}")
        if self.stop not in ("fixed", "convergence"):
            raise ValueError(f"unknown stop rule {self.stop!r}")
        if self.alpha_mode == "fixed" and not self.alpha:
            raise ValueError("alpha_mode 'fixed' requires an alpha value")


# ---------------------------------------------------------------------------
# Coordinate charts used while optimizing


def lob_to_hyperboloid(coords: np.ndarray) -> np.ndarray:
    u, v = coords[:, 0], coords[:, 1]
    cv = np.cosh(v)
    return np.column_stack([np.sinh(u) * cv, np.sinh(v), np.cosh(u) * cv])


def hyperboloid_to_lob(X: np.ndarray) -> np.ndarray:
    return np.column_stack([np.arctanh(X[:, 0] / X[:, 2]),
                            np.arcsinh(X[:, 1])])


def _solver_coords(l: Layout) -> np.ndarray:
    if l.geometry == "hyperbolic":
        return lob_to_hyperboloid(l.coords)
    return l.coords.copy()


def _layout_coords(geometry: str, X: np.ndarray) -> np.ndarray:
    if geometry == "hyperbolic":
        return hyperboloid_to_lob(X)
    return X


# ---------------------------------------------------------------------------
# Initialization


def init_layout(g: Graph, mode: str, geometry: str, seed: int,
                D: DistanceMatrix = None, alpha: float = 1.0) -> Layout:
    """Initial placement for the solver.

    random: uniform with respect to the geometry's area measure within
    geodesic radius 1 of the origin / pole.  smart (hyperbolic only):
    5 iterations of Euclidean SGD followed by the inverse Lambert
    projection.
    """
    rng = np.random.default_rng([seed, _SALT_INIT])
    n = g.n
    if mode == "smart":
        if geometry != "hyperbolic":
            raise ValueError("smart init is only defined for hyperbolic space")
        if D is None:
            D = apsp(g)
        euc = init_layout(g, "random", "euclidean", seed)
        X = euc.coords.copy()
        Iu, Ju = np.triu_indices(n, k=1)
        target = alpha * D.d[Iu, Ju]
        w = 1.0 / D.d[Iu, Ju] ** 2
        sched = Schedule.from_distances(D, t_max=5)
        order = _pair_index_map(n)
        for t in range(5):
            I, J = pair_order(n, "reshuffle", seed, t)
            idx = order[I, J]
            K.euc_step_pairs(X, I, J, target[idx], w[idx],
                             schedule_eta(sched, t))
        X = X - X.mean(axis=0)
        return Layout(geometry="hyperbolic", coords=_plane_to_lobachevsky(X),
                      alpha=alpha, method="init-smart")
    theta = rng.uniform(0.0, 2.0 * np.pi, n)
    u = rng.uniform(0.0, 1.0, n)
    if geometry == "hyperbolic":
        # area element sinh(rho) drho: invert cosh(rho) - 1 ~ U(cosh 1 - 1)
        rho = np.arccosh(1.0 + u * (np.cosh(1.0) - 1.0))
        X = np.column_stack([np.sinh(rho) * np.cos(theta),
                             np.sinh(rho) * np.sin(theta),
                             np.cosh(rho)])
        coords = hyperboloid_to_lob(X)
    elif geometry == "spherical":
        # uniform in the cap of geodesic radius 1 around the pole
        cosr = 1.0 - u * (1.0 - np.cos(1.0))
        sinr = np.sqrt(1.0 - cosr ** 2)
        coords = np.column_stack([sinr * np.cos(theta),
                                  sinr * np.sin(theta), cosr])
    elif geometry == "euclidean":
        r = np.sqrt(u)
        coords = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    else:
        raise ValueError(f"unknown geometry {geometry!r}")
    return Layout(geometry=geometry, coords=coords, alpha=alpha,
                  method="init-random")


# ---------------------------------------------------------------------------
# Pair sampling


def _base_pairs(n: int):
    return np.triu_indices(n, k=1)


def _pair_index_map(n: int) -> np.ndarray:
    """(i, j) -> row-major index among i<j pairs (symmetric lookup)."""
    order = np.zeros((n, n), dtype=np.int64)
    Iu, Ju = _base_pairs(n)
    order[Iu, Ju] = np.arange(len(Iu))
    order[Ju, Iu] = np.arange(len(Iu))
    return order


def pair_order(n: int, shuffle: str, seed: int, t: int):
    """Sequence of index pairs for iteration t, as (I, J) arrays."""
    if n < 2:
        raise ValueError("need n >= 2")
    rng = np.random.default_rng([seed, _SALT_PAIRS, t])
    Iu, Ju = _base_pairs(n)
    npairs = len(Iu)
    if shuffle == "reshuffle":
        perm = rng.permutation(npairs)
        return Iu[perm], Ju[perm]
    if shuffle == "replacement":
        i = rng.integers(0, n, npairs)
        j = rng.integers(0, n - 1, npairs)
        j = np.where(j >= i, j + 1, j)
        return i.astype(np.int64), j.astype(np.int64)
    if shuffle == "index-shuffle":
        sigma = rng.permutation(n)
        return sigma[Iu], sigma[Ju]
    raise ValueError(f"unknown shuffle mode {shuffle!r}")


# ---------------------------------------------------------------------------
# Stepping


def sgd_step_pair(l: Layout, i: int, j: int, D: DistanceMatrix,
                  alpha: float, eta: float, w_ij: float) -> Layout:
    """Single pair update; both endpoints move along their connecting
    geodesic by mu * (delta - alpha d_ij) / 2 with mu = min(1, eta w_ij)."""
    if i == j:
        raise ValueError("need i != j")
    X = _solver_coords(l)
    I = np.array([i], dtype=np.int64)
    J = np.array([j], dtype=np.int64)
    target = np.array([alpha * D.d[i, j]])
    w = np.array([w_ij])
    _step_kernel(l.geometry)(X, I, J, target, w, eta)
    return replace(l, coords=_layout_coords(l.geometry, X))


def _step_kernel(geometry):
    return {"euclidean": K.euc_step_pairs,
            "hyperbolic": K.hyp_step_pairs,
            "spherical": K.sph_step_pairs}[geometry]


def _weights(D: DistanceMatrix, rule: str) -> np.ndarray:
    Iu, Ju = _base_pairs(D.n)
    d = D.d[Iu, Ju]
    if rule == "inv-square":
        return 1.0 / (d * d)
    return np.ones_like(d)


def resolve_alpha(g: Graph, geometry: str, params: SgdParams,
                  D: DistanceMatrix = None, probes: int = 20,
                  inner_iterations: int = 10) -> float:
    """Scale factor applied to target distances before embedding.

    default: hyperbolic 10/d_max, spherical pi/d_max, euclidean 1.
    search: golden-section minimization of embedding distortion; returns
    the best value probed (guards against non-unimodal objectives).
    """
    if D is None:
        D = apsp(g)
    if params.alpha_mode == "fixed":
        return float(params.alpha)
    if params.alpha_mode == "default":
        if geometry == "hyperbolic":
            return 10.0 / D.d_max
        if geometry == "spherical":
            return math.pi / D.d_max
        return 1.0
    # search
    if geometry == "euclidean":
        raise ValueError("alpha search is meaningless in Euclidean space "
                         "(scale invariant)")
    lo = 0.1 / D.d_max
    hi = (20.0 / D.d_max if geometry == "hyperbolic" else math.pi / D.d_max)
    inner = replace_params(params, alpha_mode="fixed", alpha=1.0,
                           t_max=inner_iterations, stop="fixed")

    cache = {}

    def objective(a):
        if a not in cache:
            p = replace_params(inner, alpha=a)
            layout, _ = run_mds(g, geometry, p, D=D)
            cache[a] = K.distortion_mean(GEOM_CODE[geometry],
                                         _solver_coords(layout), D.d, a)
        return cache[a]

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    objective(lo)
    objective(hi)
    for _ in range(probes):
        if objective(c) < objective(d):
            b, d = d, c
            c = b - invphi * (b - a)
        else:
            a, c = c, d
            d = a + invphi * (b - a)
    return min(cache, key=cache.get)


def replace_params(p: SgdParams, **kw) -> SgdParams:
    return replace(p, **kw)


def _prepare(g, geometry, params, D):
    if geometry not in GEOM_CODE:
        raise ValueError(f"unknown geometry {geometry!r}")
    if D is None:
        D = apsp(g)
    alpha = resolve_alpha(g, geometry, params, D=D)
    sched = Schedule.from_distances(D, kind=params.schedule_kind,
                                    t_max=params.t_max, eps=params.eps)
    Iu, Ju = _base_pairs(g.n)
    target = alpha * D.d[Iu, Ju]
    w = _weights(D, params.weights)
    return D, alpha, sched, target, w


def run_mds(g: Graph, geometry: str, params: SgdParams,
            D: DistanceMatrix = None):
    """SGD layout.  Returns (Layout, trace) where trace rows are
    (iteration, stress, max step displacement)."""
    D, alpha, sched, target, w = _prepare(g, geometry, params, D)
    layout = init_layout(g, params.init, geometry, params.seed, D=D,
                         alpha=alpha)
    X = _solver_coords(layout)
    step = _step_kernel(geometry)
    order = _pair_index_map(g.n)
    code = GEOM_CODE[geometry]
    inv_sq = params.weights == "inv-square"
    trace = []
    for t in range(params.t_max):
        I, J = pair_order(g.n, params.shuffle, params.seed, t)
        idx = order[I, J]
        max_disp = step(X, I, J, target[idx], w[idx], schedule_eta(sched, t))
        trace.append((t, K.stress_sum(code, X, D.d, alpha, inv_sq), max_disp))
        if params.stop == "convergence" and max_disp < params.tolerance:
            break
    layout = Layout(geometry=geometry, coords=_layout_coords(geometry, X),
                    alpha=alpha, method="hmds")
    return layout, np.array(trace)


# ---------------------------------------------------------------------------
# Full gradient descent reference


def _gd_pass(geometry, X, D, alpha, w_rule_inv_sq, eta):
    """One synchronous pass: per-pair capped displacements are averaged
    per node and applied simultaneously.

    Deliberately a plain-python reference implementation: it mirrors the
    SGD pair arithmetic one pair at a time and is kept unoptimized.
    """
    n = len(X)
    acc = np.zeros_like(X)
    for i in range(n):
        for j in range(i + 1, n):
            d = D[i, j]
            wij = 1.0 / (d * d) if w_rule_inv_sq else 1.0
            mu = min(1.0, eta * wij)
            if geometry == "euclidean":
                diff = X[j] - X[i]
                delta = math.sqrt(diff[0] ** 2 + diff[1] ** 2)
                if delta < 1e-12:
                    continue
                r = mu * (delta - alpha * d) / 2.0
                step = (r / delta) * diff
                acc[i] += step
                acc[j] -= step
            elif geometry == "hyperbolic":
                c = X[i][2] * X[j][2] - X[i][0] * X[j][0] - X[i][1] * X[j][1]
                delta = math.acosh(max(1.0, c))
                if delta < 1e-12:
                    continue
                r = mu * (delta - alpha * d) / 2.0
                sh = math.sinh(delta)
                ch = math.cosh(delta)
                ti = (X[j] - X[i] * ch) / sh
                tj = (X[i] - X[j] * ch) / sh
                acc[i] += r * ti
                acc[j] += r * tj
            else:
                c = min(1.0, max(-1.0, float(np.dot(X[i], X[j]))))
                delta = math.acos(c)
                if delta < 1e-12 or delta > math.pi - 1e-12:
                    continue
                r = mu * (delta - alpha * d) / 2.0
                sh = math.sin(delta)
                ch = math.cos(delta)
                ti = (X[j] - X[i] * ch) / sh
                tj = (X[i] - X[j] * ch) / sh
                acc[i] += r * ti
                acc[j] += r * tj
    acc /= max(1, n - 1)
    max_disp = 0.0
    for i in range(n):
        if geometry == "euclidean":
            s = math.hypot(acc[i][0], acc[i][1])
            X[i] += acc[i]
        elif geometry == "hyperbolic":
            s = math.sqrt(max(0.0, acc[i][0] ** 2 + acc[i][1] ** 2
                              - acc[i][2] ** 2))
            if s > 1e-15:
                X[i] = X[i] * math.cosh(s) + (acc[i] / s) * math.sinh(s)
                X[i][2] = math.sqrt(1.0 + X[i][0] ** 2 + X[i][1] ** 2)
        else:
            tang = acc[i] - float(np.dot(acc[i], X[i])) * X[i]
            s = float(np.linalg.norm(tang))
            if s > 1e-15:
                X[i] = X[i] * math.cos(s) + (tang / s) * math.sin(s)
                X[i] /= np.linalg.norm(X[i])
        max_disp = max(max_disp, s)
    return max_disp


def run_gd(g: Graph, geometry: str, params: SgdParams,
           D: DistanceMatrix = None):
    """Full gradient descent on the scaled stress, same schedule as SGD."""
    D, alpha, sched, _, _ = _prepare(g, geometry, params, D)
    layout = init_layout(g, params.init, geometry, params.seed, D=D,
                         alpha=alpha)
    X = _solver_coords(layout)
    code = GEOM_CODE[geometry]
    inv_sq = params.weights == "inv-square"
    trace = []
    for t in range(params.t_max):
        max_disp = _gd_pass(geometry, X, D.d, alpha, inv_sq,
                            schedule_eta(sched, t))
        trace.append((t, K.stress_sum(code, X, D.d, alpha, inv_sq), max_disp))
        if params.stop == "convergence" and max_disp < params.tolerance:
            break
    layout = Layout(geometry=geometry, coords=_layout_coords(geometry, X),
                    alpha=alpha, method="hmds-gd")
    return layout, np.array(trace)
