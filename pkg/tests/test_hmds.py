"""Tests for the SGD MDS solver: schedules, initialization, pair
sampling, single-pair steps and full runs."""

import math

import numpy as np
import pytest

from hyperlay import (
    Layout,
    Schedule,
    SgdParams,
    apsp,
    distortion,
    generate,
    init_layout,
    pair_order,
    resolve_alpha,
    run_gd,
    run_mds,
    schedule_eta,
    sgd_step_pair,
)
from hyperlay.graphs import DistanceMatrix, Graph, path_graph
from hyperlay import _kernels as K
from hyperlay.hmds import _solver_coords

P2 = Graph(n=2, edges=[[0, 1]])


def _pair_distance(l):
    X = _solver_coords(l)
    code = {"euclidean": 0, "hyperbolic": 1, "spherical": 2}[l.geometry]
    return K._dist(code, X, 0, 1)


# ---------------------------------------------------------------------------
# schedules


def test_schedule_exponential_endpoints():
    D = DistanceMatrix(2, np.array([[0.0, 4.0], [4.0, 0.0]]))
    s = Schedule.from_distances(D, t_max=20)
    assert schedule_eta(s, 0) == pytest.approx(16.0)
    assert schedule_eta(s, 20) == pytest.approx(0.1 * 16.0)


def test_schedule_exponential_geometric_midpoint():
    s = Schedule(kind="exponential", eta_max=16.0, eta_min=0.1, t_max=20)
    assert schedule_eta(s, 10) == pytest.approx(math.sqrt(16.0 * 0.1))
    assert schedule_eta(s, 10) == pytest.approx(1.2649, abs=5e-5)


@pytest.mark.parametrize("kind", ["exponential", "inverse-t", "inverse-sqrt-t"])
def test_schedule_monotone_and_endpoint(kind):
    s = Schedule(kind=kind, eta_max=25.0, eta_min=0.1, t_max=30)
    etas = [schedule_eta(s, t) for t in range(31)]
    assert all(b <= a for a, b in zip(etas, etas[1:]))
    assert all(e > 0 for e in etas)
    assert etas[-1] == pytest.approx(0.1)


def test_schedule_inverse_kinds_start_at_dmin_squared():
    D = DistanceMatrix(2, np.array([[0.0, 3.0], [3.0, 0.0]]))
    for kind in ("inverse-t", "inverse-sqrt-t"):
        s = Schedule.from_distances(D, kind=kind)
        assert schedule_eta(s, 0) == pytest.approx(9.0)  # a = d_min^2


def test_schedule_rejects_bad_arguments():
    s = Schedule(kind="exponential", eta_max=1.0, eta_min=0.1, t_max=5)
    with pytest.raises(ValueError):
        schedule_eta(s, 6)
    with pytest.raises(ValueError):
        schedule_eta(s, -1)
    with pytest.raises(ValueError):
        Schedule(kind="linear", eta_max=1.0, eta_min=0.1, t_max=5)


# ---------------------------------------------------------------------------
# initialization


def _hyp_radius(coords):
    return np.arccosh(np.cosh(coords[:, 0]) * np.cosh(coords[:, 1]))


def test_init_radius_bounds():
    g = generate("cycle", 100)
    h = init_layout(g, "random", "hyperbolic", seed=0)
    assert np.all(_hyp_radius(h.coords) <= 1.0 + 1e-9)
    s = init_layout(g, "random", "spherical", seed=0)
    assert np.all(np.arccos(np.clip(s.coords[:, 2], -1, 1)) <= 1.0 + 1e-9)
    assert np.allclose(np.linalg.norm(s.coords, axis=1), 1.0, atol=1e-12)
    e = init_layout(g, "random", "euclidean", seed=0)
    assert np.all(np.hypot(e.coords[:, 0], e.coords[:, 1]) <= 1.0)


def test_init_determinism():
    g = generate("cycle", 30)
    a = init_layout(g, "random", "hyperbolic", seed=4)
    b = init_layout(g, "random", "hyperbolic", seed=4)
    assert np.array_equal(a.coords, b.coords)


def test_init_mean_hyperbolic_radius_is_area_uniform():
    # expectation of rho under the area measure sinh(rho) drho on [0, 1]
    # is (cosh 1 - sinh 1) / (cosh 1 - 1) ~ 0.677394
    want = (math.cosh(1.0) - math.sinh(1.0)) / (math.cosh(1.0) - 1.0)
    g = Graph(n=100000, edges=[[i, i + 1] for i in range(99999)])
    h = init_layout(g, "random", "hyperbolic", seed=123)
    mean = float(_hyp_radius(h.coords).mean())
    assert mean == pytest.approx(want, abs=3e-3)


def test_smart_init_is_hyperbolic_and_deterministic():
    g = generate("binary-tree", 4)
    a = init_layout(g, "smart", "hyperbolic", seed=1)
    b = init_layout(g, "smart", "hyperbolic", seed=1)
    assert a.geometry == "hyperbolic"
    assert np.array_equal(a.coords, b.coords)
    with pytest.raises(ValueError):
        init_layout(g, "smart", "euclidean", seed=1)


# ---------------------------------------------------------------------------
# pair sampling


def test_pair_order_reshuffle_is_complete():
    I, J = pair_order(3, "reshuffle", seed=0, t=0)
    assert sorted(zip(I.tolist(), J.tolist())) == [(0, 1), (0, 2), (1, 2)]
    I, J = pair_order(12, "reshuffle", seed=0, t=3)
    assert len(I) == 66
    assert len(set(zip(I.tolist(), J.tolist()))) == 66


def test_pair_order_determinism_and_variation():
    a = pair_order(10, "reshuffle", seed=5, t=2)
    b = pair_order(10, "reshuffle", seed=5, t=2)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])
    c = pair_order(10, "reshuffle", seed=5, t=3)
    assert not (np.array_equal(a[0], c[0]) and np.array_equal(a[1], c[1]))


def test_pair_order_replacement_and_index_shuffle():
    I, J = pair_order(8, "replacement", seed=0, t=0)
    assert len(I) == 28
    assert np.all(I != J)
    I, J = pair_order(8, "index-shuffle", seed=0, t=0)
    pairs = {tuple(sorted(p)) for p in zip(I.tolist(), J.tolist())}
    assert len(pairs) == 28  # a bijection on indices maps pairs to pairs


def test_pair_order_rejects_tiny_n():
    with pytest.raises(ValueError):
        pair_order(1, "reshuffle", seed=0, t=0)


# ---------------------------------------------------------------------------
# single-pair steps


def _two_point_layout(geometry):
    if geometry == "euclidean":
        coords = np.array([[0.0, 0.0], [0.5, 0.1]])
    elif geometry == "hyperbolic":
        coords = np.array([[0.0, 0.0], [0.5, 0.1]])
    else:
        coords = np.array([[0.0, 0.0, 1.0],
                           [math.sin(0.5), 0.0, math.cos(0.5)]])
    return Layout(geometry=geometry, coords=coords)


@pytest.mark.parametrize("geometry", ["euclidean", "hyperbolic", "spherical"])
def test_step_with_saturated_mu_is_exact(geometry):
    D = DistanceMatrix(2, np.array([[0.0, 1.3], [1.3, 0.0]]))
    l = _two_point_layout(geometry)
    out = sgd_step_pair(l, 0, 1, D, alpha=1.0, eta=5.0, w_ij=1.0)
    assert _pair_distance(out) == pytest.approx(1.3, abs=1e-6)


@pytest.mark.parametrize("geometry", ["euclidean", "hyperbolic", "spherical"])
def test_step_cap_invariance(geometry):
    D = DistanceMatrix(2, np.array([[0.0, 0.8], [0.8, 0.0]]))
    l = _two_point_layout(geometry)
    a = sgd_step_pair(l, 0, 1, D, alpha=1.0, eta=1.0, w_ij=1.0)
    b = sgd_step_pair(l, 0, 1, D, alpha=1.0, eta=10.0, w_ij=1.0)
    assert np.array_equal(a.coords, b.coords)


def test_step_at_target_distance_is_identity():
    coords = np.array([[0.0, 0.0], [2.0, 0.0]])
    l = Layout(geometry="hyperbolic", coords=coords)
    D = DistanceMatrix(2, np.array([[0.0, 2.0], [2.0, 0.0]]))
    out = sgd_step_pair(l, 0, 1, D, alpha=1.0, eta=0.5, w_ij=1.0)
    assert np.allclose(out.coords, coords, atol=1e-12)


def test_step_euclidean_matches_vector_arithmetic():
    rng = np.random.default_rng(14)
    for _ in range(50):
        X = rng.normal(size=(2, 2))
        d = rng.uniform(0.5, 3.0)
        eta = rng.uniform(0.01, 2.0)
        w = rng.uniform(0.1, 2.0)
        l = Layout(geometry="euclidean", coords=X.copy())
        D = DistanceMatrix(2, np.array([[0.0, d], [d, 0.0]]))
        out = sgd_step_pair(l, 0, 1, D, alpha=1.0, eta=eta, w_ij=w)
        diff = X[1] - X[0]
        delta = np.hypot(*diff)
        mu = min(1.0, eta * w)
        r = mu * (delta - d) / 2.0
        want = np.vstack([X[0] + r * diff / delta, X[1] - r * diff / delta])
        assert np.allclose(out.coords, want, atol=1e-12)


def test_step_rejects_equal_indices():
    l = _two_point_layout("euclidean")
    D = DistanceMatrix(2, np.array([[0.0, 1.0], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        sgd_step_pair(l, 1, 1, D, alpha=1.0, eta=1.0, w_ij=1.0)


def test_kernel_step_respects_relabeling():
    # relabeled coordinates, pair list and targets give the relabeled result
    rng = np.random.default_rng(15)
    n = 6
    uv = rng.normal(size=(n, 2))
    X = np.column_stack([np.sinh(uv[:, 0]) * np.cosh(uv[:, 1]),
                         np.sinh(uv[:, 1]),
                         np.cosh(uv[:, 0]) * np.cosh(uv[:, 1])])
    I, J = np.triu_indices(n, k=1)
    target = rng.uniform(0.5, 2.0, len(I))
    w = rng.uniform(0.1, 1.0, len(I))
    sigma = rng.permutation(n)
    X1 = X.copy()
    K.hyp_step_pairs(X1, I, J, target, w, 0.7)
    X2 = np.empty_like(X)
    X2[sigma] = X
    K.hyp_step_pairs(X2, sigma[I].copy(), sigma[J].copy(), target, w, 0.7)
    assert np.array_equal(X2[sigma], X1)


# ---------------------------------------------------------------------------
# alpha resolution


def test_resolve_alpha_defaults():
    g = path_graph(6)  # d_max = 5
    assert resolve_alpha(g, "hyperbolic", SgdParams()) == pytest.approx(2.0)
    assert resolve_alpha(g, "spherical", SgdParams()) == pytest.approx(
        math.pi / 5.0)
    assert resolve_alpha(g, "euclidean", SgdParams()) == 1.0


def test_resolve_alpha_fixed_mode():
    g = path_graph(4)
    p = SgdParams(alpha_mode="fixed", alpha=0.37)
    assert resolve_alpha(g, "hyperbolic", p) == 0.37
    with pytest.raises(ValueError):
        SgdParams(alpha_mode="fixed")


def test_resolve_alpha_search_rejects_euclidean():
    g = path_graph(4)
    with pytest.raises(ValueError):
        resolve_alpha(g, "euclidean", SgdParams(alpha_mode="search"))


def test_resolve_alpha_search_within_bounds():
    g = generate("cube")
    D = apsp(g)
    a = resolve_alpha(g, "spherical", SgdParams(alpha_mode="search", seed=0),
                      D=D)
    assert 0.1 / D.d_max <= a <= math.pi / D.d_max


# ---------------------------------------------------------------------------
# full runs


@pytest.mark.parametrize("geometry", ["euclidean", "hyperbolic", "spherical"])
def test_run_mds_p2_reaches_target(geometry):
    l, trace = run_mds(P2, geometry, SgdParams(seed=0))
    assert _pair_distance(l) == pytest.approx(l.alpha * 1.0, abs=1e-4)
    assert trace.shape == (20, 3)


def test_run_mds_determinism():
    g = generate("grid", 5, 5)
    p = SgdParams(seed=7)
    a, ta = run_mds(g, "hyperbolic", p)
    b, tb = run_mds(g, "hyperbolic", p)
    assert np.array_equal(a.coords, b.coords)
    assert np.array_equal(ta, tb)


def test_run_mds_convergence_stop_can_end_early():
    p = SgdParams(stop="convergence", tolerance=1e-2, seed=0)
    _, trace = run_mds(P2, "euclidean", p)
    assert len(trace) < 20


def test_run_mds_tree_prefers_hyperbolic():
    g = generate("binary-tree", 5)
    D = apsp(g)
    h, _ = run_mds(g, "hyperbolic", SgdParams(seed=0), D=D)
    e, _ = run_mds(g, "euclidean", SgdParams(seed=0), D=D)
    assert distortion(h, D) < distortion(e, D)


def test_run_mds_cycle_prefers_euclidean():
    g = generate("cycle", 50)
    D = apsp(g)
    h, _ = run_mds(g, "hyperbolic", SgdParams(seed=0), D=D)
    e, _ = run_mds(g, "euclidean", SgdParams(seed=0), D=D)
    assert distortion(e, D) < distortion(h, D)


def test_run_gd_p2_converges():
    l, trace = run_gd(P2, "hyperbolic", SgdParams(t_max=60, seed=0))
    assert _pair_distance(l) == pytest.approx(l.alpha, abs=1e-2)
    assert trace[-1, 1] < trace[0, 1]


def test_stress_trace_settles():
    # individual runs fluctuate; the seed-median trace is nonincreasing
    # after the hot early iterations, within a small tolerance
    g = generate("grid", 6, 6)
    D = apsp(g)
    traces = [run_mds(g, "hyperbolic", SgdParams(seed=s), D=D)[1][:, 1]
              for s in range(15)]
    med = np.median(traces, axis=0)[3:]
    assert np.all(np.diff(med) <= 0.02 * med[:-1])
