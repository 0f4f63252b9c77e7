"""Compiled inner loops for the SGD solver and the quality measures.

Coordinates are raw arrays: Euclidean (n, 2), spherical (n, 3) unit
vectors, hyperbolic (n, 3) points of the upper hyperboloid sheet
(z^2 - x^2 - y^2 = 1).  All pair loops run sequentially in the order
given, so results are bit-reproducible for a fixed pair order.
"""

import math

import numpy as np
from numba import njit

_EPS = 1e-12
# golden-ratio hash for deterministic perturbation of degenerate pairs
_PHI = 0.6180339887498949


@njit(cache=True)
def _jitter_angle(i, j):
    h = (i * 2654435761 + j * 40503) % 1048576
    return 2.0 * math.pi * ((h * _PHI) % 1.0)


# ---------------------------------------------------------------------------
# Euclidean


@njit(cache=True)
def euc_step_pairs(X, I, J, target, w, eta):
    """One sweep of pair steps; updates X in place, returns the largest
    single-step displacement applied to any node."""
    max_disp = 0.0
    for k in range(len(I)):
        i, j = I[k], J[k]
        dx = X[j, 0] - X[i, 0]
        dy = X[j, 1] - X[i, 1]
        delta = math.sqrt(dx * dx + dy * dy)
        if delta < _EPS:
            a = _jitter_angle(i, j)
            X[i, 0] += 1e-6 * math.cos(a)
            X[i, 1] += 1e-6 * math.sin(a)
            dx = X[j, 0] - X[i, 0]
            dy = X[j, 1] - X[i, 1]
            delta = math.sqrt(dx * dx + dy * dy)
        mu = eta * w[k]
        if mu > 1.0:
            mu = 1.0
        r = mu * (delta - target[k]) / 2.0
        ux, uy = dx / delta, dy / delta
        X[i, 0] += r * ux
        X[i, 1] += r * uy
        X[j, 0] -= r * ux
        X[j, 1] -= r * uy
        if abs(r) > max_disp:
            max_disp = abs(r)
    return max_disp


@njit(cache=True)
def euc_dist(X, i, j):
    dx = X[j, 0] - X[i, 0]
    dy = X[j, 1] - X[i, 1]
    return math.sqrt(dx * dx + dy * dy)


# ---------------------------------------------------------------------------
# Hyperbolic (hyperboloid chart)


@njit(cache=True)
def hyp_dist(X, i, j):
    c = (X[i, 2] * X[j, 2] - X[i, 0] * X[j, 0] - X[i, 1] * X[j, 1])
    if c < 1.0:
        c = 1.0
    return math.acosh(c)


@njit(cache=True)
def _hyp_fix(X, i):
    # re-project onto the hyperboloid after a step
    X[i, 2] = math.sqrt(1.0 + X[i, 0] * X[i, 0] + X[i, 1] * X[i, 1])


@njit(cache=True)
def hyp_step_pairs(X, I, J, target, w, eta):
    max_disp = 0.0
    for k in range(len(I)):
        i, j = I[k], J[k]
        d = hyp_dist(X, i, j)
        if d < _EPS:
            a = _jitter_angle(i, j)
            X[i, 0] += 1e-6 * math.cos(a)
            X[i, 1] += 1e-6 * math.sin(a)
            _hyp_fix(X, i)
            d = hyp_dist(X, i, j)
        mu = eta * w[k]
        if mu > 1.0:
            mu = 1.0
        r = mu * (d - target[k]) / 2.0
        ch, sh = math.cosh(d), math.sinh(d)
        crx, srx = math.cosh(r), math.sinh(r)
        # unit tangents at i toward j and at j toward i
        for axis in range(3):
            ti = (X[j, axis] - X[i, axis] * ch) / sh
            tj = (X[i, axis] - X[j, axis] * ch) / sh
            xi = X[i, axis] * crx + ti * srx
            xj = X[j, axis] * crx + tj * srx
            X[i, axis] = xi
            X[j, axis] = xj
        _hyp_fix(X, i)
        _hyp_fix(X, j)
        if abs(r) > max_disp:
            max_disp = abs(r)
    return max_disp


# ---------------------------------------------------------------------------
# Spherical (unit vectors)


@njit(cache=True)
def sph_dist(X, i, j):
    c = X[i, 0] * X[j, 0] + X[i, 1] * X[j, 1] + X[i, 2] * X[j, 2]
    if c > 1.0:
        c = 1.0
    elif c < -1.0:
        c = -1.0
    return math.acos(c)


@njit(cache=True)
def _sph_fix(X, i):
    n = math.sqrt(X[i, 0] ** 2 + X[i, 1] ** 2 + X[i, 2] ** 2)
    X[i, 0] /= n
    X[i, 1] /= n
    X[i, 2] /= n


@njit(cache=True)
def sph_step_pairs(X, I, J, target, w, eta):
    max_disp = 0.0
    for k in range(len(I)):
        i, j = I[k], J[k]
        d = sph_dist(X, i, j)
        if d < _EPS or d > math.pi - _EPS:
            # coincident or antipodal: great circle is ill-defined
            a = _jitter_angle(i, j)
            X[i, 0] += 1e-6 * math.cos(a)
            X[i, 1] += 1e-6 * math.sin(a)
            _sph_fix(X, i)
            d = sph_dist(X, i, j)
        mu = eta * w[k]
        if mu > 1.0:
            mu = 1.0
        r = mu * (d - target[k]) / 2.0
        ch, sh = math.cos(d), math.sin(d)
        crx, srx = math.cos(r), math.sin(r)
        for axis in range(3):
            ti = (X[j, axis] - X[i, axis] * ch) / sh
            tj = (X[i, axis] - X[j, axis] * ch) / sh
            xi = X[i, axis] * crx + ti * srx
            xj = X[j, axis] * crx + tj * srx
            X[i, axis] = xi
            X[j, axis] = xj
        _sph_fix(X, i)
        _sph_fix(X, j)
        if abs(r) > max_disp:
            max_disp = abs(r)
    return max_disp


# ---------------------------------------------------------------------------
# Quality measures (sequential i<j accumulation; the test-suite brute
# force oracles follow the identical order and arithmetic)

# geometry codes shared with the python layer
EUCLIDEAN, HYPERBOLIC, SPHERICAL = 0, 1, 2


@njit(cache=True)
def _dist(geom, X, i, j):
    if geom == EUCLIDEAN:
        return euc_dist(X, i, j)
    elif geom == HYPERBOLIC:
        return hyp_dist(X, i, j)
    else:
        return sph_dist(X, i, j)


@njit(cache=True)
def stress_sum(geom, X, D, alpha, inv_square_weights):
    n = len(X)
    s = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = D[i, j]
            delta = _dist(geom, X, i, j)
            if inv_square_weights:
                wij = 1.0 / (d * d)
            else:
                wij = 1.0
            e = delta - alpha * d
            s += wij * e * e
    return s


@njit(cache=True)
def distortion_mean(geom, X, D, alpha):
    n = len(X)
    s = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = D[i, j]
            delta = _dist(geom, X, i, j) / alpha
            s += abs(delta - d) / d
    return s / (n * (n - 1) / 2.0)
