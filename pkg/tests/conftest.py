"""Shared oracles for the test suite.

Every function here is deliberately independent of the package internals:
distances come from sort-and-threshold projections onto the L1 ball and the
standard simplex, and external angles from scipy.integrate.quad applied to
the defining integrands.  Tests compare package output against these.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate
from scipy.special import erf as _erf


def l1_ball_distance(point: np.ndarray, rho: float) -> float:
    """Euclidean distance from point to {x : sum |x_i| <= rho}.

    Projection onto the L1 ball by soft thresholding: if the point is
    outside, the projection is sign(x) * max(|x| - lam, 0) where lam is
    chosen so the result has L1 norm exactly rho.
    """
    a = np.abs(np.asarray(point, dtype=np.float64))
    if a.sum() <= rho:
        return 0.0
    u = np.sort(a)[::-1]
    css = np.cumsum(u)
    k = np.arange(1, len(u) + 1)
    valid = u - (css - rho) / k > 0
    j = int(np.max(np.nonzero(valid)[0]))
    lam = (css[j] - rho) / (j + 1)
    proj = np.maximum(a - lam, 0.0)
    return float(np.linalg.norm(a - proj))


def standard_simplex_distance(y: np.ndarray, rho: float) -> float:
    """Euclidean distance from y to {y : y_i >= 0, sum y_i = rho}.

    Classic sort-based projection onto the scaled standard simplex.
    """
    y = np.asarray(y, dtype=np.float64)
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - rho
    k = np.arange(1, len(u) + 1)
    valid = u - css / k > 0
    j = int(np.max(np.nonzero(valid)[0]))
    lam = css[j] / (j + 1)
    proj = np.maximum(y - lam, 0.0)
    return float(np.linalg.norm(y - proj))


def quad_gamma_cross(n: int, l: int) -> float:
    """External angle of an l-face of the unit-vertex cross-polytope,
    via scipy.integrate.quad on the defining Gaussian integral."""
    if l == n:
        return 1.0
    power = n - l - 1
    if power == 0:
        return 0.5
    s = math.sqrt(l + 1.0)
    val, _ = integrate.quad(
        lambda x: math.exp(-x * x) * _erf(x / s) ** power,
        0.0, np.inf, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val / math.sqrt(math.pi)


def quad_gamma_simplex(n: int, l: int) -> float:
    """External angle of an l-face of the regular simplex, via
    scipy.integrate.quad on the defining Gaussian integral."""
    power = n - l
    if power == 0:
        return 1.0
    s = math.sqrt(l + 1.0)
    val, _ = integrate.quad(
        lambda x: math.exp(-x * x) * ((1.0 + _erf(x / s)) / 2.0) ** power,
        -np.inf, np.inf, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val / math.sqrt(math.pi)
