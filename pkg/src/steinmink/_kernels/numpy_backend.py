"""Vectorized numpy implementations of the hot kernels.

This is the fallback path used when numba is unavailable or disabled.  The
algorithms match numba_backend exactly; only the execution style differs
(whole-array operations here, explicit loops there).
"""

from __future__ import annotations

import numpy as np
from scipy.special import erf as _erf_array

FORM_CROSS = 0
FORM_SIMPLEX = 1


def angle_integrand(x, inv_scale, power, form):
    """Evaluate exp(-x^2) * inner(x * inv_scale)^power elementwise.

    inner is erf for the cross-polytope form and (1 + erf)/2 for the simplex
    form.  Large powers are handled in log space; inner == 0 contributes 0.
    """
    x = np.asarray(x, dtype=np.float64)
    if form == FORM_CROSS:
        inner = _erf_array(x * inv_scale)
    else:
        inner = 0.5 * (1.0 + _erf_array(x * inv_scale))
    if power == 0.0:
        return np.exp(-x * x)
    with np.errstate(divide="ignore"):
        log_inner = np.log(inner)
    # -inf log maps to a zero integrand value, which is the exact limit.
    return np.exp(-x * x + power * log_inner)


# ---------------------------------------------------------------------------
# distance kernels (hit tests for the Monte Carlo oracle)
# ---------------------------------------------------------------------------


def distances_ball(points, rho):
    """Euclidean distance from each row to the ball of radius rho."""
    r = np.sqrt((points * points).sum(axis=1))
    return np.maximum(r - rho, 0.0)


def distances_cube(points, rho):
    """Euclidean distance from each row to the cube [-rho, rho]^n."""
    excess = np.maximum(np.abs(points) - rho, 0.0)
    return np.sqrt((excess * excess).sum(axis=1))


def _simplex_threshold(v, rho):
    """Water-filling threshold for projecting rows of v onto the simplex
    {x >= 0, sum x = rho}: theta such that sum max(v - theta, 0) = rho."""
    m = v.shape[1]
    u = np.sort(v, axis=1)[:, ::-1]
    css = np.cumsum(u, axis=1)
    idx = np.arange(1, m + 1, dtype=np.float64)
    t = (css - rho) / idx
    cond = u - t > 0.0
    # cond[:, 0] is always true (u_max - (u_max - rho) = rho > 0), so the
    # last true index is well defined.
    k = m - 1 - np.argmax(cond[:, ::-1], axis=1)
    return t[np.arange(v.shape[0]), k]


def distances_cross(points, rho):
    """Euclidean distance from each row to the l1 ball {sum |x_i| <= rho}."""
    a = np.abs(points)
    out = np.zeros(points.shape[0])
    outside = a.sum(axis=1) > rho
    if outside.any():
        v = a[outside]
        theta = _simplex_threshold(v, rho)
        proj = np.maximum(v - theta[:, None], 0.0)
        d = v - proj
        out[outside] = np.sqrt((d * d).sum(axis=1))
    return out


def distances_simplex(points, rho):
    """Euclidean distance from each row (a point of the hyperplane
    {sum xi = rho} in R^(n+1)) to the simplex {xi >= 0, sum xi = rho}."""
    inside = (points >= 0.0).all(axis=1)
    out = np.zeros(points.shape[0])
    if not inside.all():
        v = points[~inside]
        theta = _simplex_threshold(v, rho)
        proj = np.maximum(v - theta[:, None], 0.0)
        d = v - proj
        out[~inside] = np.sqrt((d * d).sum(axis=1))
    return out


# ---------------------------------------------------------------------------
# polynomial evaluation: plain and compensated Horner
# ---------------------------------------------------------------------------


def polyval_ascending(coeffs, z):
    """Plain Horner evaluation of sum coeffs[k] z^k at complex points z."""
    z = np.asarray(z)
    acc = np.full(z.shape, complex(coeffs[-1]))
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * z + coeffs[k]
    return acc


_SPLITTER = 134217729.0  # 2^27 + 1, Dekker split constant


def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ahi = ta - (ta - a)
    alo = a - ahi
    tb = _SPLITTER * b
    bhi = tb - (tb - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


def _dd_add(ahi, alo, bhi, blo):
    s, e = _two_sum(ahi, bhi)
    e = e + alo + blo
    hi = s + e
    lo = e - (hi - s)
    return hi, lo


def _dd_mul_d(ahi, alo, b):
    p, e = _two_prod(ahi, b)
    e = e + alo * b
    hi = p + e
    lo = e - (hi - p)
    return hi, lo


def horner_dd(coeffs, z):
    """Compensated (double-double accumulator) Horner for real coefficients
    at complex points.

    Returns (p, dp, scale_p, scale_dp): polynomial and derivative values and
    the magnitude sums scale_p = sum |b_k| |z|^k, scale_dp = sum k |b_k|
    |z|^(k-1) used as local coefficient scales in residual certificates.
    The accumulator for p carries roughly twice the working precision; dp is
    evaluated in plain doubles.
    """
    z = np.asarray(z, dtype=np.complex128)
    zr = z.real.copy()
    zi = z.imag.copy()
    az = np.abs(z)
    d = len(coeffs) - 1

    re_hi = np.full(z.shape, float(coeffs[d]))
    re_lo = np.zeros(z.shape)
    im_hi = np.zeros(z.shape)
    im_lo = np.zeros(z.shape)
    dp = np.zeros(z.shape, dtype=np.complex128)
    scale_p = np.full(z.shape, abs(float(coeffs[d])))
    scale_dp = np.zeros(z.shape)

    for k in range(d - 1, -1, -1):
        b = float(coeffs[k])
        dp = dp * z + (re_hi + re_lo) + 1j * (im_hi + im_lo)
        # complex multiply of the dd accumulator by z
        ar_hi, ar_lo = _dd_mul_d(re_hi, re_lo, zr)
        br_hi, br_lo = _dd_mul_d(im_hi, im_lo, zi)
        nr_hi, nr_lo = _dd_add(ar_hi, ar_lo, -br_hi, -br_lo)
        ai_hi, ai_lo = _dd_mul_d(re_hi, re_lo, zi)
        bi_hi, bi_lo = _dd_mul_d(im_hi, im_lo, zr)
        ni_hi, ni_lo = _dd_add(ai_hi, ai_lo, bi_hi, bi_lo)
        # add the real coefficient
        s, e = _two_sum(nr_hi, b)
        e = e + nr_lo
        re_hi = s + e
        re_lo = e - (re_hi - s)
        im_hi, im_lo = ni_hi, ni_lo
        scale_dp = scale_dp * az + scale_p
        scale_p = scale_p * az + abs(b)

    p = (re_hi + re_lo) + 1j * (im_hi + im_lo)
    return p, dp, scale_p, scale_dp


# ---------------------------------------------------------------------------
# Aberth-Ehrlich simultaneous iteration
# ---------------------------------------------------------------------------


def aberth_iterate(coeffs, z0, fixed, fixed_mult, max_iter, tol):
    """Run Aberth-Ehrlich sweeps on the free roots z0.

    fixed/fixed_mult are already-known roots with multiplicities; they enter
    the repulsion sum but are not moved.  Returns (z, iterations, last_corr)
    where last_corr is the final maximum relative correction.
    """
    z = np.array(z0, dtype=np.complex128)
    k = len(z)
    if k == 0:
        return z, 0, 0.0
    d = len(coeffs) - 1
    dcoef = np.asarray(coeffs[1:]) * np.arange(1, d + 1)
    fixed = np.asarray(fixed, dtype=np.complex128)
    fixed_mult = np.asarray(fixed_mult, dtype=np.float64)
    last = np.inf
    for it in range(max_iter):
        p = polyval_ascending(coeffs, z)
        dp = polyval_ascending(dcoef, z)
        done = p == 0.0
        bad = (dp == 0.0) & ~done
        if bad.any():
            z[bad] = z[bad] * (1.0 + 1e-8) + 1e-8
            continue
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = np.where(done, 0.0, p / np.where(done, 1.0, dp))
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            repel = (1.0 / diff).sum(axis=1)
            if len(fixed):
                repel = repel + (fixed_mult[None, :] / (z[:, None] - fixed[None, :])).sum(axis=1)
        if not np.isfinite(repel).all():
            # coincident iterates; nudge apart and retry
            coll = ~np.isfinite(repel)
            z[coll] = z[coll] * (1.0 + 1e-10) + 1e-10
            continue
        denom = 1.0 - newton * repel
        denom = np.where(np.abs(denom) < 1e-290, 1.0, denom)
        w = np.where(done, 0.0, newton / denom)
        z = z - w
        last = float((np.abs(w) / (1.0 + np.abs(z))).max())
        if last <= tol:
            return z, it + 1, last
    return z, max_iter, last
