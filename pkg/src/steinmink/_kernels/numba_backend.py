"""Numba-compiled implementations of the hot kernels.

Mirrors numpy_backend function for function.  fastmath stays off everywhere:
the compensated Horner relies on strict IEEE ordering of the error-free
transformations, and bitwise agreement between runs matters more than the
last few percent of speed.
"""

from __future__ import annotations

import math

import numba as nb
import numpy as np

_JIT = {"cache": True, "fastmath": False}

FORM_CROSS = 0
FORM_SIMPLEX = 1


@nb.njit(**_JIT)
def angle_integrand(x, inv_scale, power, form):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        xi = x[i]
        if form == FORM_CROSS:
            inner = math.erf(xi * inv_scale)
        else:
            inner = 0.5 * (1.0 + math.erf(xi * inv_scale))
        if power == 0.0:
            out[i] = math.exp(-xi * xi)
        elif inner <= 0.0:
            out[i] = 0.0
        else:
            out[i] = math.exp(-xi * xi + power * math.log(inner))
    return out


# ---------------------------------------------------------------------------
# distance kernels
# ---------------------------------------------------------------------------


@nb.njit(**_JIT)
def distances_ball(points, rho):
    m = points.shape[0]
    out = np.empty(m)
    for i in range(m):
        s = 0.0
        for j in range(points.shape[1]):
            s += points[i, j] * points[i, j]
        r = math.sqrt(s) - rho
        out[i] = r if r > 0.0 else 0.0
    return out


@nb.njit(**_JIT)
def distances_cube(points, rho):
    m = points.shape[0]
    out = np.empty(m)
    for i in range(m):
        s = 0.0
        for j in range(points.shape[1]):
            e = abs(points[i, j]) - rho
            if e > 0.0:
                s += e * e
        out[i] = math.sqrt(s)
    return out


@nb.njit(**_JIT)
def _simplex_threshold_row(v, rho):
    # theta such that sum max(v - theta, 0) = rho
    u = np.sort(v)[::-1]
    css = 0.0
    theta = 0.0
    for j in range(u.shape[0]):
        css += u[j]
        t = (css - rho) / (j + 1)
        if u[j] - t > 0.0:
            theta = t
    return theta


@nb.njit(**_JIT)
def distances_cross(points, rho):
    m = points.shape[0]
    n = points.shape[1]
    out = np.empty(m)
    a = np.empty(n)
    for i in range(m):
        s = 0.0
        for j in range(n):
            a[j] = abs(points[i, j])
            s += a[j]
        if s <= rho:
            out[i] = 0.0
        else:
            theta = _simplex_threshold_row(a, rho)
            d2 = 0.0
            for j in range(n):
                p = a[j] - theta
                if p < 0.0:
                    p = 0.0
                diff = a[j] - p
                d2 += diff * diff
            out[i] = math.sqrt(d2)
    return out


@nb.njit(**_JIT)
def distances_simplex(points, rho):
    m = points.shape[0]
    n = points.shape[1]
    out = np.empty(m)
    for i in range(m):
        inside = True
        for j in range(n):
            if points[i, j] < 0.0:
                inside = False
                break
        if inside:
            out[i] = 0.0
        else:
            v = points[i].copy()
            theta = _simplex_threshold_row(v, rho)
            d2 = 0.0
            for j in range(n):
                p = v[j] - theta
                if p < 0.0:
                    p = 0.0
                diff = v[j] - p
                d2 += diff * diff
            out[i] = math.sqrt(d2)
    return out


# ---------------------------------------------------------------------------
# polynomial evaluation
# ---------------------------------------------------------------------------


@nb.njit(**_JIT)
def polyval_ascending(coeffs, z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    d = len(coeffs) - 1
    for i in range(z.shape[0]):
        acc = complex(coeffs[d])
        for k in range(d - 1, -1, -1):
            acc = acc * z[i] + coeffs[k]
        out[i] = acc
    return out


_SPLITTER = 134217729.0  # 2^27 + 1


@nb.njit(**_JIT)
def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


@nb.njit(**_JIT)
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


@nb.njit(**_JIT)
def _dd_add(ahi, alo, bhi, blo):
    s, e = _two_sum(ahi, bhi)
    e = e + alo + blo
    hi = s + e
    lo = e - (hi - s)
    return hi, lo


@nb.njit(**_JIT)
def _dd_mul_d(ahi, alo, b):
    p, e = _two_prod(ahi, b)
    e = e + alo * b
    hi = p + e
    lo = e - (hi - p)
    return hi, lo


@nb.njit(**_JIT)
def horner_dd(coeffs, z):
    m = z.shape[0]
    d = len(coeffs) - 1
    p_out = np.empty(m, dtype=np.complex128)
    dp_out = np.empty(m, dtype=np.complex128)
    scale_p_out = np.empty(m)
    scale_dp_out = np.empty(m)
    for i in range(m):
        zr = z[i].real
        zi = z[i].imag
        az = abs(z[i])
        re_hi = coeffs[d]
        re_lo = 0.0
        im_hi = 0.0
        im_lo = 0.0
        dp = 0.0 + 0.0j
        scale_p = abs(coeffs[d])
        scale_dp = 0.0
        for k in range(d - 1, -1, -1):
            b = coeffs[k]
            dp = dp * z[i] + complex(re_hi + re_lo, im_hi + im_lo)
            ar_hi, ar_lo = _dd_mul_d(re_hi, re_lo, zr)
            br_hi, br_lo = _dd_mul_d(im_hi, im_lo, zi)
            nr_hi, nr_lo = _dd_add(ar_hi, ar_lo, -br_hi, -br_lo)
            ai_hi, ai_lo = _dd_mul_d(re_hi, re_lo, zi)
            bi_hi, bi_lo = _dd_mul_d(im_hi, im_lo, zr)
            ni_hi, ni_lo = _dd_add(ai_hi, ai_lo, bi_hi, bi_lo)
            s, e = _two_sum(nr_hi, b)
            e = e + nr_lo
            re_hi = s + e
            re_lo = e - (re_hi - s)
            im_hi = ni_hi
            im_lo = ni_lo
            scale_dp = scale_dp * az + scale_p
            scale_p = scale_p * az + abs(b)
        p_out[i] = complex(re_hi + re_lo, im_hi + im_lo)
        dp_out[i] = dp
        scale_p_out[i] = scale_p
        scale_dp_out[i] = scale_dp
    return p_out, dp_out, scale_p_out, scale_dp_out


# ---------------------------------------------------------------------------
# Aberth-Ehrlich simultaneous iteration
# ---------------------------------------------------------------------------


@nb.njit(**_JIT)
def aberth_iterate(coeffs, z0, fixed, fixed_mult, max_iter, tol):
    z = z0.astype(np.complex128)
    k = z.shape[0]
    if k == 0:
        return z, 0, 0.0
    d = len(coeffs) - 1
    dcoef = np.empty(d)
    for j in range(d):
        dcoef[j] = coeffs[j + 1] * (j + 1)
    w = np.empty(k, dtype=np.complex128)
    last = np.inf
    for it in range(max_iter):
        retry = False
        for i in range(k):
            acc = complex(coeffs[d])
            dacc = complex(dcoef[d - 1]) if d >= 1 else 0.0 + 0.0j
            for kk in range(d - 1, -1, -1):
                acc = acc * z[i] + coeffs[kk]
            for kk in range(d - 2, -1, -1):
                dacc = dacc * z[i] + dcoef[kk]
            if acc == 0.0:
                w[i] = 0.0
                continue
            if dacc == 0.0:
                z[i] = z[i] * (1.0 + 1e-8) + 1e-8
                retry = True
                break
            newton = acc / dacc
            repel = 0.0 + 0.0j
            collide = False
            for j in range(k):
                if j != i:
                    dz = z[i] - z[j]
                    if dz == 0.0:
                        collide = True
                        break
                    repel += 1.0 / dz
            if collide:
                z[i] = z[i] * (1.0 + 1e-10) + 1e-10
                retry = True
                break
            for j in range(fixed.shape[0]):
                dz = z[i] - fixed[j]
                if dz == 0.0:
                    collide = True
                    break
                repel += fixed_mult[j] / dz
            if collide:
                z[i] = z[i] * (1.0 + 1e-10) + 1e-10
                retry = True
                break
            denom = 1.0 - newton * repel
            if abs(denom) < 1e-290:
                denom = 1.0 + 0.0j
            w[i] = newton / denom
        if retry:
            continue
        last = 0.0
        for i in range(k):
            z[i] = z[i] - w[i]
            c = abs(w[i]) / (1.0 + abs(z[i]))
            if c > last:
                last = c
        if last <= tol:
            return z, it + 1, last
    return z, max_iter, last
