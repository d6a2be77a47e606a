"""Parity between the numba and numpy kernel backends.

Every kernel must produce the same answer from both implementations.  The
elementwise kernels agree to a relative 1e-12 or better; the Aberth sweep
is chaotic in its intermediate iterates (a one-ulp summation difference
grows by the local Lyapunov factor each sweep), so the two backends are
compared on the converged root sets instead of iterate-by-iterate.
"""

import math

import numpy as np
import pytest

from steinmink._kernels import backend_name, get_backend

np_be = get_backend("numpy")
try:
    nb_be = get_backend("numba")
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba unavailable")


def cube_scaled_coeffs(n):
    """Scaled cube coefficients b_l = binom(n,l) kappa_l / 2^l, normalized."""
    b = np.array([math.comb(n, l) * math.pi ** (l / 2.0)
                  / math.gamma(l / 2.0 + 1) / 2.0 ** l for l in range(n + 1)])
    return b / b.max()


class TestBackendSelection:
    def test_active_backend_is_known(self):
        assert backend_name in ("numba", "numpy")

    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError):
            get_backend("fortran")


@needs_numba
class TestElementwiseParity:
    def test_angle_integrand(self):
        x = np.linspace(0.0, 8.0, 5000)
        for power in (1, 2, 7, 40):
            for form in (np_be.FORM_CROSS, np_be.FORM_SIMPLEX):
                a = np_be.angle_integrand(x, 0.4, power, form)
                b = nb_be.angle_integrand(x, 0.4, power, form)
                assert np.allclose(a, b, rtol=1e-12, atol=1e-300)

    def test_distances(self):
        rng = np.random.default_rng(0)
        pts = rng.normal(size=(4000, 3)) * 2
        for name in ("distances_ball", "distances_cube", "distances_cross"):
            a = getattr(np_be, name)(pts, 1.1)
            b = getattr(nb_be, name)(pts, 1.1)
            assert np.allclose(a, b, rtol=1e-12, atol=1e-14), name

    def test_distances_simplex(self):
        rng = np.random.default_rng(1)
        # simplex kernel consumes points already lifted to the hyperplane
        y = rng.normal(size=(4000, 4))
        y -= (y.sum(axis=1, keepdims=True) - 1.0) / 4.0
        a = np_be.distances_simplex(y, 1.0)
        b = nb_be.distances_simplex(y, 1.0)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-14)

    def test_polyval_ascending(self):
        c = cube_scaled_coeffs(30)
        z = np.linspace(-3.0, 1.0, 500).astype(np.complex128)
        a = np_be.polyval_ascending(c, z)
        b = nb_be.polyval_ascending(c, z)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-300)

    def test_horner_dd(self):
        c = cube_scaled_coeffs(40)
        rng = np.random.default_rng(2)
        z = rng.normal(size=300) + 1j * rng.normal(size=300)
        pa, dpa, sa, sda = np_be.horner_dd(c, z)
        pb, dpb, sb, sdb = nb_be.horner_dd(c, z)
        # values can cancel to ~0, so compare against the evaluation scales
        assert np.max(np.abs(pa - pb) / sa) < 1e-13
        assert np.max(np.abs(dpa - dpb) / sda) < 1e-13
        assert np.allclose(sa, sb, rtol=1e-12)
        assert np.allclose(sda, sdb, rtol=1e-12)


@needs_numba
class TestAberthParity:
    def test_converged_root_sets_agree(self):
        # a one-ulp summation difference between the backends is amplified
        # each sweep, so individual iterates diverge; the attracting root
        # set is the comparable quantity.  Degree kept in the regime where
        # the roots themselves are well conditioned.
        from steinmink.zeros import _initial_guesses

        b = cube_scaled_coeffs(10)
        z0 = _initial_guesses(b, 10)
        empty = np.empty(0, dtype=np.complex128)
        empty_m = np.empty(0, dtype=np.int64)
        za, _, _ = np_be.aberth_iterate(b, z0.copy(), empty, empty_m, 400, 1e-12)
        zb, _, _ = nb_be.aberth_iterate(b, z0.copy(), empty, empty_m, 400, 1e-12)
        a = np.sort_complex(za)
        c = np.sort_complex(zb)
        assert np.max(np.abs(a - c)) < 1e-9


class TestHornerCorrectness:
    def test_compensated_residual_quality(self):
        # p(x) = (x - 1)^8 expanded; plain double evaluation near x = 1
        # loses all digits, the compensated kernel keeps the tiny value
        from math import comb
        c = np.array([comb(8, k) * (-1.0) ** (8 - k) for k in range(9)])
        x = np.array([1.0 + 1e-3], dtype=np.complex128)
        p, dp, sp, sdp = np_be.horner_dd(c, x)
        assert abs(p[0] - 1e-24) <= 1e-30
        assert sp[0] > 0

    def test_derivative_value(self):
        c = np.array([1.0, 2.0, 3.0, 4.0])
        z = np.array([0.7 + 0.2j])
        p, dp, _, _ = np_be.horner_dd(c, z)
        zz = z[0]
        assert p[0] == pytest.approx(1 + 2 * zz + 3 * zz ** 2 + 4 * zz ** 3,
                                     rel=1e-14)
        assert dp[0] == pytest.approx(2 + 6 * zz + 12 * zz ** 2, rel=1e-14)
