#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each hot kernel on both backends with identical inputs, checks the
results agree, and prints median wall times plus the speedup.  JIT warmup
happens before timing so compilation does not pollute the numbers.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import math
import time

import numpy as np

from steinmink._kernels import get_backend


def time_median(func, *args, repeats=9, warmup=2):
    for _ in range(warmup):
        func(*args)
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return float(np.median(times))


def _cube_coeffs(n):
    """Scaled max-normalized coefficients of the cube polynomial, whose
    roots are simple and well separated (honest convergence behavior)."""
    from steinmink.families import FamilyInstance, FamilyKind
    from steinmink.polynomials import renormalized_polynomial

    poly = renormalized_polynomial(FamilyInstance(FamilyKind.CUBE, n))
    log_b = poly.log_c + np.arange(n + 1) * math.log(n)
    return np.exp(log_b - log_b.max())


def make_cases(rng):
    x_panel = np.linspace(0.0, 10.0, 15)
    x_big = np.linspace(0.0, 10.0, 200_000)
    points6 = rng.standard_normal((400_000, 6)) * 1.5
    points7 = rng.standard_normal((400_000, 7)) * 1.5

    n = 60
    b = _cube_coeffs(n)
    angles = 2.0 * math.pi * (np.arange(n) + 0.371954) / n
    z0 = np.exp(1j * angles)
    zs = np.exp(1j * rng.random(20_000) * 2 * math.pi) * 0.9
    empty_c = np.empty(0, dtype=np.complex128)
    empty_f = np.empty(0, dtype=np.float64)

    def panel_loop(f):
        # the quadrature hot path is many 15-point panels, not one big array
        def run():
            for _ in range(2000):
                f(x_panel, 0.5, 55, 0)
        return run

    return [
        ("angle_integrand 15pt x2000", "angle_integrand", panel_loop, None),
        ("angle_integrand 200k", "angle_integrand", None,
         (x_big, 0.5, 55, 0)),
        ("distances_cube", "distances_cube", None, (points6, 1.0)),
        ("distances_cross", "distances_cross", None, (points6, 1.0)),
        ("distances_simplex", "distances_simplex", None, (points7, 1.0)),
        ("horner_dd (deg 60)", "horner_dd", None, (b, zs)),
        ("aberth_iterate (deg 60)", "aberth_iterate", None,
         (b, z0, empty_c, empty_f, 200, 1e-14)),
    ]


def check_aberth_agreement(numpy_backend, numba_backend):
    """Both backends must converge to the same roots of a well-conditioned
    polynomial.  The sweep itself is chaotic, so intermediate states (and
    end states of ill-conditioned instances) are not comparable; only
    converged root sets are."""
    from steinmink.zeros import _initial_guesses

    b = _cube_coeffs(12)
    z0 = _initial_guesses(b, 12)
    empty_c = np.empty(0, dtype=np.complex128)
    empty_f = np.empty(0, dtype=np.float64)
    r_np, _, _ = numpy_backend.aberth_iterate(b, z0, empty_c, empty_f,
                                              400, 1e-12)
    r_nb, _, _ = numba_backend.aberth_iterate(b, z0, empty_c, empty_f,
                                              400, 1e-12)
    gap = np.max(np.abs(np.sort_complex(r_np) - np.sort_complex(r_nb)))
    if gap > 1e-9:
        raise SystemExit(f"backend mismatch in aberth_iterate: {gap:.2e}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=9)
    args = parser.parse_args()

    numpy_backend = get_backend("numpy")
    try:
        numba_backend = get_backend("numba")
    except ImportError:
        print("numba not importable; nothing to compare")
        return

    rng = np.random.Generator(np.random.Philox(key=np.array([7, 0], dtype=np.uint64)))
    cases = make_cases(rng)

    print(f"{'kernel':<28} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for label, name, wrap, call_args in cases:
        f_np = getattr(numpy_backend, name)
        f_nb = getattr(numba_backend, name)
        if wrap is not None:
            t_np = time_median(wrap(f_np), repeats=args.repeats)
            t_nb = time_median(wrap(f_nb), repeats=args.repeats)
        else:
            r_np = f_np(*call_args)
            r_nb = f_nb(*call_args)
            if name == "aberth_iterate":
                # positions on the deg-60 timing instance are conditioning-
                # limited; agreement is asserted separately on a well-
                # conditioned instance
                check_aberth_agreement(numpy_backend, numba_backend)
            else:
                flat_np = np.concatenate(
                    [np.ravel(np.asarray(p, dtype=np.complex128))
                     for p in (r_np if isinstance(r_np, tuple) else (r_np,))])
                flat_nb = np.concatenate(
                    [np.ravel(np.asarray(p, dtype=np.complex128))
                     for p in (r_nb if isinstance(r_nb, tuple) else (r_nb,))])
                if not np.allclose(flat_np, flat_nb, rtol=1e-12, atol=1e-12):
                    raise SystemExit(f"backend mismatch in {name}")
            t_np = time_median(f_np, *call_args, repeats=args.repeats)
            t_nb = time_median(f_nb, *call_args, repeats=args.repeats)
        print(f"{label:<28} {t_np * 1e3:>10.2f}ms {t_nb * 1e3:>10.2f}ms "
              f"{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
