"""Limiting entire functions and convergence of the renormalized polynomials.

As dimension grows, the renormalized polynomials of balls and cross-polytopes
converge to E1(tau) = exp(tau), and those of cubes and simplexes to

    E2(tau) = sum_{l>=0} (sqrt(pi)/2)^l tau^l / (Gamma(l/2 + 1) l!).

Both limits have positive Taylor coefficients bounded by 1/l!, so they are
entire of exponential type and |E(tau)| <= exp(|tau|).

convergence_profile measures d_n = sup |MM_{K^n}(tau) - E(tau)| over a
uniform angular grid on the circle |tau| = r; the grid sup converges fast
because polynomial and limit are entire.
"""

from __future__ import annotations

import cmath
import csv
import enum
import io
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .angles import QuadratureConfig
from .families import FamilyInstance, FamilyKind
from .polynomials import RenormalizedPolynomial, renormalized_polynomial
from .specfun import log_gamma

__all__ = [
    "LimitTag",
    "LimitFunction",
    "ConvergenceProfile",
    "limit_for",
    "eval_limit",
    "convergence_profile",
    "profile_to_json_dict",
    "profile_to_csv",
]

_DEFAULT_QUAD = QuadratureConfig()
_LOG_SQRT_PI_HALF = 0.5 * math.log(math.pi) - math.log(2.0)


class LimitTag(enum.Enum):
    E1 = "E1"
    E2 = "E2"


@dataclass(frozen=True)
class LimitFunction:
    """One of the two limiting entire functions, identified by its tag."""

    tag: LimitTag

    def coefficient(self, l: int) -> float:
        """Taylor coefficient at degree l (positive, <= 1/l!)."""
        if l < 0:
            raise ValueError(f"l must be >= 0, got {l}")
        if self.tag == LimitTag.E1:
            return math.exp(-_log_factorial_f(l))
        return math.exp(l * _LOG_SQRT_PI_HALF - log_gamma(0.5 * l + 1.0)
                        - _log_factorial_f(l))


@lru_cache(maxsize=4096)
def _log_factorial_f(l: int) -> float:
    return math.log(math.factorial(l)) if l > 1 else 0.0


E1 = LimitFunction(LimitTag.E1)
E2 = LimitFunction(LimitTag.E2)


def limit_for(kind: FamilyKind) -> LimitFunction:
    """The limit attached to each family: exp for ball and cross-polytope,
    the E2 series for cube and simplex."""
    if kind in (FamilyKind.BALL, FamilyKind.CROSS_POLYTOPE):
        return E1
    if kind in (FamilyKind.CUBE, FamilyKind.SIMPLEX):
        return E2
    raise ValueError(f"unsupported kind {kind!r}")


def eval_limit(f: LimitFunction, tau: complex, tol: float = 1e-14) -> complex:
    """Evaluate a limit function at a complex point.

    E1 uses the library exponential.  E2 sums its series and stops once the
    remaining tail is certified below tol via the majorant 1/l!: the tail
    past L is at most (|tau|^(L+1)/(L+1)!) / (1 - |tau|/(L+2)) once
    L + 2 > |tau|.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if f.tag == LimitTag.E1:
        return cmath.exp(tau)
    a = abs(tau)
    acc = complex(f.coefficient(0))
    power = 1.0 + 0.0j
    majorant = 1.0  # a^l / l!
    l = 0
    while True:
        l += 1
        power *= tau
        majorant *= a / l
        acc += f.coefficient(l) * power
        if l + 2 > a:
            tail = majorant * (a / (l + 2)) / (1.0 - a / (l + 2))
            if tail < tol:
                return acc


@dataclass(frozen=True)
class ConvergenceProfile:
    """Sup-distances d_n between renormalized polynomials and their limit."""

    kind: FamilyKind
    radius: float
    dims: tuple
    distances: tuple
    samples: int


def _poly_on_grid(poly: RenormalizedPolynomial, taus: np.ndarray) -> np.ndarray:
    c = poly.c
    acc = np.full(taus.shape, complex(c[-1]))
    for l in range(len(c) - 2, -1, -1):
        acc = acc * taus + c[l]
    return acc


def _limit_on_grid(f: LimitFunction, taus: np.ndarray, tol: float) -> np.ndarray:
    if f.tag == LimitTag.E1:
        return np.exp(taus)
    a = float(np.max(np.abs(taus)))
    acc = np.full(taus.shape, complex(f.coefficient(0)))
    power = np.ones(taus.shape, dtype=np.complex128)
    majorant = 1.0
    l = 0
    while True:
        l += 1
        power = power * taus
        majorant *= a / l
        acc += f.coefficient(l) * power
        if l + 2 > a:
            tail = majorant * (a / (l + 2)) / (1.0 - a / (l + 2))
            if tail < tol:
                return acc


def convergence_profile(kind: FamilyKind, dims, radius: float, samples: int = 256,
                        cfg: QuadratureConfig = _DEFAULT_QUAD,
                        tol: float = 1e-14) -> ConvergenceProfile:
    """Compute d_n over a uniform grid of `samples` points on |tau| = radius.

    dims must be strictly increasing.  radius = 0 degenerates to the single
    point tau = 0, where every polynomial and limit equal 1 exactly.
    """
    dims = tuple(int(n) for n in dims)
    if not dims:
        raise ValueError("dims must be non-empty")
    if any(b <= a for a, b in zip(dims, dims[1:])):
        raise ValueError(f"dims must be strictly increasing, got {dims}")
    if radius < 0.0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if samples < 64:
        raise ValueError(f"need at least 64 grid samples, got {samples}")
    f = limit_for(kind)
    angles = 2.0 * math.pi * np.arange(samples) / samples
    taus = radius * np.exp(1j * angles)
    limit_vals = _limit_on_grid(f, taus, tol)
    distances = []
    for n in dims:
        poly = renormalized_polynomial(FamilyInstance(kind=kind, n=n), cfg)
        d = float(np.max(np.abs(_poly_on_grid(poly, taus) - limit_vals)))
        distances.append(d)
    return ConvergenceProfile(kind=kind, radius=float(radius), dims=dims,
                              distances=tuple(distances), samples=samples)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def profile_to_json_dict(profile: ConvergenceProfile) -> dict:
    return {
        "kind": profile.kind.value,
        "radius": _fmt(profile.radius),
        "samples": profile.samples,
        "dims": list(profile.dims),
        "distances": [_fmt(d) for d in profile.distances],
    }


def profile_to_csv(profile: ConvergenceProfile) -> str:
    """CSV with columns n, d_n (RFC-4180 quoting via the csv module)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "d_n"])
    for n, d in zip(profile.dims, profile.distances):
        writer.writerow([n, _fmt(d)])
    return buf.getvalue()
