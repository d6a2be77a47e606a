"""The four body families and their face data and intrinsic volumes.

Supported bodies in R^n (the simplex lives in a hyperplane of R^(n+1)):

* ball of radius rho
* cube [-rho, rho]^n
* regular cross-polytope, the l1 ball of radius rho
* regular simplex {xi >= 0, sum xi = rho} in R^(n+1)

For the polytopes, the intrinsic volume of index r is assembled from the
face pipeline V_r = (number of r-faces) * (external angle) * (r-volume of a
face).  The ball has no face structure and uses its closed form directly.
All V and W values are held as logs internally (every quantity here is
strictly positive), so dimensions in the hundreds work without overflow;
plain-float views are materialized on demand.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .angles import IntegralValue, QuadratureConfig, gamma_cross, gamma_simplex
from .specfun import log_unit_ball_volume

__all__ = [
    "FamilyKind",
    "FamilyInstance",
    "QuermassVector",
    "face_count",
    "face_volume",
    "external_angle",
    "intrinsic_volumes",
    "shape_factor",
]

LOG2 = math.log(2.0)


class FamilyKind(enum.Enum):
    BALL = "ball"
    CUBE = "cube"
    CROSS_POLYTOPE = "crosspolytope"
    SIMPLEX = "simplex"

    @classmethod
    def parse(cls, name: str) -> "FamilyKind":
        key = name.strip().lower().replace("-", "").replace("_", "")
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(
            f"unknown family {name!r}; expected one of "
            f"{', '.join(k.value for k in cls)}"
        )


_POLYTOPES = (FamilyKind.CUBE, FamilyKind.CROSS_POLYTOPE, FamilyKind.SIMPLEX)


@dataclass(frozen=True)
class FamilyInstance:
    """One concrete body: a family kind, dimension n >= 1 and size rho > 0."""

    kind: FamilyKind
    n: int
    rho: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"dimension must be an integer >= 1, got {self.n!r}")
        if not (self.rho > 0.0 and math.isfinite(self.rho)):
            raise ValueError(f"rho must be a positive finite real, got {self.rho!r}")


@lru_cache(maxsize=4096)
def _log_factorial(k: int) -> float:
    return math.log(math.factorial(k)) if k > 1 else 0.0


@lru_cache(maxsize=65536)
def _log_binom(n: int, k: int) -> float:
    # math.comb is exact and math.log of a big int is correctly rounded,
    # so this stays accurate for n in the thousands.
    return math.log(math.comb(n, k))


def _check_face_index(kind: FamilyKind, n: int, l: int) -> None:
    if kind == FamilyKind.BALL:
        raise ValueError("the ball has no face pipeline; use its closed forms")
    if kind not in _POLYTOPES:
        raise ValueError(f"unsupported kind {kind!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {n!r}")
    if not 0 <= l <= n:
        raise ValueError(f"face index must satisfy 0 <= l <= {n}, got {l}")


def face_count(kind: FamilyKind, n: int, l: int) -> int:
    """Number of l-dimensional faces, exact integer arithmetic.

    l = n is allowed and counts the body itself (one face), which lets the
    face pipeline cover the top intrinsic volume uniformly.
    """
    _check_face_index(kind, n, l)
    if l == n:
        return 1
    if kind == FamilyKind.CUBE:
        return 2 ** (n - l) * math.comb(n, l)
    if kind == FamilyKind.CROSS_POLYTOPE:
        return 2 ** (l + 1) * math.comb(n, l + 1)
    return math.comb(n + 1, l + 1)


def _log_face_volume(kind: FamilyKind, n: int, rho: float, l: int) -> float:
    if l == 0:
        return 0.0
    if kind == FamilyKind.CUBE:
        return l * (LOG2 + math.log(rho))
    if kind == FamilyKind.CROSS_POLYTOPE and l == n:
        # the body itself; volume 2^n rho^n / n!
        return n * (LOG2 + math.log(rho)) - _log_factorial(n)
    # cross-polytope proper faces and all simplex faces are regular
    # l-simplexes of volume rho^l sqrt(l+1) / l!
    return l * math.log(rho) + 0.5 * math.log(l + 1.0) - _log_factorial(l)


def face_volume(kind: FamilyKind, n: int, rho: float, l: int) -> float:
    """Volume of one l-face.  May overflow to inf for very large n * log(rho);
    the log form is what the pipeline uses internally."""
    _check_face_index(kind, n, l)
    if not (rho > 0.0):
        raise ValueError(f"rho must be > 0, got {rho}")
    return math.exp(_log_face_volume(kind, n, rho, l))


_DEFAULT_QUAD = QuadratureConfig()


def external_angle(kind: FamilyKind, n: int, l: int,
                   cfg: QuadratureConfig = _DEFAULT_QUAD) -> IntegralValue:
    """External angle at an l-face.

    Cube angles are the exact powers 2^-(n-l).  Cross-polytope and simplex
    angles come from the quadrature module.  l = n is the body's own trivial
    angle, exactly 1.
    """
    _check_face_index(kind, n, l)
    if l == n:
        return IntegralValue(1.0, 0.0)
    if kind == FamilyKind.CUBE:
        return IntegralValue(2.0 ** -(n - l), 0.0)
    if kind == FamilyKind.CROSS_POLYTOPE:
        return gamma_cross(n, l, cfg)
    return gamma_simplex(n, l, cfg)


@dataclass(frozen=True)
class QuermassVector:
    """Intrinsic volumes V_0..V_n and quermassintegrals W_0..W_n of one body.

    Both sequences are strictly positive, stored as logs.  The conversion is
    binom(n, l) * W_l = kappa_l * V_{n-l} where kappa_l is the unit-ball
    volume in dimension l.
    """

    instance: FamilyInstance
    log_V: np.ndarray = field(repr=False)
    log_W: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def V(self) -> np.ndarray:
        """Materialized intrinsic volumes (inf when out of double range)."""
        with np.errstate(over="ignore"):
            return np.exp(self.log_V)

    @property
    def W(self) -> np.ndarray:
        """Materialized quermassintegrals (inf when out of double range)."""
        with np.errstate(over="ignore"):
            return np.exp(self.log_W)


def intrinsic_volumes(instance: FamilyInstance,
                      cfg: QuadratureConfig = _DEFAULT_QUAD) -> QuermassVector:
    """Intrinsic volumes of the body via the face pipeline (ball: closed form)."""
    n = instance.n
    rho = instance.rho
    log_rho = math.log(rho)
    log_V = np.empty(n + 1)
    if instance.kind == FamilyKind.BALL:
        # V_r = kappa_n binom(n, r) rho^r / kappa_{n-r}
        log_kn = log_unit_ball_volume(n)
        for r in range(n + 1):
            log_V[r] = (log_kn + _log_binom(n, r) + r * log_rho
                        - log_unit_ball_volume(n - r))
    else:
        for r in range(n + 1):
            if r == n:
                log_angle = 0.0
            elif instance.kind == FamilyKind.CUBE:
                # exact in log form even when 2^-(n-r) would be subnormal
                log_angle = -(n - r) * LOG2
            else:
                log_angle = math.log(external_angle(instance.kind, n, r, cfg).value)
            log_V[r] = (math.log(face_count(instance.kind, n, r))
                        + log_angle
                        + _log_face_volume(instance.kind, n, rho, r))
    log_W = np.empty(n + 1)
    for l in range(n + 1):
        log_W[l] = (log_unit_ball_volume(l) + log_V[n - l] - _log_binom(n, l))
    log_V.setflags(write=False)
    log_W.setflags(write=False)
    return QuermassVector(instance=instance, log_V=log_V, log_W=log_W)


def shape_factor(instance: FamilyInstance) -> float:
    """Surface-to-volume ratio sigma = Vol_{n-1}(boundary) / Vol_n(body).

    Closed forms: n/rho for ball and cube, n^(3/2)/rho for the
    cross-polytope, n^(3/2) (n+1)^(1/2) / rho for the simplex.  Tests pin
    these against the pipeline ratio m_1/m_0.
    """
    n = instance.n
    if instance.kind in (FamilyKind.BALL, FamilyKind.CUBE):
        return n / instance.rho
    if instance.kind == FamilyKind.CROSS_POLYTOPE:
        return n ** 1.5 / instance.rho
    if instance.kind == FamilyKind.SIMPLEX:
        return n ** 1.5 * math.sqrt(n + 1.0) / instance.rho
    raise ValueError(f"unsupported kind {instance.kind!r}")


def log_shape_factor(instance: FamilyInstance) -> float:
    """log of shape_factor, used by the log-space renormalization."""
    n = instance.n
    log_rho = math.log(instance.rho)
    if instance.kind in (FamilyKind.BALL, FamilyKind.CUBE):
        return math.log(float(n)) - log_rho
    if instance.kind == FamilyKind.CROSS_POLYTOPE:
        return 1.5 * math.log(float(n)) - log_rho
    if instance.kind == FamilyKind.SIMPLEX:
        return 1.5 * math.log(float(n)) + 0.5 * math.log(n + 1.0) - log_rho
    raise ValueError(f"unsupported kind {instance.kind!r}")
