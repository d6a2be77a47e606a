"""External angles of cross-polytope and simplex faces by numerical quadrature.

After substituting the error function for the inner Gaussian integrals, every
external angle reduces to a one-dimensional integral of the form

    integral of exp(-x^2) * inner(x / sqrt(s))^k dx

with inner(u) = erf(u) over [0, oo) for the cross-polytope and
inner(u) = (1 + erf(u))/2 over (-oo, oo) for the simplex.  The integrand is
entire and bounded by exp(-x^2), so truncating at |x| = truncation_radius
leaves a tail below exp(-radius^2), far under any tolerance used here.

gamma_cross / gamma_simplex return the external angle of an l-face.  i_cross /
i_simplex return the companion angle integrals obtained by the index swap
l -> n - l; the identities i_cross(n, l) = 2 * gamma_cross(n, n - l) and
i_simplex(n, l) = gamma_simplex(n, n - l) hold by construction and are pinned
in the tests.  Closed-form large-n asymptotics are provided for both.

Evaluation is adaptive Gauss-Kronrod (G7, K15) with a worst-interval-first
queue.  Results are cached per (form, scale, power, config) for the life of
the process.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .specfun import log_gamma

__all__ = [
    "QuadratureConfig",
    "IntegralValue",
    "QuadratureError",
    "gamma_cross",
    "gamma_simplex",
    "i_cross",
    "i_simplex",
    "i_cross_asymptotic",
    "i_simplex_asymptotic",
]

SQRT_PI = math.sqrt(math.pi)

# Gauss-Kronrod 7-15 nodes and weights on [-1, 1].  Kronrod nodes at odd
# indices coincide with the embedded 7-point Gauss rule.
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])
_GAUSS_IDX = np.arange(1, 15, 2)


class QuadratureError(Exception):
    """Raised when the adaptive rule cannot reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for the adaptive angle quadrature.

    abs_tol is the absolute error target for each integral.
    truncation_radius is where the Gaussian tail is cut; must be >= 6 so the
    discarded tail (< exp(-36)) stays far below abs_tol.
    """

    abs_tol: float = 1e-12
    truncation_radius: float = 10.0
    max_subdivisions: int = 200

    def __post_init__(self) -> None:
        if self.abs_tol <= 0.0:
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol}")
        if self.truncation_radius < 6.0:
            raise ValueError(
                f"truncation_radius must be >= 6, got {self.truncation_radius}"
            )
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class IntegralValue:
    """A quadrature result with its error estimate."""

    value: float
    error_estimate: float


def _panel(a: float, b: float, inv_scale: float, power: float, form: int):
    """One G7/K15 panel on [a, b]: returns (kronrod, error_estimate)."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    f = _kernels.angle_integrand(c + h * _XK, inv_scale, power, form)
    kron = h * float(f @ _WK)
    gauss = h * float(f[_GAUSS_IDX] @ _WG)
    return kron, (200.0 * abs(kron - gauss)) ** 1.5


_N_INITIAL_PANELS = 8


def _adaptive(a: float, b: float, inv_scale: float, power: float, form: int,
              cfg: QuadratureConfig) -> IntegralValue:
    """Worst-interval-first adaptive integration of the angle integrand."""
    edges = np.linspace(a, b, _N_INITIAL_PANELS + 1)
    heap = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err = _panel(lo, hi, inv_scale, power, form)
        heapq.heappush(heap, (-err, lo, hi, val))
    splits = 0
    while True:
        total_err = -sum(item[0] for item in heap)
        if total_err <= cfg.abs_tol:
            break
        if splits >= cfg.max_subdivisions:
            raise QuadratureError(
                f"quadrature did not reach abs_tol={cfg.abs_tol:g} after "
                f"{splits} subdivisions; achieved error estimate {total_err:g}"
            )
        _, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for seg in ((lo, mid), (mid, hi)):
            val, err = _panel(seg[0], seg[1], inv_scale, power, form)
            heapq.heappush(heap, (-err, seg[0], seg[1], val))
        splits += 1
    value = math.fsum(item[3] for item in heap)
    return IntegralValue(value=value, error_estimate=total_err)


@lru_cache(maxsize=None)
def _raw_integral(form: int, scale_den: int, power: int, abs_tol: float,
                  radius: float, max_subdivisions: int) -> IntegralValue:
    """Cached raw integral of exp(-x^2) * inner(x / sqrt(scale_den))^power.

    The domain is [0, radius] for the cross form and [-radius, radius] for
    the simplex form; prefactors are applied by the callers.
    """
    cfg = QuadratureConfig(abs_tol=abs_tol, truncation_radius=radius,
                           max_subdivisions=max_subdivisions)
    inv_scale = 1.0 / math.sqrt(scale_den)
    a = 0.0 if form == _kernels.FORM_CROSS else -radius
    return _adaptive(a, radius, inv_scale, float(power), form, cfg)


def _raw(form: int, scale_den: int, power: int, cfg: QuadratureConfig) -> IntegralValue:
    return _raw_integral(form, scale_den, power, cfg.abs_tol,
                         cfg.truncation_radius, cfg.max_subdivisions)


_DEFAULT = QuadratureConfig()


def gamma_cross(n: int, l: int, cfg: QuadratureConfig = _DEFAULT) -> IntegralValue:
    """External angle of an l-face of the n-dimensional cross-polytope.

    Valid for 0 <= l <= n - 1 (proper faces).  gamma_cross(n, 0) sums with
    the vertex count 2n to exactly 1, which pins the quadrature in tests.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if not 0 <= l <= n - 1:
        raise ValueError(f"cross-polytope face index must satisfy 0 <= l <= n-1, got l={l}, n={n}")
    raw = _raw(_kernels.FORM_CROSS, l + 1, n - l - 1, cfg)
    return IntegralValue(raw.value / SQRT_PI, raw.error_estimate / SQRT_PI)


def gamma_simplex(n: int, l: int, cfg: QuadratureConfig = _DEFAULT) -> IntegralValue:
    """External angle of an l-face of the n-dimensional regular simplex.

    Valid for 0 <= l <= n.  Exact anchor values: l = 0 gives 1/(n+1),
    l = n - 1 gives 1/2, l = n gives 1.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if not 0 <= l <= n:
        raise ValueError(f"simplex face index must satisfy 0 <= l <= n, got l={l}, n={n}")
    raw = _raw(_kernels.FORM_SIMPLEX, l + 1, n - l, cfg)
    return IntegralValue(raw.value / SQRT_PI, raw.error_estimate / SQRT_PI)


def i_cross(n: int, l: int, cfg: QuadratureConfig = _DEFAULT) -> IntegralValue:
    """Cross-polytope angle integral I(n, l) for 1 <= l <= n.

    Equals 2 * gamma_cross(n, n - l); both reduce to the same cached raw
    integral, so the identity is exact by construction here.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if not 1 <= l <= n:
        raise ValueError(f"i_cross requires 1 <= l <= n, got l={l}, n={n}")
    raw = _raw(_kernels.FORM_CROSS, n - l + 1, l - 1, cfg)
    return IntegralValue(2.0 * raw.value / SQRT_PI, 2.0 * raw.error_estimate / SQRT_PI)


def i_simplex(n: int, l: int, cfg: QuadratureConfig = _DEFAULT) -> IntegralValue:
    """Simplex angle integral I(n, l) for 0 <= l <= n.

    Equals gamma_simplex(n, n - l).  Exact anchors: I(n, 0) = 1,
    I(n, 1) = 1/2, I(n, n) = 1/(n+1).
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if not 0 <= l <= n:
        raise ValueError(f"i_simplex requires 0 <= l <= n, got l={l}, n={n}")
    raw = _raw(_kernels.FORM_SIMPLEX, n - l + 1, l, cfg)
    return IntegralValue(raw.value / SQRT_PI, raw.error_estimate / SQRT_PI)


def i_cross_asymptotic(n: float, l: int) -> float:
    """Large-n asymptotic of i_cross at fixed l:
    (1/2) (2/sqrt(pi))^l n^(-(l-1)/2) Gamma(l/2)."""
    if l < 1:
        raise ValueError(f"asymptotic requires l >= 1, got {l}")
    if n <= 0:
        raise ValueError(f"dimension must be > 0, got {n}")
    log_val = (
        math.log(0.5)
        + l * math.log(2.0 / SQRT_PI)
        - 0.5 * (l - 1) * math.log(n)
        + log_gamma(0.5 * l)
    )
    return math.exp(log_val)


def i_simplex_asymptotic(l: int) -> float:
    """Large-n limit of i_simplex at fixed l: 2^(-l)."""
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")
    return 2.0 ** (-l)
