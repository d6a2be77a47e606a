"""Scalar special functions shared by every other module.

Everything here is elementary: log-gamma, the error function, unit-ball
volumes kappa_l = pi^(l/2) / Gamma(l/2 + 1), and the dimensional multiplier
table j(n, l) = prod_{r=0}^{l-1} (1 - r/n) that converts between binomial
and factorial normalizations of polynomial coefficients.

Volumes and multipliers are computed in log space so that callers can work
with dimensions in the hundreds without intermediate overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "log_gamma",
    "erf",
    "unit_ball_volume",
    "log_unit_ball_volume",
    "jensen_multipliers",
    "JensenTable",
]

LOG_PI = math.log(math.pi)


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for x > 0.

    Thin wrapper over the platform lgamma, which is accurate to a few ulps
    over the range used here (x <= a few thousand).
    """
    if x <= 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def erf(x: float) -> float:
    """Error function erf(x) = (2/sqrt(pi)) * int_0^x exp(-t^2) dt."""
    return math.erf(x)


def log_unit_ball_volume(l: int) -> float:
    """log kappa_l, the log volume of the unit ball in dimension l (l >= 0)."""
    if l < 0:
        raise ValueError(f"dimension must be >= 0, got {l}")
    return 0.5 * l * LOG_PI - log_gamma(0.5 * l + 1.0)


def unit_ball_volume(l: int) -> float:
    """Volume kappa_l of the unit ball in dimension l.

    kappa_0 = 1, kappa_1 = 2, kappa_2 = pi, kappa_3 = 4 pi / 3.
    Evaluated as exp of the log form; overflow is impossible (kappa_l <= kappa_5)
    and underflow only occurs for l in the thousands.
    """
    return math.exp(log_unit_ball_volume(l))


@dataclass(frozen=True)
class JensenTable:
    """Multipliers j(n, l) = prod_{r=0}^{l-1} (1 - r/n) for l = 0..n.

    j(n, 0) = j(n, 1) = 1, the sequence decreases to j(n, n) = n!/n^n, and
    j(n, l) = 0 for l > n.  The identity j(n, l) * n^l / l! = binomial(n, l)
    links these to binomial coefficients.
    """

    n: int
    values: np.ndarray = field(repr=False)
    log_values: np.ndarray = field(repr=False)

    def value(self, l: int) -> float:
        """j(n, l); zero when l exceeds n."""
        if l < 0:
            raise ValueError(f"l must be >= 0, got {l}")
        if l > self.n:
            return 0.0
        return float(self.values[l])

    def log_value(self, l: int) -> float:
        """log j(n, l); -inf when l exceeds n."""
        if l < 0:
            raise ValueError(f"l must be >= 0, got {l}")
        if l > self.n:
            return -math.inf
        return float(self.log_values[l])


def jensen_multipliers(n: int) -> JensenTable:
    """Build the multiplier table for dimension n >= 1 as a running product.

    Each entry is formed by one multiplication of the previous one, so the
    accumulated error stays within a couple of ulps per step.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    values = np.empty(n + 1)
    log_values = np.empty(n + 1)
    acc = 1.0
    log_acc = 0.0
    for l in range(n + 1):
        values[l] = acc
        log_values[l] = log_acc
        factor = 1.0 - l / n
        if factor > 0.0:
            acc *= factor
            log_acc += math.log(factor)
    values.setflags(write=False)
    log_values.setflags(write=False)
    return JensenTable(n=n, values=values, log_values=log_values)
