"""Steiner-Minkowski polynomials and their renormalized form.

The volume of the outer parallel body K + t * (unit ball) is a polynomial

    M_K(t) = sum_{l=0}^{n} m_l t^l,      m_l = kappa_l * V_{n-l}(K),

with V_r the intrinsic volumes from the families module.  Dividing by the
body volume and switching to the scale-free variable tau = sigma * t (sigma
the surface-to-volume ratio) gives the renormalized polynomial

    MM_K(tau) = sum_{l=0}^{n} c_l tau^l,  c_l = j(n, l) * mu_l / l!,

whose coefficients do not depend on rho.  The mu_l sequence lies in (0, 1],
starts mu_0 = mu_1 = 1, and is logarithmically concave; c_l <= 1/l! which
bounds |MM_K(tau)| by exp(|tau|).

All coefficient algebra runs in log space (every ingredient is positive), so
the same code serves n = 2 and n = 1000.  Materialized float views may
underflow or overflow at extreme n; the log arrays never do.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .angles import QuadratureConfig, i_cross, i_simplex
from .families import (
    FamilyInstance,
    FamilyKind,
    QuermassVector,
    intrinsic_volumes,
    log_shape_factor,
    _log_binom,
    _log_factorial,
)
from .specfun import jensen_multipliers, log_gamma

__all__ = [
    "MinkowskiPolynomial",
    "RenormalizedPolynomial",
    "minkowski_polynomial",
    "renormalize",
    "renormalized_polynomial",
    "mu_from_quermass",
    "closed_form_renormalized",
    "evaluate",
    "check_log_concavity",
    "ConcavityReport",
    "ConcavityViolation",
    "to_json_dict",
    "from_json_dict",
    "dumps",
    "loads",
]

_DEFAULT_QUAD = QuadratureConfig()
LOG_SQRT_PI_HALF = 0.5 * math.log(math.pi) - math.log(2.0)


@dataclass(frozen=True)
class MinkowskiPolynomial:
    """Tube-volume polynomial M_K(t) with coefficients kept as logs."""

    instance: FamilyInstance
    log_m: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.instance.n

    @cached_property
    def m(self) -> np.ndarray:
        """Materialized coefficients m_0..m_n (inf/0 when out of range)."""
        with np.errstate(over="ignore"):
            return np.exp(self.log_m)


@dataclass(frozen=True)
class RenormalizedPolynomial:
    """Renormalized polynomial MM_K(tau) plus the extracted mu sequence."""

    instance: FamilyInstance
    log_c: np.ndarray = field(repr=False)
    log_mu: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return self.instance.n

    @cached_property
    def c(self) -> np.ndarray:
        """Materialized c_0..c_n; c_l <= 1/l! so overflow is impossible."""
        return np.exp(self.log_c)

    @cached_property
    def mu(self) -> np.ndarray:
        """Materialized mu_0..mu_n (may underflow to 0 for n in the hundreds;
        the log_mu field is the authoritative form)."""
        return np.exp(self.log_mu)


def minkowski_polynomial(instance: FamilyInstance,
                         cfg: QuadratureConfig = _DEFAULT_QUAD) -> MinkowskiPolynomial:
    """Assemble M_K(t) from the intrinsic volumes of the body."""
    qv = intrinsic_volumes(instance, cfg)
    n = instance.n
    log_m = np.empty(n + 1)
    for l in range(n + 1):
        # m_l = kappa_l V_{n-l} = binom(n,l) W_l; the W form reuses qv.log_W
        log_m[l] = _log_binom(n, l) + qv.log_W[l]
    log_m.setflags(write=False)
    return MinkowskiPolynomial(instance=instance, log_m=log_m)


def _renormalize_logs(poly: MinkowskiPolynomial, log_sigma: float,
                      log_vol: float) -> RenormalizedPolynomial:
    n = poly.n
    table = jensen_multipliers(n)
    log_c = np.empty(n + 1)
    log_mu = np.empty(n + 1)
    for l in range(n + 1):
        log_c[l] = poly.log_m[l] - log_vol - l * log_sigma
        log_mu[l] = log_c[l] + _log_factorial(l) - table.log_value(l)
    log_c.setflags(write=False)
    log_mu.setflags(write=False)
    return RenormalizedPolynomial(instance=poly.instance, log_c=log_c, log_mu=log_mu)


def renormalize(poly: MinkowskiPolynomial, sigma: float, vol: float) -> RenormalizedPolynomial:
    """Renormalize with an explicitly supplied shape factor and volume.

    c_l = m_l / (vol * sigma^l) and mu_l = c_l * l! / j(n, l), both computed
    in log space; division by the tiny j(n, n) = n!/n^n stays exact there.
    """
    if not (sigma > 0.0 and math.isfinite(sigma)):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    if not (vol > 0.0 and math.isfinite(vol)):
        raise ValueError(f"vol must be a positive finite real, got {vol} (non-solid body?)")
    return _renormalize_logs(poly, math.log(sigma), math.log(vol))


def renormalized_polynomial(instance: FamilyInstance,
                            cfg: QuadratureConfig = _DEFAULT_QUAD) -> RenormalizedPolynomial:
    """Full pipeline: intrinsic volumes -> M_K -> renormalized form.

    Stays in log space throughout, so it also serves dimensions where the
    volume itself would over- or underflow a double (ball n ~ 1000).
    """
    poly = minkowski_polynomial(instance, cfg)
    return _renormalize_logs(poly, log_shape_factor(instance), float(poly.log_m[0]))


def mu_from_quermass(W) -> np.ndarray:
    """Extract mu_l = W_0^(l-1) W_l / W_1^l from quermassintegrals.

    Accepts a QuermassVector (uses its log form) or any sequence of positive
    reals.  Agrees with the renormalize extraction to high relative accuracy.
    """
    if isinstance(W, QuermassVector):
        log_W = np.asarray(W.log_W, dtype=np.float64)
    else:
        arr = np.asarray(W, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("need at least W_0 and W_1")
        if not (arr > 0.0).all():
            raise ValueError("all quermassintegrals must be > 0")
        log_W = np.log(arr)
    if not np.isfinite(log_W).all():
        raise ValueError("all quermassintegrals must be positive and finite")
    l = np.arange(len(log_W))
    log_mu = (l - 1) * log_W[0] + log_W - l * log_W[1]
    return np.exp(log_mu)


def closed_form_renormalized(kind: FamilyKind, n: int,
                             cfg: QuadratureConfig = _DEFAULT_QUAD) -> RenormalizedPolynomial:
    """Renormalized coefficients straight from the per-family displayed
    formulas, independent of the intrinsic-volume pipeline.

    Ball:     c_l = binom(n, l) / n^l                       (mu_l = 1)
    Cube:     c_l = j(n,l) (sqrt(pi)/2)^l / (Gamma(l/2+1) l!)
    Cross:    c_l = (sqrt(pi)/2)^l j(n,l)^2 sqrt(n/(n-l+1))
                    * (2 n^((l-1)/2) / Gamma(l/2)) * I(n,l) / l!
    Simplex:  c_l = pi^(l/2) I(n,l) sqrt((n-l+1)/(n+1)) ((n+1)/n)^(l/2)
                    * j(n+1,l) j(n,l) / (Gamma(l/2+1) l!)

    Used as the cross-check oracle against the pipeline route.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {n!r}")
    instance = FamilyInstance(kind=kind, n=n, rho=1.0)
    table = jensen_multipliers(n)
    log_c = np.empty(n + 1)
    log_c[0] = 0.0
    if kind == FamilyKind.BALL:
        for l in range(1, n + 1):
            log_c[l] = _log_binom(n, l) - l * math.log(n)
    elif kind == FamilyKind.CUBE:
        for l in range(1, n + 1):
            log_c[l] = (table.log_value(l) + l * LOG_SQRT_PI_HALF
                        - log_gamma(0.5 * l + 1.0) - _log_factorial(l))
    elif kind == FamilyKind.CROSS_POLYTOPE:
        log_n = math.log(n)
        for l in range(1, n + 1):
            log_i = math.log(i_cross(n, l, cfg).value)
            log_c[l] = (l * LOG_SQRT_PI_HALF
                        + 2.0 * table.log_value(l)
                        + 0.5 * (log_n - math.log(n - l + 1.0))
                        + math.log(2.0) + 0.5 * (l - 1) * log_n - log_gamma(0.5 * l)
                        + log_i - _log_factorial(l))
    elif kind == FamilyKind.SIMPLEX:
        table_up = jensen_multipliers(n + 1)
        log_n = math.log(n)
        log_n1 = math.log(n + 1.0)
        for l in range(1, n + 1):
            log_i = math.log(i_simplex(n, l, cfg).value)
            log_c[l] = (0.5 * l * math.log(math.pi) + log_i
                        + 0.5 * (math.log(n - l + 1.0) - log_n1)
                        + 0.5 * l * (log_n1 - log_n)
                        + table_up.log_value(l) + table.log_value(l)
                        - log_gamma(0.5 * l + 1.0) - _log_factorial(l))
    else:
        raise ValueError(f"unsupported kind {kind!r}")
    log_mu = np.empty(n + 1)
    for l in range(n + 1):
        log_mu[l] = log_c[l] + _log_factorial(l) - table.log_value(l)
    log_c.setflags(write=False)
    log_mu.setflags(write=False)
    return RenormalizedPolynomial(instance=instance, log_c=log_c, log_mu=log_mu)


def evaluate(poly: RenormalizedPolynomial, tau: complex) -> complex:
    """Horner evaluation of MM_K at a complex argument."""
    c = poly.c
    acc = complex(c[-1])
    for l in range(len(c) - 2, -1, -1):
        acc = acc * tau + c[l]
    return acc


@dataclass(frozen=True)
class ConcavityViolation:
    index: int
    check: str  # "positivity" | "upper_bound" | "log_concavity"
    excess: float


@dataclass(frozen=True)
class ConcavityReport:
    n: int
    slack: float
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def check_log_concavity(poly: RenormalizedPolynomial, slack: float = 1e-9) -> ConcavityReport:
    """Check 0 < mu_l <= 1 and mu_l^2 >= mu_{l-1} mu_{l+1} up to relative slack.

    Runs on the log form, so it remains meaningful when the materialized mu
    would underflow.  Returns a report listing each violated index.
    """
    if slack < 0.0:
        raise ValueError(f"slack must be >= 0, got {slack}")
    log_mu = poly.log_mu
    n = poly.n
    bad = []
    up = math.log1p(slack)
    down = math.log1p(-slack) if slack < 1.0 else -math.inf
    for l in range(n + 1):
        if not np.isfinite(log_mu[l]):
            bad.append(ConcavityViolation(l, "positivity", math.inf))
        elif log_mu[l] > up:
            bad.append(ConcavityViolation(l, "upper_bound", float(log_mu[l] - up)))
    for l in range(1, n):
        lhs = 2.0 * log_mu[l]
        rhs = log_mu[l - 1] + log_mu[l + 1] + down
        if not (np.isfinite(lhs) and np.isfinite(rhs)):
            continue  # positivity failure already recorded
        if lhs < rhs:
            bad.append(ConcavityViolation(l, "log_concavity", float(rhs - lhs)))
    return ConcavityReport(n=n, slack=slack, violations=tuple(bad))


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def to_json_dict(poly) -> dict:
    """JSON-ready dict for either polynomial type.

    Numeric entries are decimal strings with 17 significant digits, which
    round-trip doubles exactly; re-serializing a parsed dict reproduces the
    bytes."""
    inst = poly.instance
    if isinstance(poly, MinkowskiPolynomial):
        return {
            "type": "minkowski",
            "kind": inst.kind.value,
            "n": inst.n,
            "rho": _fmt(inst.rho),
            "m": [_fmt(v) for v in poly.m],
        }
    if isinstance(poly, RenormalizedPolynomial):
        return {
            "type": "renormalized",
            "kind": inst.kind.value,
            "n": inst.n,
            "rho": _fmt(inst.rho),
            "c": [_fmt(v) for v in poly.c],
            "mu": [_fmt(v) for v in poly.mu],
        }
    raise TypeError(f"cannot serialize {type(poly)!r}")


def from_json_dict(d: dict):
    """Rebuild a polynomial from its JSON dict."""
    kind = FamilyKind.parse(d["kind"])
    instance = FamilyInstance(kind=kind, n=int(d["n"]), rho=float(d["rho"]))
    if d["type"] == "minkowski":
        m = np.array([float(s) for s in d["m"]])
        if len(m) != instance.n + 1:
            raise ValueError("coefficient count does not match the degree")
        with np.errstate(divide="ignore"):
            log_m = np.log(m)
        log_m.setflags(write=False)
        return MinkowskiPolynomial(instance=instance, log_m=log_m)
    if d["type"] == "renormalized":
        c = np.array([float(s) for s in d["c"]])
        mu = np.array([float(s) for s in d["mu"]])
        if len(c) != instance.n + 1 or len(mu) != instance.n + 1:
            raise ValueError("coefficient count does not match the degree")
        with np.errstate(divide="ignore"):
            log_c = np.log(c)
            log_mu = np.log(mu)
        log_c.setflags(write=False)
        log_mu.setflags(write=False)
        return RenormalizedPolynomial(instance=instance, log_c=log_c, log_mu=log_mu)
    raise ValueError(f"unknown polynomial type {d.get('type')!r}")


def dumps(poly) -> str:
    """Canonical JSON text (stable key order, two-space indent, newline)."""
    return json.dumps(to_json_dict(poly), indent=2) + "\n"


def loads(text: str):
    return from_json_dict(json.loads(text))
