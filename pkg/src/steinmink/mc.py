"""Monte Carlo validation of tube volumes against the assembled polynomials.

Hit-or-miss estimation of Vol_n(K + t B^n): sample a box that contains the
t-neighborhood, count points whose Euclidean distance to K is at most t, and
scale the hit fraction by the box volume.  The estimate is unbiased and its
standard error is box_volume * sqrt(p (1-p) / samples).

Reproducibility: sampling is split into fixed-size chunks, and chunk k draws
from an independent counter-based substream keyed by (seed, k).  Hit counts
are integers accumulated in chunk order, so the estimate is bit-identical
for any thread count (set STEINMINK_THREADS to parallelize across chunks).

The simplex is n-dimensional but lives in the hyperplane {sum xi = rho} of
R^(n+1); sampling happens in orthonormal hyperplane coordinates centered at
the centroid, where the t-neighborhood within the hyperplane is exactly the
set at Euclidean distance <= t from the body.

Hit-or-miss is restricted to n <= 6: hit rates decay exponentially with
dimension, making the estimator uninformative beyond that.
"""

from __future__ import annotations

import io
import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .families import FamilyInstance, FamilyKind
from .polynomials import minkowski_polynomial

__all__ = [
    "McConfig",
    "McEstimate",
    "ValidationRow",
    "ValidationTable",
    "MAX_MC_DIMENSION",
    "distance_to_body",
    "simplex_embedding",
    "estimate_tube_volume",
    "validate_family",
    "table_to_csv",
    "table_to_json_dict",
]

MAX_MC_DIMENSION = 6
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class McConfig:
    samples: int = 1_000_000
    seed: int = 0
    chunk_size: int = 131072

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.chunk_size < 1:
            raise ValueError(f"chunk_size must be >= 1, got {self.chunk_size}")
        if not (-(2**63) <= self.seed < 2**64):
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    ci95_low: float
    ci95_high: float
    samples_used: int


@lru_cache(maxsize=64)
def _helmert_basis(n: int) -> np.ndarray:
    """Orthonormal basis (rows) of the hyperplane direction {sum x = 0} in
    R^(n+1): row k is (1,...,1, -(k+1), 0,...,0) / sqrt((k+1)(k+2))."""
    basis = np.zeros((n, n + 1))
    for k in range(1, n + 1):
        basis[k - 1, :k] = 1.0
        basis[k - 1, k] = -float(k)
        basis[k - 1] /= math.sqrt(k * (k + 1))
    basis.setflags(write=False)
    return basis


def simplex_embedding(n: int, rho: float):
    """Map from hyperplane coordinates y in R^n to points a + y @ basis of
    the hyperplane {sum xi = rho} in R^(n+1); a is the simplex centroid.
    Returns (basis, anchor)."""
    anchor = np.full(n + 1, rho / (n + 1))
    anchor.setflags(write=False)
    return _helmert_basis(n), anchor


def _distances(kind: FamilyKind, n: int, rho: float, points: np.ndarray) -> np.ndarray:
    if kind == FamilyKind.BALL:
        return _kernels.distances_ball(points, rho)
    if kind == FamilyKind.CUBE:
        return _kernels.distances_cube(points, rho)
    if kind == FamilyKind.CROSS_POLYTOPE:
        return _kernels.distances_cross(points, rho)
    basis, anchor = simplex_embedding(n, rho)
    embedded = anchor + points @ basis
    return _kernels.distances_simplex(embedded, rho)


def distance_to_body(kind: FamilyKind, n: int, rho: float, point) -> float:
    """Exact Euclidean distance from a point to the body (0 inside).

    Ball: max(0, |x| - rho).  Cube: distance to [-rho, rho]^n.  Cross: sort
    based soft-threshold projection onto the l1-ball.  Simplex: the point is
    given in the n-dimensional hyperplane coordinates of simplex_embedding,
    and the distance is to the simplex within its hyperplane.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if rho <= 0.0:
        raise ValueError(f"rho must be > 0, got {rho}")
    arr = np.asarray(point, dtype=np.float64)
    if arr.shape != (n,):
        raise ValueError(f"point must have shape ({n},), got {arr.shape}")
    return float(_distances(kind, n, rho, arr[None, :])[0])


def _box_halfwidth(instance: FamilyInstance, t: float) -> float:
    """Half-width of the sampling box [-h, h]^n (hyperplane coordinates for
    the simplex, whose circumradius is rho sqrt(n/(n+1)))."""
    n, rho = instance.n, instance.rho
    if instance.kind == FamilyKind.SIMPLEX:
        return rho * math.sqrt(n / (n + 1.0)) + t
    return rho + t


def _chunk_hits(instance: FamilyInstance, t: float, half: float,
                seed: int, index: int, count: int) -> int:
    key = np.array([np.uint64(seed & 0xFFFFFFFFFFFFFFFF), np.uint64(index)])
    rng = np.random.Generator(np.random.Philox(key=key))
    points = (2.0 * rng.random((count, instance.n)) - 1.0) * half
    dist = _distances(instance.kind, instance.n, instance.rho, points)
    return int(np.count_nonzero(dist <= t))


def _thread_count() -> int:
    raw = os.environ.get("STEINMINK_THREADS", "1")
    try:
        threads = int(raw)
    except ValueError:
        raise ValueError(f"STEINMINK_THREADS must be an integer, got {raw!r}")
    if threads < 1:
        raise ValueError(f"STEINMINK_THREADS must be >= 1, got {threads}")
    return threads


def estimate_tube_volume(instance: FamilyInstance, t: float,
                         cfg: McConfig = McConfig()) -> McEstimate:
    """Hit-or-miss estimate of Vol_n(K + t B^n); deterministic in (cfg,
    instance, t) regardless of STEINMINK_THREADS."""
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    if instance.n > MAX_MC_DIMENSION:
        raise ValueError(
            f"hit-or-miss validation is restricted to n <= {MAX_MC_DIMENSION}, "
            f"got n = {instance.n}")
    half = _box_halfwidth(instance, t)
    box_volume = (2.0 * half) ** instance.n
    sizes = [cfg.chunk_size] * (cfg.samples // cfg.chunk_size)
    if cfg.samples % cfg.chunk_size:
        sizes.append(cfg.samples % cfg.chunk_size)
    threads = _thread_count()

    def work(args):
        index, count = args
        return _chunk_hits(instance, t, half, cfg.seed, index, count)

    jobs = list(enumerate(sizes))
    if threads == 1 or len(jobs) == 1:
        counts = [work(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(work, jobs))
    hits = sum(counts)
    p = hits / cfg.samples
    value = box_volume * p
    std_error = box_volume * math.sqrt(p * (1.0 - p) / cfg.samples)
    return McEstimate(
        value=value,
        std_error=std_error,
        ci95_low=value - _Z95 * std_error,
        ci95_high=value + _Z95 * std_error,
        samples_used=cfg.samples,
    )


@dataclass(frozen=True)
class ValidationRow:
    t: float
    poly_value: float
    estimate: McEstimate
    z: float
    flagged: bool


@dataclass(frozen=True)
class ValidationTable:
    instance: FamilyInstance
    rows: tuple
    threshold: float
    passed: bool


def _poly_value(instance: FamilyInstance, t: float) -> float:
    m = minkowski_polynomial(instance).m
    acc = 0.0
    for coeff in m[::-1]:
        acc = acc * t + coeff
    return acc


def validate_family(instance: FamilyInstance, t_grid, cfg: McConfig = McConfig(),
                    threshold: float = 4.0) -> ValidationTable:
    """Compare the assembled polynomial with the MC oracle on a t grid.

    Each row carries the z-score (mc - poly) / std_error; rows with
    |z| > threshold are flagged and fail the table.
    """
    t_grid = [float(t) for t in t_grid]
    if not t_grid:
        raise ValueError("t_grid must be non-empty")
    if any(t < 0.0 for t in t_grid):
        raise ValueError(f"all t must be >= 0, got {t_grid}")
    if threshold <= 0.0:
        raise ValueError(f"threshold must be > 0, got {threshold}")
    rows = []
    for t in t_grid:
        est = estimate_tube_volume(instance, t, cfg)
        poly = _poly_value(instance, t)
        diff = est.value - poly
        if est.std_error > 0.0:
            z = diff / est.std_error
        else:
            z = 0.0 if diff == 0.0 else math.inf
        rows.append(ValidationRow(t=t, poly_value=poly, estimate=est, z=z,
                                  flagged=not abs(z) <= threshold))
    return ValidationTable(
        instance=instance,
        rows=tuple(rows),
        threshold=threshold,
        passed=all(not row.flagged for row in rows),
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def table_to_csv(table: ValidationTable) -> str:
    """Columns t, poly, mc, stderr, z with RFC-4180 quoting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "poly", "mc", "stderr", "z"])
    for row in table.rows:
        writer.writerow([_fmt(row.t), _fmt(row.poly_value),
                         _fmt(row.estimate.value), _fmt(row.estimate.std_error),
                         _fmt(row.z)])
    return buf.getvalue()


def table_to_json_dict(table: ValidationTable) -> dict:
    return {
        "kind": table.instance.kind.value,
        "n": table.instance.n,
        "rho": _fmt(table.instance.rho),
        "threshold": _fmt(table.threshold),
        "passed": table.passed,
        "rows": [
            {
                "t": _fmt(row.t),
                "poly": _fmt(row.poly_value),
                "mc": _fmt(row.estimate.value),
                "stderr": _fmt(row.estimate.std_error),
                "ci95_low": _fmt(row.estimate.ci95_low),
                "ci95_high": _fmt(row.estimate.ci95_high),
                "samples_used": row.estimate.samples_used,
                "z": _fmt(row.z),
                "flagged": row.flagged,
            }
            for row in table.rows
        ],
    }
