"""Zero location experiments for renormalized polynomials.

The solver is Aberth-Ehrlich simultaneous iteration on the scaled variable
u = tau / n (factorially decaying coefficients condition badly in tau), with
initial guesses on Newton-polygon rings.  Evaluation for polishing and
residual certificates uses a compensated Horner with a double-double
accumulator, giving roughly twice working precision.

Multiple roots need special care: an m-fold root seen through coefficients
rounded to relative eps splits into a ring of radius about eps^(1/m), which
no amount of iteration precision can undo.  When the derivative magnitude at
a converged root is suspiciously small, the solver switches to a derivative
chain: it factors p' recursively, keeps those roots of p' at which p itself
vanishes to coefficient noise (multiplicity there is one higher), and finds
the remaining simple roots with the known roots held fixed in the Aberth
repulsion term.  The chain bottoms out in linear and quadratic closed forms,
which recover an m-fold root to full double accuracy.  For a ball polynomial
(1 + u)^n this reports the single root -1 with multiplicity n.

Residuals are reported for the scaled, max-normalized coefficient vector b:
residual_k = |p_b(u_k)| with local scale sum |b_l| |u_k|^l.  These ratios
are invariant under the scaling, so certificates transfer to tau space.

A residual certificate is a backward-error statement: the reported points
are exact roots of a polynomial whose coefficients differ relatively by at
most residual_tol.  These polynomials can be Wilkinson-ill-conditioned, so
a certified root set may still misdescribe the true root locations; by
dimension 25 the double-rounded cube polynomial grows complex conjugate
pairs even though the exact polynomial is real-rooted.  find_roots therefore
also bounds the forward error of every root, and when the real-vs-complex
classification hangs on roots whose imaginary part is below that bound, it
escalates: coefficients are rebuilt in arbitrary precision from the exact
family formulas (angle integrals by adaptive quadrature at working
precision) and the roots are recomputed there.  The escalation resolves the
ambiguity or raises; it never silently reports an unconfirmable location.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .families import FamilyKind
from .polynomials import RenormalizedPolynomial

__all__ = [
    "RootConfig",
    "RootSet",
    "ZeroLocationReport",
    "RootFindingError",
    "find_roots",
    "classify_zeros",
    "rootset_to_json_dict",
]


@dataclass(frozen=True)
class RootConfig:
    """Tolerances for the root finder.

    residual_tol and mult_tol are relative to the local coefficient scale
    sum |b_l| |u|^l; flag_tol is the relative derivative magnitude below
    which a converged root is suspected of being multiple.
    """

    residual_tol: float = 1e-10
    max_iter: int = 400
    newton_tol: float = 1e-14
    mult_tol: float = 1e-10
    flag_tol: float = 1e-6
    imag_tol: float = 1e-8

    def __post_init__(self) -> None:
        for name in ("residual_tol", "newton_tol", "mult_tol", "flag_tol",
                     "imag_tol"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass(frozen=True)
class RootSet:
    """All roots of one polynomial, repeated according to multiplicity.

    roots are in the original tau variable.  residuals and local_scales
    refer to the scaled normalized polynomial (see module docstring);
    error_estimates are rough per-root forward errors in tau units.
    """

    roots: np.ndarray = field(repr=False)
    residuals: np.ndarray = field(repr=False)
    local_scales: np.ndarray = field(repr=False)
    error_estimates: np.ndarray = field(repr=False)
    multiplicities: np.ndarray = field(repr=False)
    scale: float
    precision_used: str


@dataclass(frozen=True)
class ZeroLocationReport:
    all_negative_real: bool
    all_left_half_plane: bool
    max_real_part: float
    max_abs_imag_among_roots: float


class RootFindingError(Exception):
    """Raised when residual certificates cannot be met.  Carries the best
    iterate and its residuals for diagnosis."""

    def __init__(self, message: str, best: np.ndarray, residuals: np.ndarray):
        super().__init__(message)
        self.best = best
        self.residuals = residuals


def _newton_polygon_rings(b: np.ndarray):
    """Rings (radius, count) from the upper convex hull of (l, log|b_l|).

    Each hull edge from (k0, h0) to (k1, h1) contributes k1 - k0 roots of
    magnitude about exp((h0 - h1)/(k1 - k0)); coefficient-bound circles fail
    badly when root magnitudes span decades, the polygon does not.
    """
    pts = [(l, math.log(abs(v))) for l, v in enumerate(b) if v != 0.0]
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (xa, ya), (xb, yb) = hull[-2], hull[-1]
            if (xb - xa) * (p[1] - yb) - (yb - ya) * (p[0] - xb) >= 0.0:
                hull.pop()  # middle point on or below the chord
            else:
                break
        hull.append(p)
    rings = []
    for (k0, h0), (k1, h1) in zip(hull, hull[1:]):
        rings.append((math.exp((h0 - h1) / (k1 - k0)), k1 - k0))
    return rings


def _initial_guesses(b: np.ndarray, count: int) -> np.ndarray:
    """`count` starting points spread over the Newton-polygon rings, with
    per-ring angular offsets that avoid real-axis and cross-ring alignment."""
    rings = _newton_polygon_rings(b)
    out = np.empty(count, dtype=np.complex128)
    pos = 0
    for i, (radius, m) in enumerate(rings):
        m = min(m, count - pos)
        if m <= 0:
            break
        ang = 2.0 * math.pi * (np.arange(m) + 0.371954) / m + 0.4 * i
        out[pos:pos + m] = radius * np.exp(1j * ang)
        pos += m
    if pos < count:  # fewer ring slots than requested (fixed roots held out)
        radius = rings[-1][0] if rings else 1.0
        ang = 2.0 * math.pi * (np.arange(count - pos) + 0.19) / (count - pos)
        out[pos:] = 1.18 * radius * np.exp(1j * ang)
    return out


def _polish(b: np.ndarray, z: np.ndarray, steps: int = 3):
    """Compensated Newton steps; returns refined z plus final evaluations."""
    for _ in range(steps):
        p, dp, sp, sdp = _kernels.horner_dd(b, z)
        ok = dp != 0.0
        step = np.where(ok, p / np.where(ok, dp, 1.0), 0.0)
        z = z - step
    p, dp, sp, sdp = _kernels.horner_dd(b, z)
    return z, p, dp, sp, sdp


def _solve_quadratic(b: np.ndarray, mult_tol: float):
    b0, b1, b2 = float(b[0]), float(b[1]), float(b[2])
    disc = b1 * b1 - 4.0 * b2 * b0
    if abs(disc) <= mult_tol * (b1 * b1 + 4.0 * abs(b2 * b0)):
        return [complex(-b1 / (2.0 * b2))], [2]
    sq = cmath.sqrt(complex(disc))
    if b1 >= 0.0:
        q = -0.5 * (b1 + sq)
    else:
        q = -0.5 * (b1 - sq)
    if q == 0.0:  # b1 == 0 and b0 == 0
        return [0.0j, 0.0j], [1, 1]
    r1 = q / b2
    r2 = b0 / q
    return [complex(r1), complex(r2)], [1, 1]


def _aberth(b: np.ndarray, cfg: RootConfig, fixed, fixed_mult, count: int) -> np.ndarray:
    z0 = _initial_guesses(b, count)
    fixed_arr = np.asarray(fixed, dtype=np.complex128)
    mult_arr = np.asarray(fixed_mult, dtype=np.float64)
    z, _, _ = _kernels.aberth_iterate(
        np.asarray(b, dtype=np.float64), z0, fixed_arr, mult_arr,
        cfg.max_iter, cfg.newton_tol,
    )
    return z


def _derivative(b: np.ndarray) -> np.ndarray:
    db = b[1:] * np.arange(1, len(b))
    return db / np.max(np.abs(db))


def _has_collision(z: np.ndarray) -> bool:
    """Two iterates landing on one point means a missed root elsewhere."""
    if len(z) < 2:
        return False
    diff = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(diff, np.inf)
    limit = 1e-8 * (1.0 + np.abs(z))
    return bool(np.any(diff <= np.minimum(limit[:, None], limit[None, :])))


_CONFIDENCE = 4.0
_DPS_LADDER = (40, 80, 160)


def _forward_errors(b: np.ndarray, roots: np.ndarray, mults, eps_c: float) -> np.ndarray:
    """Per-root forward error bound (eps_c S + |p|) / |p'|, where eps_c is
    the relative uncertainty of the double coefficients and S the local
    coefficient scale.  A multiplicity-m root is located by the chain as a
    simple root of the (m-1)-th derivative, so its bound is computed there.
    """
    fwd = np.empty(len(roots))
    for i, (r, m) in enumerate(zip(roots, mults)):
        q = b
        for _ in range(m - 1):
            q = _derivative(q)
        p, dp, sp, _ = _kernels.horner_dd(q, np.array([r], dtype=np.complex128))
        fwd[i] = (eps_c * sp[0] + abs(p[0])) / max(abs(dp[0]), 1e-300)
    return fwd


def _needs_escalation(roots: np.ndarray, fwd: np.ndarray, imag_tol: float) -> bool:
    """True when the location report would rest on unconfirmable roots.

    A complex-classified root is confident when |imag| clears its forward
    error by the confidence factor.  Escalate when complex claims exist but
    none is confident (the whole reality verdict could be rounding debris,
    the cube case), or when some real part cannot be signed.
    """
    im = np.abs(roots.imag)
    pred = imag_tol * (1.0 + np.abs(roots))
    is_complex = im > pred
    confident = is_complex & (im > _CONFIDENCE * fwd)
    ambiguous = is_complex & ~confident
    sign_ambiguous = np.abs(roots.real) <= _CONFIDENCE * fwd
    return bool((ambiguous.any() and not confident.any()) or sign_ambiguous.any())


_MP_COEFF_CACHE: dict = {}
_MP_LANE_CACHE: dict = {}


def _mp_coefficients(instance, dps: int):
    """Scaled u-variable coefficients b_l = c_l n^l in arbitrary precision,
    max-normalized, from the exact family formulas (the renormalized
    coefficients do not depend on rho, so rho = 1 throughout)."""
    import mpmath as mp

    key = (instance.kind, instance.n, dps)
    if key in _MP_COEFF_CACHE:
        return _MP_COEFF_CACHE[key]
    n = instance.n
    kind = instance.kind
    with mp.workdps(dps):
        if kind == FamilyKind.BALL:
            b = [mp.binomial(n, l) for l in range(n + 1)]
        elif kind == FamilyKind.CUBE:
            b = [mp.binomial(n, l) * mp.pi ** (mp.mpf(l) / 2)
                 / mp.gamma(mp.mpf(l) / 2 + 1) / mp.mpf(2) ** l
                 for l in range(n + 1)]
        else:
            sqrt_pi = mp.sqrt(mp.pi)

            def intrinsic(r):
                if kind == FamilyKind.CROSS_POLYTOPE:
                    if r == n:
                        return mp.mpf(2) ** n / mp.factorial(n)
                    count = mp.mpf(2) ** (r + 1) * mp.binomial(n, r + 1)
                    power = n - r - 1
                else:
                    count = mp.binomial(n + 1, r + 1)
                    power = n - r
                volume = mp.sqrt(mp.mpf(r + 1)) / mp.factorial(r)
                if power == 0:
                    angle = mp.mpf(1) if kind == FamilyKind.SIMPLEX else mp.mpf(1) / 2
                else:
                    scale = mp.sqrt(mp.mpf(r + 1))
                    if kind == FamilyKind.CROSS_POLYTOPE:
                        angle = mp.quad(
                            lambda x: mp.exp(-x * x) * mp.erf(x / scale) ** power,
                            [0, mp.inf]) / sqrt_pi
                    else:
                        angle = mp.quad(
                            lambda x: mp.exp(-x * x)
                            * ((1 + mp.erf(x / scale)) / 2) ** power,
                            [-mp.inf, mp.inf]) / sqrt_pi
                return count * volume * angle

            volumes = [intrinsic(r) for r in range(n + 1)]
            kappa = [mp.pi ** (mp.mpf(l) / 2) / mp.gamma(mp.mpf(l) / 2 + 1)
                     for l in range(n + 1)]
            m = [kappa[l] * volumes[n - l] for l in range(n + 1)]
            sigma = m[1] / m[0]
            b = [m[l] / (m[0] * sigma ** l) * mp.mpf(n) ** l
                 for l in range(n + 1)]
        peak = max(abs(v) for v in b)
        out = [v / peak for v in b]
    _MP_COEFF_CACHE[key] = out
    return out


def _mp_lane(instance, cfg: RootConfig):
    """Recompute all roots from exact-formula coefficients in arbitrary
    precision, raising the working precision until every complex claim is
    confident.  Returns (roots, forward errors, dps used)."""
    import mpmath as mp

    key = (instance.kind, instance.n, cfg.imag_tol)
    if key in _MP_LANE_CACHE:
        return _MP_LANE_CACHE[key]
    last = None
    for dps in _DPS_LADDER:
        b = _mp_coefficients(instance, dps)
        with mp.workdps(dps):
            desc = list(reversed(b))
            try:
                roots = mp.polyroots(desc, maxsteps=100 + 20 * instance.n,
                                     extraprec=3 * dps)
            except Exception as exc:  # mpmath NoConvergence has no stable home
                if type(exc).__name__ == "NoConvergence":
                    continue
                raise
            d = len(b) - 1
            ddesc = [c * (d - i) for i, c in enumerate(desc[:-1])]
            eps_mp = mp.mpf(10) ** (1 - dps)
            out = np.empty(d, dtype=np.complex128)
            fwd = np.empty(d)
            decisive = True
            for i, r in enumerate(roots):
                p_val = mp.polyval(desc, r)
                dp_val = mp.polyval(ddesc, r)
                scale = mp.fsum(abs(c) * abs(r) ** l for l, c in enumerate(b))
                bound = (eps_mp * scale + abs(p_val)) / max(abs(dp_val),
                                                            mp.mpf(10) ** -9999)
                im = abs(mp.im(r))
                pred = cfg.imag_tol * (1 + abs(r))
                if pred < im <= _CONFIDENCE * bound:
                    decisive = False
                if 0 < abs(mp.re(r)) <= _CONFIDENCE * bound:
                    decisive = False
                out[i] = complex(r)
                fwd[i] = float(bound)
            last = (out, fwd, dps)
            if decisive:
                _MP_LANE_CACHE[key] = last
                return last
    if last is not None:  # converged but ambiguous at the highest rung
        _MP_LANE_CACHE[key] = last
        return last
    raise RootFindingError(
        "arbitrary-precision root refinement did not converge at any rung "
        f"of the precision ladder {_DPS_LADDER}",
        best=np.empty(0, dtype=np.complex128), residuals=np.empty(0))


def _mp_verify_multiples(instance, roots, mults, dps: int = 40):
    """Check every multiplicity claim against the exact coefficients.

    Float64 data cannot distinguish a genuine m-fold root from a tight
    cluster of simple roots on an ill-conditioned polynomial: the derivative
    chain claims a multiple root in both situations.  In exact arithmetic
    the two separate cleanly, so each claimed m-fold root is refined by
    Newton on the (m-1)-th derivative of the exact polynomial and accepted
    only when all lower derivatives vanish there to working precision while
    the m-th does not.  Returns the refined distinct roots, or None when any
    claim fails (the claimed structure was conditioning debris).
    """
    import mpmath as mp

    b = _mp_coefficients(instance, dps)
    refined = np.asarray(roots, dtype=np.complex128).copy()
    with mp.workdps(dps):
        tol = mp.mpf(10) ** (10 - dps)
        derivs = [b]
        for _ in range(max(mults)):
            prev = derivs[-1]
            if len(prev) < 2:
                break
            nxt = [prev[l] * l for l in range(1, len(prev))]
            peak = max(abs(c) for c in nxt)
            derivs.append([c / peak for c in nxt])

        def eval_at(coeffs, x):
            val = mp.polyval(list(reversed(coeffs)), x)
            scale = mp.fsum(abs(c) * abs(x) ** l for l, c in enumerate(coeffs))
            return val, scale

        for i, (w, m) in enumerate(zip(roots, mults)):
            if m == 1:
                continue
            if m >= len(derivs):
                return None
            q = derivs[m - 1]
            qd = [q[l] * l for l in range(1, len(q))]
            try:
                star = mp.findroot(
                    lambda x: mp.polyval(list(reversed(q)), x),
                    mp.mpc(complex(w)),
                    df=lambda x: mp.polyval(list(reversed(qd)), x))
            except (ValueError, ZeroDivisionError, ArithmeticError):
                return None
            if abs(star - w) > 0.5 * (1 + abs(w)):
                return None  # refinement wandered; claim was not anchored
            for j in range(m - 1):
                val, scale = eval_at(derivs[j], star)
                if abs(val) > tol * scale:
                    return None
            val, scale = eval_at(derivs[m], star)
            if abs(val) <= tol * scale:
                return None  # order higher than claimed; structure untrusted
            refined[i] = complex(star)
    return refined


def _mult_chain(b: np.ndarray, cfg: RootConfig):
    """Distinct roots with multiplicities via recursive factoring of p'."""
    d = len(b) - 1
    if d == 1:
        return [complex(-b[0] / b[1])], [1]
    if d == 2:
        return _solve_quadratic(b, cfg.mult_tol)
    wr, wm = _mult_chain(_derivative(b), cfg)
    w_arr = np.asarray(wr, dtype=np.complex128)
    p, dp, sp, sdp = _kernels.horner_dd(b, w_arr)
    cand_roots = []
    cand_mults = []
    for i in range(len(wr)):
        if abs(p[i]) <= cfg.mult_tol * sp[i]:
            cand_roots.append(wr[i])
            cand_mults.append(wm[i] + 1)
    total = sum(cand_mults)
    if total > d:
        # inconsistent candidate set; fall back to treating all roots simple
        z = _aberth(b, cfg, (), (), d)
        z, _, _, _, _ = _polish(b, z)
        return [complex(v) for v in z], [1] * d
    free = d - total
    roots = list(cand_roots)
    mults = list(cand_mults)
    if free > 0:
        z = _aberth(b, cfg, cand_roots, cand_mults, free)
        z, _, _, _, _ = _polish(b, z)
        roots.extend(complex(v) for v in z)
        mults.extend([1] * free)
    return roots, mults


def find_roots(poly: RenormalizedPolynomial, cfg: RootConfig = RootConfig()) -> RootSet:
    """Locate all zeros of the renormalized polynomial, with certificates.

    Raises RootFindingError when any residual fails its certificate, and
    ValueError for degree-0 input.
    """
    n = poly.n
    if n < 1:
        raise ValueError("degree-0 polynomial has no roots to find")
    s = float(n)
    log_s = math.log(s)
    l = np.arange(n + 1)
    log_b = poly.log_c + l * log_s
    log_b = log_b - np.max(log_b)
    b = np.exp(log_b)
    notes = [f"scaled variable u = tau/{s:g}, coefficients max-normalized"]
    d = n
    while d > 0 and b[d] == 0.0:
        d -= 1
    if d == 0:
        raise ValueError("all non-constant coefficients underflowed; degree too large")
    if d < n:
        notes.append(f"degree reduced to {d}: trailing coefficients underflow doubles")
        b = b[: d + 1]

    if d == 1:
        distinct = [complex(-b[0] / b[1])]
        mults = [1]
        notes.append("linear closed form")
    elif d == 2:
        distinct, mults = _solve_quadratic(b, cfg.mult_tol)
        notes.append("quadratic closed form")
    else:
        z = _aberth(b, cfg, (), (), d)
        z, p, dp, sp, sdp = _polish(b, z)
        notes.append(f"float64 Aberth-Ehrlich (max {cfg.max_iter} sweeps) + "
                     "compensated double-double Newton polish")
        flagged = bool(np.any(np.abs(dp) <= cfg.flag_tol * sdp)) or _has_collision(z)
        if flagged:
            distinct, mults = _mult_chain(b, cfg)
            notes.append("derivative-chain multiplicity analysis (suspected multiple roots)")
        else:
            distinct = [complex(v) for v in z]
            mults = [1] * d

    w_arr = np.asarray(distinct, dtype=np.complex128)
    eps_c = 1e-15 * (1.0 + float(np.max(np.abs(log_b[np.isfinite(log_b)]))))
    err = _forward_errors(b, w_arr, mults, eps_c)
    if any(m > 1 for m in mults) and d > 2:
        refined = _mp_verify_multiples(poly.instance, w_arr, mults)
        if refined is None:
            w_arr, err, dps = _mp_lane(poly.instance, cfg)
            mults = [1] * len(w_arr)
            notes.append("multiplicity claims failed exact-coefficient "
                         "verification; roots recomputed in arbitrary "
                         f"precision (dps={dps})")
        else:
            w_arr = refined
            err = _forward_errors(b, w_arr, mults, eps_c)
            notes.append("multiplicity claims verified and refined against "
                         "exact coefficients")
    elif (np.all(np.asarray(mults) == 1)
            and _needs_escalation(w_arr, err, cfg.imag_tol)):
        w_arr, err, dps = _mp_lane(poly.instance, cfg)
        mults = [1] * len(w_arr)
        notes.append(f"forward-error ambiguity: roots recomputed from exact "
                     f"coefficients in arbitrary precision (dps={dps})")

    p, dp, sp, sdp = _kernels.horner_dd(b, w_arr)
    res = np.abs(p)
    scales = np.asarray(sp, dtype=np.float64)
    bad = res > cfg.residual_tol * scales
    if bad.any():
        worst = float(np.max(res[bad] / scales[bad]))
        raise RootFindingError(
            f"residual certificate failed for {int(bad.sum())} root(s); worst "
            f"relative residual {worst:.3e} exceeds residual_tol={cfg.residual_tol:g}",
            best=w_arr * s,
            residuals=res,
        )

    order = np.lexsort((w_arr.imag, w_arr.real))
    roots_out = []
    res_out = []
    scale_out = []
    err_out = []
    mult_out = []
    for i in order:
        for _ in range(mults[i]):
            roots_out.append(w_arr[i] * s)
            res_out.append(res[i])
            scale_out.append(scales[i])
            err_out.append(err[i] * s)
            mult_out.append(mults[i])

    def _freeze(arr, dtype):
        out = np.asarray(arr, dtype=dtype)
        out.setflags(write=False)
        return out

    return RootSet(
        roots=_freeze(roots_out, np.complex128),
        residuals=_freeze(res_out, np.float64),
        local_scales=_freeze(scale_out, np.float64),
        error_estimates=_freeze(err_out, np.float64),
        multiplicities=_freeze(mult_out, np.int64),
        scale=s,
        precision_used="; ".join(notes),
    )


def classify_zeros(rs: RootSet, imag_tol: float = 1e-8) -> ZeroLocationReport:
    """Classify root locations for the two open-problem predicates.

    A root counts as real when |imag| <= imag_tol * (1 + |root|), which
    separates genuine complex pairs from conjugate numerical jitter.
    """
    if imag_tol < 0.0:
        raise ValueError(f"imag_tol must be >= 0, got {imag_tol}")
    roots = rs.roots
    if len(roots) == 0:
        return ZeroLocationReport(True, True, -math.inf, 0.0)
    near_real = np.abs(roots.imag) <= imag_tol * (1.0 + np.abs(roots))
    negative = roots.real < 0.0
    return ZeroLocationReport(
        all_negative_real=bool(np.all(near_real & negative)),
        all_left_half_plane=bool(np.all(negative)),
        max_real_part=float(np.max(roots.real)),
        max_abs_imag_among_roots=float(np.max(np.abs(roots.imag))),
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def rootset_to_json_dict(rs: RootSet, report: ZeroLocationReport | None = None) -> dict:
    """JSON-ready dict: roots as [re, im] decimal-string pairs plus
    residual data and, optionally, the classification report."""
    out = {
        "roots": [[_fmt(z.real), _fmt(z.imag)] for z in rs.roots],
        "residuals": [_fmt(v) for v in rs.residuals],
        "local_scales": [_fmt(v) for v in rs.local_scales],
        "multiplicities": [int(m) for m in rs.multiplicities],
        "scale": _fmt(rs.scale),
        "precision_used": rs.precision_used,
    }
    if report is not None:
        out["classification"] = {
            "all_negative_real": report.all_negative_real,
            "all_left_half_plane": report.all_left_half_plane,
            "max_real_part": _fmt(report.max_real_part),
            "max_abs_imag_among_roots": _fmt(report.max_abs_imag_among_roots),
        }
    return out
