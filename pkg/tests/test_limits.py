"""Limiting entire functions and convergence of renormalized polynomials.

Frozen reference values were computed with mpmath (40 digits) from the
series definitions, and the circle-grid distances for ball and cube from
their closed-form coefficients with direct numpy evaluation.
"""

import cmath
import csv
import io
import math

import numpy as np
import pytest

from steinmink.families import FamilyKind
from steinmink.limits import (
    ConvergenceProfile,
    LimitFunction,
    LimitTag,
    convergence_profile,
    eval_limit,
    limit_for,
    profile_to_csv,
    profile_to_json_dict,
)

# mpmath series oracle, frozen
E2_AT_1 = 2.4943072521618821758
E2_AT_30 = 2830038.2529935045301
E2_AT_2_M3J = complex(-4.0654345710918452203, -6.0891322661790756638)
E2_AT_M5 = -0.037847848423924783969

# closed-form coefficients evaluated on the 256-point unit circle, frozen
BALL_D = {10: 0.124539368359, 40: 0.0332179900691, 100: 0.0134679990375}
CUBE_D = {10: 0.0711373675847, 100: 0.00743429624258}


class TestLimitFunctions:
    def test_kind_mapping(self):
        assert limit_for(FamilyKind.BALL).tag is LimitTag.E1
        assert limit_for(FamilyKind.CROSS_POLYTOPE).tag is LimitTag.E1
        assert limit_for(FamilyKind.CUBE).tag is LimitTag.E2
        assert limit_for(FamilyKind.SIMPLEX).tag is LimitTag.E2

    def test_e1_coefficients(self):
        f = LimitFunction(tag=LimitTag.E1)
        for l in (0, 1, 5, 20):
            assert f.coefficient(l) == pytest.approx(
                1.0 / math.factorial(l), rel=1e-13)

    def test_e2_coefficients(self):
        f = LimitFunction(tag=LimitTag.E2)
        for l in (0, 1, 4, 11):
            expect = ((math.sqrt(math.pi) / 2) ** l
                      / (math.gamma(l / 2.0 + 1) * math.factorial(l)))
            assert f.coefficient(l) == pytest.approx(expect, rel=1e-13)

    def test_coefficients_below_factorial(self):
        for tag in LimitTag:
            f = LimitFunction(tag=tag)
            for l in range(30):
                c = f.coefficient(l)
                assert 0 < c <= (1.0 + 1e-12) / math.factorial(l)


class TestEvalLimit:
    def test_e1_is_exp(self):
        f = LimitFunction(tag=LimitTag.E1)
        for tau in (0.0, 1.0, -3.5, 2 + 1j, -1 - 4j, 30.0):
            assert eval_limit(f, tau) == pytest.approx(cmath.exp(tau), rel=1e-13)

    def test_e2_frozen_values(self):
        f = LimitFunction(tag=LimitTag.E2)
        assert eval_limit(f, 1.0) == pytest.approx(E2_AT_1, rel=1e-14)
        assert eval_limit(f, 30.0) == pytest.approx(E2_AT_30, rel=1e-13)
        assert eval_limit(f, 2 - 3j) == pytest.approx(E2_AT_2_M3J, rel=1e-13)
        assert eval_limit(f, -5.0) == pytest.approx(E2_AT_M5, rel=1e-12)

    def test_exponential_bound(self):
        rng = np.random.default_rng(3)
        for tag in LimitTag:
            f = LimitFunction(tag=tag)
            for _ in range(50):
                tau = complex(rng.normal(), rng.normal()) * 3
                assert abs(eval_limit(f, tau)) <= math.exp(abs(tau)) * (1 + 1e-12)

    def test_tail_tolerance_respected(self):
        f = LimitFunction(tag=LimitTag.E2)
        coarse = eval_limit(f, 4.0, tol=1e-6)
        fine = eval_limit(f, 4.0, tol=1e-15)
        assert abs(coarse - fine) < 1e-5


class TestConvergenceProfile:
    def test_ball_frozen_distances(self):
        prof = convergence_profile(FamilyKind.BALL, (10, 40, 100), radius=1.0)
        for d, n in zip(prof.distances, (10, 40, 100)):
            assert d == pytest.approx(BALL_D[n], rel=1e-9)

    def test_cube_frozen_distances(self):
        prof = convergence_profile(FamilyKind.CUBE, (10, 100), radius=1.0)
        assert prof.distances[0] == pytest.approx(CUBE_D[10], rel=1e-8)
        assert prof.distances[1] == pytest.approx(CUBE_D[100], rel=1e-8)

    def test_distances_shrink(self):
        for kind in (FamilyKind.BALL, FamilyKind.CUBE,
                     FamilyKind.CROSS_POLYTOPE, FamilyKind.SIMPLEX):
            prof = convergence_profile(kind, (8, 16, 32), radius=1.0)
            d = prof.distances
            assert d[0] > d[1] > d[2] > 0, kind

    def test_zero_radius_gives_zero(self):
        # both polynomial and limit equal 1 at the origin
        prof = convergence_profile(FamilyKind.CUBE, (10,), radius=0.0)
        assert prof.distances[0] == 0.0

    def test_larger_radius_larger_distance(self):
        small = convergence_profile(FamilyKind.SIMPLEX, (12,), radius=0.5)
        large = convergence_profile(FamilyKind.SIMPLEX, (12,), radius=2.0)
        assert large.distances[0] > small.distances[0]

    def test_input_validation(self):
        with pytest.raises(ValueError):
            convergence_profile(FamilyKind.BALL, (10, 10), radius=1.0)
        with pytest.raises(ValueError):
            convergence_profile(FamilyKind.BALL, (20, 10), radius=1.0)
        with pytest.raises(ValueError):
            convergence_profile(FamilyKind.BALL, (10,), radius=-1.0)
        with pytest.raises(ValueError):
            convergence_profile(FamilyKind.BALL, (10,), radius=1.0, samples=8)
        with pytest.raises(ValueError):
            convergence_profile(FamilyKind.BALL, (), radius=1.0)

    def test_grid_refinement_stable(self):
        # the sup over the circle is already resolved at the default grid
        a = convergence_profile(FamilyKind.CUBE, (16,), radius=1.0, samples=256)
        b = convergence_profile(FamilyKind.CUBE, (16,), radius=1.0, samples=1024)
        assert a.distances[0] == pytest.approx(b.distances[0], rel=1e-6)


class TestProfileSerialization:
    def make(self):
        return convergence_profile(FamilyKind.BALL, (8, 16), radius=1.0)

    def test_json_shape(self):
        d = profile_to_json_dict(self.make())
        assert d["kind"] == "ball"
        assert d["dims"] == [8, 16]
        assert len(d["distances"]) == 2
        assert isinstance(d["distances"][0], str)

    def test_csv_roundtrip(self):
        text = profile_to_csv(self.make())
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["n", "d_n"]
        assert [int(r[0]) for r in rows[1:]] == [8, 16]
        prof = self.make()
        for row, d in zip(rows[1:], prof.distances):
            assert float(row[1]) == pytest.approx(d, rel=1e-15)
