"""Face combinatorics, intrinsic volumes and shape factors of the four bodies.

Oracles: textbook face counts and volumes of the square, cube, octahedron
and tetrahedron; exact closed forms for ball and cube intrinsic volumes;
dihedral-angle closed forms for the 3-polytope mean widths; and the Euler
relation as a combinatorial cross-check.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steinmink.families import (
    FamilyInstance,
    FamilyKind,
    external_angle,
    face_count,
    face_volume,
    intrinsic_volumes,
    log_shape_factor,
    shape_factor,
)
from steinmink.polynomials import minkowski_polynomial
from steinmink.specfun import unit_ball_volume

POLYTOPES = [FamilyKind.CUBE, FamilyKind.CROSS_POLYTOPE, FamilyKind.SIMPLEX]


class TestKindAndInstance:
    def test_parse_variants(self):
        assert FamilyKind.parse("ball") is FamilyKind.BALL
        assert FamilyKind.parse("Ball") is FamilyKind.BALL
        assert FamilyKind.parse("CUBE") is FamilyKind.CUBE
        for s in ("crosspolytope", "cross-polytope", "cross_polytope"):
            assert FamilyKind.parse(s) is FamilyKind.CROSS_POLYTOPE
        assert FamilyKind.parse("simplex") is FamilyKind.SIMPLEX

    def test_parse_rejects_unknown(self):
        with pytest.raises(ValueError):
            FamilyKind.parse("dodecahedron")

    def test_instance_validation(self):
        with pytest.raises(ValueError):
            FamilyInstance(kind=FamilyKind.BALL, n=0, rho=1.0)
        with pytest.raises(ValueError):
            FamilyInstance(kind=FamilyKind.BALL, n=3, rho=0.0)
        with pytest.raises(ValueError):
            FamilyInstance(kind=FamilyKind.BALL, n=3, rho=-1.0)


class TestFaceCombinatorics:
    def test_textbook_3d_counts(self):
        assert [face_count(FamilyKind.CUBE, 3, l) for l in range(4)] == [8, 12, 6, 1]
        assert [face_count(FamilyKind.CROSS_POLYTOPE, 3, l) for l in range(4)] == [6, 12, 8, 1]
        assert [face_count(FamilyKind.SIMPLEX, 3, l) for l in range(4)] == [4, 6, 4, 1]

    def test_2d_counts(self):
        assert [face_count(FamilyKind.CUBE, 2, l) for l in range(3)] == [4, 4, 1]
        assert [face_count(FamilyKind.CROSS_POLYTOPE, 2, l) for l in range(3)] == [4, 4, 1]
        assert [face_count(FamilyKind.SIMPLEX, 2, l) for l in range(3)] == [3, 3, 1]

    def test_closed_forms(self):
        for n in (1, 2, 4, 9, 16):
            for l in range(n + 1):
                assert face_count(FamilyKind.CUBE, n, l) == \
                    math.comb(n, l) * 2 ** (n - l)
                assert face_count(FamilyKind.SIMPLEX, n, l) == \
                    math.comb(n + 1, l + 1)
            for l in range(n):
                assert face_count(FamilyKind.CROSS_POLYTOPE, n, l) == \
                    2 ** (l + 1) * math.comb(n, l + 1)

    def test_euler_relation(self):
        # alternating sum over proper faces equals 1 - (-1)^n
        for kind in POLYTOPES:
            for n in (1, 2, 3, 5, 8):
                total = sum((-1) ** l * face_count(kind, n, l) for l in range(n))
                assert total == 1 - (-1) ** n, f"{kind} n={n}"

    def test_ball_has_no_face_lattice(self):
        with pytest.raises(ValueError):
            face_count(FamilyKind.BALL, 3, 1)


class TestFaceVolume:
    def test_cube_faces(self):
        for n in (2, 5):
            for l in range(n + 1):
                assert face_volume(FamilyKind.CUBE, n, 1.5, l) == \
                    pytest.approx(3.0 ** l, rel=1e-14)

    def test_simplex_edge_length(self):
        # 1-faces are edges of length sqrt(2) rho
        assert face_volume(FamilyKind.SIMPLEX, 4, 2.0, 1) == \
            pytest.approx(2 * math.sqrt(2), rel=1e-14)
        assert face_volume(FamilyKind.CROSS_POLYTOPE, 4, 2.0, 1) == \
            pytest.approx(2 * math.sqrt(2), rel=1e-14)

    def test_regular_simplex_face_formula(self):
        # l-faces of cross-polytope and simplex are regular l-simplexes
        # with edge sqrt(2) rho, of volume rho^l sqrt(l+1) / l!
        for kind in (FamilyKind.CROSS_POLYTOPE, FamilyKind.SIMPLEX):
            for l in range(5):
                expect = 1.3 ** l * math.sqrt(l + 1.0) / math.factorial(l)
                assert face_volume(kind, 5, 1.3, l) == pytest.approx(expect, rel=1e-13)

    def test_octahedron_triangle(self):
        assert face_volume(FamilyKind.CROSS_POLYTOPE, 3, 1.0, 2) == \
            pytest.approx(math.sqrt(3) / 2, rel=1e-13)


class TestExternalAngleDispatch:
    def test_cube_angles(self):
        for n in (2, 6, 13):
            for l in range(n + 1):
                assert external_angle(FamilyKind.CUBE, n, l).value == \
                    pytest.approx(2.0 ** (l - n), rel=1e-14)

    def test_ball_rejected(self):
        with pytest.raises(ValueError):
            external_angle(FamilyKind.BALL, 3, 1)


class TestIntrinsicVolumes:
    def test_ball_closed_form(self):
        for n in (1, 2, 3, 7, 15):
            qv = intrinsic_volumes(FamilyInstance(kind=FamilyKind.BALL, n=n, rho=1.0))
            for l in range(n + 1):
                expect = math.comb(n, l) * unit_ball_volume(n) / unit_ball_volume(n - l)
                assert qv.V[l] == pytest.approx(expect, rel=1e-12)

    def test_cube_closed_form(self):
        for n in (1, 2, 3, 7, 15):
            qv = intrinsic_volumes(FamilyInstance(kind=FamilyKind.CUBE, n=n, rho=0.5))
            for l in range(n + 1):
                assert qv.V[l] == pytest.approx(math.comb(n, l), rel=1e-12)

    def test_v0_is_one(self):
        for kind in FamilyKind:
            for n in (1, 4, 11):
                qv = intrinsic_volumes(FamilyInstance(kind=kind, n=n, rho=2.7))
                assert qv.V[0] == pytest.approx(1.0, rel=1e-12)

    def test_top_volume(self):
        n = 5
        rho = 1.3
        expect = {
            FamilyKind.BALL: unit_ball_volume(n) * rho ** n,
            FamilyKind.CUBE: (2 * rho) ** n,
            FamilyKind.CROSS_POLYTOPE: 2.0 ** n * rho ** n / math.factorial(n),
            FamilyKind.SIMPLEX: math.sqrt(n + 1.0) * rho ** n / math.factorial(n),
        }
        for kind, v in expect.items():
            qv = intrinsic_volumes(FamilyInstance(kind=kind, n=n, rho=rho))
            assert qv.V[n] == pytest.approx(v, rel=1e-12)

    def test_octahedron_dihedral_mean_width(self):
        qv = intrinsic_volumes(FamilyInstance(kind=FamilyKind.CROSS_POLYTOPE, n=3, rho=1.0))
        expect = 12 * math.sqrt(2) * (math.pi - math.acos(-1.0 / 3)) / (2 * math.pi)
        assert qv.V[1] == pytest.approx(expect, abs=1e-12)
        assert qv.V[2] == pytest.approx(2 * math.sqrt(3), abs=1e-12)

    def test_tetrahedron_dihedral_mean_width(self):
        qv = intrinsic_volumes(FamilyInstance(kind=FamilyKind.SIMPLEX, n=3, rho=1.0))
        expect = 6 * math.sqrt(2) * (0.25 + math.asin(1.0 / 3) / (2 * math.pi))
        assert qv.V[1] == pytest.approx(expect, abs=1e-12)
        assert qv.V[2] == pytest.approx(math.sqrt(3), abs=1e-12)

    def test_quermass_consistency(self):
        # m_l = binom(n,l) W_l = kappa_l V_{n-l}
        for kind in FamilyKind:
            n = 6
            qv = intrinsic_volumes(FamilyInstance(kind=kind, n=n, rho=1.0))
            for l in range(n + 1):
                lhs = math.comb(n, l) * qv.W[l]
                rhs = unit_ball_volume(l) * qv.V[n - l]
                assert lhs == pytest.approx(rhs, rel=1e-12), f"{kind} l={l}"

    def test_log_form_consistent(self):
        qv = intrinsic_volumes(FamilyInstance(kind=FamilyKind.SIMPLEX, n=12, rho=0.3))
        assert np.allclose(np.exp(qv.log_V), qv.V, rtol=1e-12)
        assert np.allclose(np.exp(qv.log_W), qv.W, rtol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(rho=st.floats(min_value=0.01, max_value=100.0),
           l=st.integers(min_value=0, max_value=6))
    def test_homogeneous_scaling(self, rho, l):
        # V_l is homogeneous of degree l in the scale parameter
        base = intrinsic_volumes(FamilyInstance(
            kind=FamilyKind.CROSS_POLYTOPE, n=6, rho=1.0)).V
        scaled = intrinsic_volumes(FamilyInstance(
            kind=FamilyKind.CROSS_POLYTOPE, n=6, rho=rho)).V
        assert scaled[l] == pytest.approx(base[l] * rho ** l, rel=1e-11)


class TestShapeFactor:
    def test_matches_first_moment_ratio(self):
        for kind in FamilyKind:
            for n in (1, 2, 5, 12):
                inst = FamilyInstance(kind=kind, n=n, rho=1.7)
                m = minkowski_polynomial(inst).m
                assert shape_factor(inst) == pytest.approx(m[1] / m[0], rel=1e-12)

    def test_ball_and_cube_closed_form(self):
        for kind in (FamilyKind.BALL, FamilyKind.CUBE):
            for n in (1, 3, 10, 42):
                inst = FamilyInstance(kind=kind, n=n, rho=2.5)
                assert shape_factor(inst) == pytest.approx(n / 2.5, rel=1e-13)

    def test_log_consistent(self):
        inst = FamilyInstance(kind=FamilyKind.SIMPLEX, n=9, rho=0.4)
        assert math.exp(log_shape_factor(inst)) == \
            pytest.approx(shape_factor(inst), rel=1e-13)

    def test_polytope_closed_forms(self):
        # facet angles 1/2 make these exact: n^(3/2) and n sqrt(n(n+1))
        for n in (2, 7, 50, 200):
            cross = FamilyInstance(kind=FamilyKind.CROSS_POLYTOPE, n=n, rho=2.0)
            assert shape_factor(cross) == pytest.approx(n ** 1.5 / 2.0, rel=1e-12)
            simp = FamilyInstance(kind=FamilyKind.SIMPLEX, n=n, rho=2.0)
            assert shape_factor(simp) == pytest.approx(
                n * math.sqrt(n * (n + 1.0)) / 2.0, rel=1e-12)
