"""Tests for spaces, points, isometries and geodesics."""
import math
from dataclasses import replace

import numpy as np
import pytest

from ccgeom.config import DEFAULT_TOLERANCES
from ccgeom.errors import InvalidParameter, LinesAsymptotic, LinesIntersect, OutOfChartDomain
from ccgeom.geometry.space_core import (
    E2,
    H2,
    S2,
    LineRelation,
    ModelChart,
    Point,
    SpaceKind,
    angle_between,
    base_point,
    classify_lines,
    common_perpendicular,
    distance,
    from_chart,
    geodesic_from_ideal,
    geodesic_point,
    geodesic_through,
    midpoint,
    perpendicular_through,
    perturbation,
    point_at_polar,
    point_reflection,
    random_isometry,
    random_point,
    tangent_angle,
    to_chart,
    translation_along_geodesic,
)

SPACES = [S2, E2, H2]


class TestSpaceKind:
    def test_from_name(self):
        assert SpaceKind.from_name("H2") == H2
        assert SpaceKind.from_name("S3").dimension == 3

    def test_rejects_unknown(self):
        with pytest.raises(InvalidParameter):
            SpaceKind.from_name("X2")
        with pytest.raises(InvalidParameter):
            SpaceKind(2, 2)


class TestDistance:
    def test_flat_pythagoras(self):
        assert distance(E2, Point(E2, [0, 0]), Point(E2, [3, 4])) == pytest.approx(5.0)

    @pytest.mark.parametrize("space", SPACES, ids=str)
    def test_polar_distance(self, space):
        for d in (1e-6, 0.3, 1.0, 2.5):
            p = point_at_polar(space, d, 0.7)
            assert distance(space, base_point(space), p) == pytest.approx(d, rel=1e-12, abs=1e-15)

    @pytest.mark.parametrize("space", SPACES, ids=str)
    def test_triangle_inequality(self, space):
        rng = np.random.default_rng(7)
        for _ in range(50):
            p, q, r = (random_point(space, rng, 1.4) for _ in range(3))
            assert distance(space, p, r) <= distance(space, p, q) + distance(space, q, r) + 1e-12

    def test_nearly_antipodal_sphere(self):
        p = point_at_polar(S2, math.pi - 1e-7, 0.0)
        assert distance(S2, base_point(S2), p) == pytest.approx(math.pi - 1e-7, abs=1e-12)

    def test_mixed_spaces_rejected(self):
        with pytest.raises(InvalidParameter):
            distance(H2, base_point(H2), base_point(E2))


class TestGeodesicPoint:
    @pytest.mark.parametrize("space", SPACES, ids=str)
    def test_midpoint_equidistant(self, space):
        p, q = point_at_polar(space, 0.8, 0.1), point_at_polar(space, 1.1, 2.0)
        m = midpoint(space, p, q)
        assert distance(space, p, m) == pytest.approx(distance(space, m, q), abs=1e-12)
        assert distance(space, p, m) == pytest.approx(0.5 * distance(space, p, q), abs=1e-12)

    def test_fraction(self):
        p, q = point_at_polar(H2, 1.0, 0.0), point_at_polar(H2, 2.0, 1.0)
        x = geodesic_point(H2, p, q, 0.25)
        assert distance(H2, p, x) == pytest.approx(0.25 * distance(H2, p, q), abs=1e-12)


class TestIsometries:
    @pytest.mark.parametrize("space", SPACES, ids=str)
    def test_random_isometry_preserves_distance(self, space):
        rng = np.random.default_rng(11)
        for _ in range(20):
            iso = random_isometry(space, rng, 1.0)
            assert iso.form_residual() < 1e-10
            p, q = random_point(space, rng, 1.0), random_point(space, rng, 1.0)
            assert distance(space, iso.apply(p), iso.apply(q)) == pytest.approx(distance(space, p, q), abs=1e-10)

    def test_random_isometry_is_deterministic(self):
        a = random_isometry(H2, 5, 1.0)
        b = random_isometry(H2, 5, 1.0)
        assert np.array_equal(a.matrix, b.matrix)

    @pytest.mark.parametrize("space", SPACES, ids=str)
    def test_point_reflection(self, space):
        c = point_at_polar(space, 0.6, 1.2)
        sigma = point_reflection(space, c)
        p = point_at_polar(space, 0.9, -0.4)
        image = sigma.apply(p)
        assert sigma.apply(c).isclose(c, 1e-12)
        assert sigma.apply(image).isclose(p, 1e-10)
        assert midpoint(space, p, image).isclose(c, 1e-9)

    def test_sphere_reflection_ignores_antipode(self):
        c = point_at_polar(S2, 0.6, 1.2)
        opposite = Point(S2, -c.coords)
        assert np.allclose(point_reflection(S2, c).matrix, point_reflection(S2, opposite).matrix, atol=1e-12)

    def test_inverse(self):
        iso = random_isometry(H2, 3, 2.0)
        p = point_at_polar(H2, 0.5, 0.5)
        assert iso.inverse().apply(iso.apply(p)).isclose(p, 1e-10)

    def test_translation_slides_along_line(self):
        g = geodesic_from_ideal(0.3, 2.4)
        t = translation_along_geodesic(H2, g, 0.7)
        x = g.point_at(0.2)
        y = t.apply(x)
        assert g.signed_distance(y) == pytest.approx(0.0, abs=1e-12)
        assert distance(H2, x, y) == pytest.approx(0.7, abs=1e-12)

    def test_perturbation_magnitude(self):
        about = point_at_polar(H2, 1.0, 0.0)
        iso = perturbation(H2, 9, 1e-2, about=about)
        assert distance(H2, about, iso.apply(about)) == pytest.approx(1e-2, rel=1e-9)


class TestCharts:
    @pytest.mark.parametrize("space", SPACES, ids=str)
    def test_conformal_chart_inverse(self, space):
        chart = ModelChart.conformal(space)
        p = point_at_polar(space, 1.3, 2.2)
        back = from_chart(chart, to_chart(chart, p))
        assert back.isclose(p, 1e-12)

    def test_poincare_disk_radius(self):
        u = to_chart(ModelChart.POINCARE, point_at_polar(H2, 2.0, 0.0))
        assert np.linalg.norm(u) == pytest.approx(math.tanh(1.0))

    def test_wrong_chart(self):
        with pytest.raises(InvalidParameter):
            to_chart(ModelChart.KLEIN, base_point(S2))

    @pytest.mark.parametrize("chart, space, p", [
        (ModelChart.KLEIN, H2, (2.1, 0.4)),
        (ModelChart.GNOMONIC, S2, (0.7, 1.0)),
    ], ids=["klein", "gnomonic"])
    def test_projective_chart_inverse(self, chart, space, p):
        p = point_at_polar(space, *p)
        assert from_chart(chart, to_chart(chart, p)).isclose(p, 1e-12)

    def test_klein_geodesics_are_chords(self):
        p, q = point_at_polar(H2, 1.2, 0.3), point_at_polar(H2, 2.0, 2.6)
        u0, u1, u2 = (to_chart(ModelChart.KLEIN, geodesic_point(H2, p, q, t)) for t in (0.0, 0.37, 1.0))
        a, b = u1 - u0, u2 - u0
        assert a[0] * b[1] - a[1] * b[0] == pytest.approx(0.0, abs=1e-12)

    def test_poincare_distance(self):
        o = from_chart(ModelChart.POINCARE, np.array([0.0, 0.0]))
        x = from_chart(ModelChart.POINCARE, np.array([0.5, 0.0]))
        assert distance(H2, o, x) == pytest.approx(math.log(3.0), abs=1e-12)

    def test_chart_margin(self):
        with pytest.raises(OutOfChartDomain):
            from_chart(ModelChart.KLEIN, np.array([1.0 - 1e-13, 0.0]))
        with pytest.raises(OutOfChartDomain):
            to_chart(ModelChart.GNOMONIC, point_at_polar(S2, math.pi / 2, 0.0))
        loose = replace(DEFAULT_TOLERANCES, chart=0.0)
        assert from_chart(ModelChart.KLEIN, np.array([1.0 - 1e-13, 0.0]), tol=loose).coords[0] > 1e6


class TestGeodesics:
    def test_through_points(self):
        p, q = point_at_polar(H2, 0.5, 0.0), point_at_polar(H2, 1.5, 2.0)
        g = geodesic_through(p, q)
        assert g.signed_distance(p) == pytest.approx(0.0, abs=1e-12)
        assert g.signed_distance(q) == pytest.approx(0.0, abs=1e-12)

    def test_ideal_angles(self):
        a, b = geodesic_from_ideal(0.5, 2.0).ideal_angles
        assert a == pytest.approx(0.5)
        assert b == pytest.approx(2.0)

    def test_left_side_positive(self):
        # from angle pi to angle 0 through the origin: +y is on the left
        g = geodesic_from_ideal(math.pi, 0.0)
        assert g.signed_distance(point_at_polar(H2, 0.5, math.pi / 2)) > 0

    def test_perpendicular(self):
        g = geodesic_from_ideal(0.0, 2.5)
        p = point_at_polar(H2, 1.0, 3.5)
        perp = perpendicular_through(g, p)
        foot = g.project(p)
        assert perp.signed_distance(p) == pytest.approx(0.0, abs=1e-12)
        assert tangent_angle(H2, foot, p, g.point_at(g.param_of(foot) + 1.0)) == pytest.approx(math.pi / 2)

    def test_classify(self):
        g = geodesic_from_ideal(0.0, 1.0)
        assert classify_lines(g, geodesic_from_ideal(0.5, 3.0)) is LineRelation.INTERSECTING
        assert classify_lines(g, geodesic_from_ideal(1.0, 3.0)) is LineRelation.ASYMPTOTIC
        assert classify_lines(g, geodesic_from_ideal(2.0, 3.0)) is LineRelation.ULTRAPARALLEL
        assert classify_lines(g, g.reversed()) is LineRelation.COINCIDENT


class TestCommonPerpendicular:
    def test_feet_on_lines(self):
        g1, g2 = geodesic_from_ideal(0.2, 1.0), geodesic_from_ideal(2.5, 3.5)
        seg = common_perpendicular(g1, g2)
        assert g1.signed_distance(seg.start) == pytest.approx(0.0, abs=1e-10)
        assert g2.signed_distance(seg.end) == pytest.approx(0.0, abs=1e-10)
        # no pair of points on the lines is closer
        for s in (-1.0, 0.5, 2.0):
            assert distance(H2, g1.point_at(s), g2.project(g1.point_at(s))) >= seg.length - 1e-12

    def test_klein_chords(self):
        right = geodesic_through(from_chart(ModelChart.KLEIN, [0.5, 0.3]), from_chart(ModelChart.KLEIN, [0.5, -0.3]))
        left = geodesic_through(from_chart(ModelChart.KLEIN, [-0.5, 0.3]), from_chart(ModelChart.KLEIN, [-0.5, -0.3]))
        seg = common_perpendicular(right, left)
        assert np.allclose(to_chart(ModelChart.KLEIN, seg.start), [0.5, 0.0], atol=1e-10)
        assert np.allclose(to_chart(ModelChart.KLEIN, seg.end), [-0.5, 0.0], atol=1e-10)
        assert seg.length == pytest.approx(2.0 * math.atanh(0.5), abs=1e-10)

    def test_crossing_lines(self):
        with pytest.raises(LinesIntersect):
            common_perpendicular(geodesic_from_ideal(0.0, 2.0), geodesic_from_ideal(1.0, 3.0))

    def test_asymptotic_lines(self):
        with pytest.raises(LinesAsymptotic):
            common_perpendicular(geodesic_from_ideal(0.0, 1.0), geodesic_from_ideal(1.0, 3.0))


class TestAngles:
    def test_near_straight_angle(self):
        x = base_point(H2)
        p, q = point_at_polar(H2, 1.0, 0.0), point_at_polar(H2, 1.0, math.pi - 1e-9)
        assert tangent_angle(H2, x, p, q) == pytest.approx(math.pi - 1e-9, abs=1e-11)

    def test_right_angle_sphere(self):
        e1, e2 = np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
        assert angle_between(S2, e1, e2) == pytest.approx(math.pi / 2)
