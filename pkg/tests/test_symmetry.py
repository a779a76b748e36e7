"""Tests for central-symmetry detection and the minimal enclosing ball."""
import math

import pytest

from ccgeom.errors import CommonFinitePoint, HemisphereViolation, InvalidParameter, NotCongruent, Unsupported
from ccgeom.experiments.construction import build_construction_c
from ccgeom.geometry import symmetry
from ccgeom.geometry.cycles import Hypercycle, Paracycle, hypercycle_between
from ccgeom.geometry.regions import (
    CoreSet,
    Disk,
    HalfPlane,
    Padded,
    Paraball,
    construct_two_component_region,
    hull_union_disks,
    intersect_regions,
)
from ccgeom.geometry.space_core import (
    E2,
    H2,
    S2,
    Point,
    base_point,
    distance,
    geodesic_from_ideal,
    point_at_polar,
    random_isometry,
    translation_along_geodesic,
)
from ccgeom.geometry.symmetry import (
    CenterKind,
    Verdict,
    candidate_center_two_hypercycles,
    classify_residual,
    is_centrally_symmetric_hull,
    is_centrally_symmetric_polygon,
    is_centrally_symmetric_region,
    is_centrally_symmetric_result,
    meb_cross_check,
    min_enclosing_ball,
    paracycle_axis_points,
)


def _lens(space, r1=0.8, r2=0.8, offset=0.5):
    a = Disk(space, point_at_polar(space, offset, 0.3), r1)
    b = Disk(space, point_at_polar(space, offset, 0.3 + math.pi), r2)
    return intersect_regions(a, b)


class TestClassifyResidual:
    def test_bands(self):
        assert classify_residual(1e-8, 1e-6) is Verdict.SYMMETRIC
        assert classify_residual(5e-6, 1e-6) is Verdict.INDETERMINATE
        assert classify_residual(1e-3, 1e-6) is Verdict.NOT_SYMMETRIC


class TestPolygons:
    @pytest.mark.parametrize("space", [S2, E2, H2], ids=str)
    def test_congruent_lens(self, space):
        result = _lens(space)
        report = is_centrally_symmetric_polygon(result.polygon)
        assert report.verdict is Verdict.SYMMETRIC
        assert distance(space, report.center, base_point(space)) < 1e-8
        assert meb_cross_check(result.polygon, report)

    def test_unequal_lens(self):
        report = is_centrally_symmetric_polygon(_lens(E2, 1.0, 0.7).polygon)
        assert report.verdict is Verdict.NOT_SYMMETRIC
        assert report.center is None

    def test_construction_c_centre(self):
        pose = random_isometry(H2, 21, 1.0)
        k, l = build_construction_c(0.6 * math.pi, 0.7 * math.pi, 0.5, pose)
        report = is_centrally_symmetric_result(intersect_regions(k, l))
        assert report.symmetric
        assert distance(H2, report.center, pose.apply(base_point(H2))) < 1e-8

    def test_moved_region_loses_symmetry(self):
        k, l = build_construction_c(0.6 * math.pi, 0.7 * math.pi, 0.5)
        moved = l.transformed(translation_along_geodesic(H2, k.core.lines[0], 0.05))
        result = intersect_regions(k, moved)
        assert result.is_compact
        assert is_centrally_symmetric_result(result).verdict is Verdict.NOT_SYMMETRIC

    def test_tolerance_override(self):
        # a loose enough tolerance accepts the unequal lens
        report = is_centrally_symmetric_polygon(_lens(E2, 1.0, 0.7).polygon, tol=10.0)
        assert report.verdict is Verdict.SYMMETRIC

    @pytest.mark.parametrize("space", [S2, E2, H2], ids=str)
    def test_centre_follows_isometry(self, space):
        polygon = _lens(space).polygon
        center = is_centrally_symmetric_polygon(polygon).center
        for seed in range(5):
            iso = random_isometry(space, seed, 1.0)
            report = is_centrally_symmetric_polygon(polygon.transformed(iso))
            assert report.verdict is Verdict.SYMMETRIC
            assert distance(space, report.center, iso.apply(center)) < 1e-8

    def test_conflicting_pairings_are_indeterminate(self, monkeypatch):
        # every pairing verifies, but self-pairing and swap give different centres
        monkeypatch.setattr(symmetry, "pairing_residual", lambda *args, **kwargs: 0.0)
        report = is_centrally_symmetric_polygon(_lens(E2).polygon)
        assert report.verdict is Verdict.INDETERMINATE
        assert report.center is None
        assert "apart" in report.certificate


class TestNoncompactResults:
    def test_single_ideal_point(self):
        result = intersect_regions(Paraball(0.5, 0.2), Paraball(0.5, 0.2))
        report = is_centrally_symmetric_result(result)
        assert report.verdict is Verdict.NOT_SYMMETRIC
        assert report.certificate == "one ideal point"

    def test_empty_is_indeterminate(self):
        a = Disk(H2, base_point(H2), 0.3)
        b = Disk(H2, point_at_polar(H2, 2.0, 0.0), 0.3)
        assert is_centrally_symmetric_result(intersect_regions(a, b)).verdict is Verdict.INDETERMINATE


class TestRegions:
    def test_disk(self):
        disk = Disk(S2, point_at_polar(S2, 0.4, 1.0), 0.5)
        report = is_centrally_symmetric_region(disk)
        assert report.symmetric
        assert report.center.isclose(disk.center, 1e-12)

    def test_paraball(self):
        assert is_centrally_symmetric_region(Paraball(2.0, 0.0)).verdict is Verdict.NOT_SYMMETRIC

    def test_two_components(self):
        region = construct_two_component_region(1.2, 0.4)
        report = is_centrally_symmetric_region(region)
        assert report.symmetric
        assert distance(H2, report.center, base_point(H2)) < 1e-9

    def test_one_component(self):
        region = Padded(CoreSet((geodesic_from_ideal(0.2, 1.0),)), 0.5)
        assert is_centrally_symmetric_region(region).verdict is Verdict.NOT_SYMMETRIC

    def test_half_plane(self):
        with pytest.raises(Unsupported):
            is_centrally_symmetric_region(HalfPlane(geodesic_from_ideal(0.0, 1.0)))


class TestCandidates:
    def test_four_ideal_points(self):
        h1 = hypercycle_between(-0.5, 0.5, 0.3, side=-1)
        h2 = hypercycle_between(math.pi - 0.5, math.pi + 0.5, 0.3, side=-1)
        candidate = candidate_center_two_hypercycles(h1, h2)
        assert candidate.kind is CenterKind.UNIQUE_POINT
        assert distance(H2, candidate.point, base_point(H2)) < 1e-9

    def test_strip_has_line_of_centres(self):
        g = geodesic_from_ideal(0.0, math.pi)
        candidate = candidate_center_two_hypercycles(Hypercycle(g, 0.3, 1), Hypercycle(g, 0.3, -1))
        assert candidate.kind is CenterKind.LINE_LOCUS
        assert candidate.locus.is_same_line(g)

    def test_three_ideal_points(self):
        h1 = hypercycle_between(0.0, 1.0, 0.2, side=-1)
        h2 = hypercycle_between(1.0, 3.0, 0.2, side=-1)
        assert candidate_center_two_hypercycles(h1, h2).kind is CenterKind.NONE

    def test_errors(self):
        with pytest.raises(NotCongruent):
            candidate_center_two_hypercycles(hypercycle_between(0.0, 1.0, 0.2), hypercycle_between(2.0, 3.0, 0.3))
        with pytest.raises(CommonFinitePoint):
            candidate_center_two_hypercycles(hypercycle_between(0.0, 2.0, 0.2), hypercycle_between(1.0, 3.0, 0.2))

    def test_paracycle_axis_points(self):
        k, l = Paracycle(0.0, 0.3), Paracycle(math.pi, 0.3)
        k_prime, l_prime = paracycle_axis_points(k, l)
        assert k.level(k_prime) == pytest.approx(0.0, abs=1e-10)
        assert l.level(l_prime) == pytest.approx(0.0, abs=1e-10)
        assert distance(H2, base_point(H2), k_prime) == pytest.approx(distance(H2, base_point(H2), l_prime))


class TestHulls:
    def test_congruent_disks(self):
        d1 = Disk(H2, point_at_polar(H2, 0.6, 0.0), 0.4)
        d2 = Disk(H2, point_at_polar(H2, 0.6, math.pi), 0.4)
        report = is_centrally_symmetric_hull(hull_union_disks(d1, d2))
        assert report.symmetric
        assert distance(H2, report.center, base_point(H2)) < 1e-9

    def test_unequal_disks(self):
        d1 = Disk(E2, Point(E2, [0.0, 0.0]), 0.4)
        d2 = Disk(E2, Point(E2, [1.5, 0.0]), 0.2)
        assert is_centrally_symmetric_hull(hull_union_disks(d1, d2)).verdict is Verdict.NOT_SYMMETRIC


class TestMinEnclosingBall:
    def test_square(self):
        corners = [Point(E2, c) for c in ([0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5])]
        center, radius = min_enclosing_ball(corners)
        assert center.coords == pytest.approx([0.5, 0.5])
        assert radius == pytest.approx(math.sqrt(0.5))

    def test_points_on_hyperbolic_circle(self):
        pts = [point_at_polar(H2, 1.0, 2.0 * math.pi * k / 5) for k in range(5)]
        center, radius = min_enclosing_ball(pts)
        assert distance(H2, center, base_point(H2)) < 1e-9
        assert radius == pytest.approx(1.0)

    def test_empty(self):
        with pytest.raises(InvalidParameter):
            min_enclosing_ball([])

    def test_antipodal_points(self):
        pts = [Point(S2, [0.0, 0.0, -1.0]), Point(S2, [0.0, 0.0, 1.0]), Point(S2, [1.0, 0.0, 0.0])]
        with pytest.raises(HemisphereViolation):
            min_enclosing_ball(pts)

    def test_points_in_a_hemisphere(self):
        pts = [point_at_polar(S2, 0.8, 2.0 * math.pi * k / 3) for k in range(3)]
        center, radius = min_enclosing_ball(pts)
        assert distance(S2, center, base_point(S2)) < 1e-9
        assert radius == pytest.approx(0.8)

    def test_cross_check_needs_symmetric_report(self):
        result = _lens(E2, 1.0, 0.7)
        report = is_centrally_symmetric_polygon(result.polygon)
        with pytest.raises(InvalidParameter):
            meb_cross_check(result.polygon, report)
