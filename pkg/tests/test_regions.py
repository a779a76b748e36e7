"""Tests for regions, ideal sets, region intersection and the padded-region lemmas."""
import math

import numpy as np
import pytest

from ccgeom.errors import (
    DegenerateContact,
    HypothesisViolated,
    InvalidParameter,
    NestedDisks,
)
from ccgeom.experiments.construction import build_construction_c, build_six_arc_rosette
from ccgeom.geometry.regions import (
    Containment,
    CoreSet,
    Disk,
    HalfPlane,
    IdealSet,
    Padded,
    Paraball,
    ResultKind,
    check_interleaving,
    component_separation,
    construct_rosette_region,
    construct_two_component_region,
    hull_union_disks,
    intersect_regions,
    lemma12_reduce,
    lemma31_inclusion,
    membership_disagreements,
)
from ccgeom.geometry.space_core import (
    E2,
    H2,
    S2,
    Point,
    base_point,
    geodesic_from_ideal,
    geodesic_point,
    point_at_polar,
    point_reflection,
    random_point,
    transvection,
)


def _padded(*lines, lam=0.5):
    return Padded(CoreSet(tuple(lines)), lam)


class TestContainment:
    def test_disk(self):
        disk = Disk(H2, base_point(H2), 1.0)
        assert disk.contains(base_point(H2)) is Containment.INTERIOR
        assert disk.contains(point_at_polar(H2, 1.0, 0.3)) is Containment.BOUNDARY
        assert disk.contains(point_at_polar(H2, 1.5, 0.3)) is Containment.OUTSIDE

    def test_spherical_disk_limit(self):
        with pytest.raises(InvalidParameter):
            Disk(S2, base_point(S2), 2.0)

    def test_half_plane_is_left_side(self):
        half = HalfPlane(geodesic_from_ideal(math.pi, 0.0))
        assert half.contains(point_at_polar(H2, 0.4, math.pi / 2)) is Containment.INTERIOR
        assert half.contains(point_at_polar(H2, 0.4, -math.pi / 2)) is Containment.OUTSIDE

    def test_padded_region(self):
        region = construct_rosette_region(3, 0.5, 0.3)
        assert region.contains(base_point(H2)) is Containment.INTERIOR
        # points of a core line sit lam inside the boundary
        g = region.core.lines[0]
        on_line = g.point_at(0.0)
        assert region.level(on_line) == pytest.approx(-0.3)
        assert region.ideal_set().component_count == 3

    def test_component_separation(self):
        single = construct_two_component_region(math.pi / 2, 0.4)
        assert component_separation(single) > 0.8
        assert component_separation(_padded(geodesic_from_ideal(-0.3, 0.3))) == math.inf


class TestIdealSet:
    def test_complement(self):
        s = IdealSet.complement_of_open([(0.0, 1.0), (2.0, 1.0)])
        assert s.component_count == 2
        assert s.contains(1.5)
        assert not s.contains(0.5)
        assert s.contains(1.0)

    def test_touching_caps_leave_a_point(self):
        s = IdealSet.complement_of_open([(0.0, 1.0), (1.0, 2.0 * math.pi - 1.0)])
        assert s.isolated_points() == pytest.approx([0.0, 1.0])

    def test_intersection_with_point(self):
        arcs = IdealSet.from_arcs([(1.0, 1.0)])
        assert arcs.intersection(IdealSet.point(1.5)).isolated_points() == pytest.approx([1.5])
        assert arcs.intersection(IdealSet.point(3.0)).is_empty

    def test_merge_across_zero(self):
        s = IdealSet.from_arcs([(6.0, 0.5), (0.1, 0.3)])
        assert s.component_count == 1
        assert s.contains(0.3)

    def test_full(self):
        assert IdealSet.full().is_full
        assert IdealSet.complement_of_open([]).is_full
        assert IdealSet.empty().describe() == "none"


class TestIntersectRegions:
    def test_flat_lens(self):
        a = Disk(E2, Point(E2, [0.0, 0.0]), 1.0)
        b = Disk(E2, Point(E2, [1.0, 0.0]), 1.0)
        result = intersect_regions(a, b)
        assert result.kind is ResultKind.COMPACT
        assert result.describe() == "Compact(2)"
        xs = [v.coords[0] for v in result.polygon.vertices]
        assert xs == pytest.approx([0.5, 0.5])

    def test_disjoint(self):
        a = Disk(H2, base_point(H2), 0.5)
        b = Disk(H2, point_at_polar(H2, 3.0, 1.0), 0.5)
        result = intersect_regions(a, b)
        assert result.kind is ResultKind.EMPTY
        assert result.describe() == "Empty"

    def test_nested(self):
        outer = Disk(S2, base_point(S2), 1.0)
        inner = Disk(S2, point_at_polar(S2, 0.2, 0.0), 0.3)
        result = intersect_regions(outer, inner)
        assert result.is_compact
        assert result.polygon.arc_count == 1

    def test_tangent_disks(self):
        a = Disk(E2, Point(E2, [0.0, 0.0]), 1.0)
        b = Disk(E2, Point(E2, [2.0, 0.0]), 1.0)
        with pytest.raises(DegenerateContact):
            intersect_regions(a, b)
        assert intersect_regions(a, b, strict=False).kind is ResultKind.EMPTY_INTERIOR

    def test_paraball_with_itself(self):
        ball = Paraball(0.5, 0.2)
        result = intersect_regions(ball, Paraball(0.5, 0.2))
        assert result.kind is ResultKind.NONCOMPACT
        assert result.ideal.isolated_points() == pytest.approx([0.5])

    def test_opposite_half_planes_touch(self):
        g = geodesic_from_ideal(0.0, 2.0)
        with pytest.raises(DegenerateContact):
            intersect_regions(HalfPlane(g), HalfPlane(g.reversed()))

    def test_mixed_spaces(self):
        with pytest.raises(InvalidParameter):
            intersect_regions(Disk(H2, base_point(H2), 1.0), Disk(E2, base_point(E2), 1.0))

    def test_polygon_is_canonical_under_relabelling(self):
        a = Disk(H2, point_at_polar(H2, 0.4, 0.0), 1.0)
        b = Disk(H2, point_at_polar(H2, 0.4, math.pi), 1.0)
        first = intersect_regions(a, b).polygon.vertices
        second = intersect_regions(b, a).polygon.vertices
        assert all(p.isclose(q, 1e-9) for p, q in zip(first, second))


class TestConstructions:
    def test_construction_c_is_compact_quadrilateral(self):
        k, l = build_construction_c(0.7 * math.pi, 0.7 * math.pi, 0.5)
        result = intersect_regions(k, l)
        assert result.describe() == "Compact(4)"
        assert check_interleaving(result.polygon)

    def test_six_arc_rosette(self):
        k, l = build_six_arc_rosette(0.8, 0.3)
        result = intersect_regions(k, l)
        assert result.describe() == "Compact(6)"

    def test_two_component_region_is_symmetric(self):
        region = construct_two_component_region(1.0, 0.4)
        flipped = region.transformed(point_reflection(H2, base_point(H2)))
        p = point_at_polar(H2, 0.7, 0.2)
        assert flipped.level(p) == pytest.approx(region.level(p), abs=1e-12)

    def test_rosette_width_bounds(self):
        with pytest.raises(InvalidParameter):
            construct_rosette_region(3, math.pi / 3, 0.5)
        with pytest.raises(InvalidParameter):
            construct_two_component_region(math.pi, 0.5)


class TestLemmaChecks:
    ga = geodesic_from_ideal(-0.3, 0.3)

    def test_reduce_keeps_chosen_components(self):
        a = _padded(self.ga)
        b = _padded(geodesic_from_ideal(0.2, -0.2))
        ra, rb = lemma12_reduce(a, b, 0, 0)
        assert ra.core.lines[0].is_same_line(self.ga)
        assert len(rb.core.lines) == 1

    def test_reduce_rejects_crossing_lines(self):
        with pytest.raises(HypothesisViolated) as info:
            lemma12_reduce(_padded(self.ga), _padded(geodesic_from_ideal(0.0, 3.0)), 0, 0)
        assert info.value.clause == 1

    def test_reduce_rejects_wrong_facing(self):
        with pytest.raises(HypothesisViolated) as info:
            lemma12_reduce(_padded(self.ga), _padded(geodesic_from_ideal(-0.2, 0.2)), 0, 0)
        assert info.value.clause == 2

    def test_reduce_parameters(self):
        a = _padded(self.ga)
        with pytest.raises(InvalidParameter):
            lemma12_reduce(a, _padded(geodesic_from_ideal(0.2, -0.2), lam=0.6), 0, 0)
        with pytest.raises(InvalidParameter):
            lemma12_reduce(a, _padded(geodesic_from_ideal(0.2, -0.2)), 1, 0)

    def test_inclusion(self):
        k_star = _padded(geodesic_from_ideal(-0.6, 0.6))
        l_star = _padded(self.ga)
        assert lemma31_inclusion(k_star, l_star)

    def test_inclusion_hypotheses(self):
        with pytest.raises(HypothesisViolated) as info:
            lemma31_inclusion(_padded(geodesic_from_ideal(0.0, 3.0)), _padded(self.ga))
        assert info.value.clause == 1
        with pytest.raises(InvalidParameter):
            lemma31_inclusion(construct_two_component_region(1.0, 0.5), _padded(self.ga))


class TestDiskHull:
    def test_congruent_disks(self):
        d1 = Disk(H2, point_at_polar(H2, 0.6, 0.0), 0.4)
        d2 = Disk(H2, point_at_polar(H2, 0.6, math.pi), 0.4)
        hull = hull_union_disks(d1, d2)
        assert len(hull.arcs) == 2
        assert len(hull.segments) == 2
        for p in hull.sample_boundary(16):
            assert d1.level(p) >= -1e-9
            assert d2.level(p) >= -1e-9

    def test_same_disk(self):
        d = Disk(E2, Point(E2, [1.0, 1.0]), 0.5)
        assert hull_union_disks(d, Disk(E2, Point(E2, [1.0, 1.0]), 0.5)).is_single_circle

    def test_nested_disks(self):
        with pytest.raises(NestedDisks):
            hull_union_disks(Disk(E2, Point(E2, [0.0, 0.0]), 2.0), Disk(E2, Point(E2, [0.5, 0.0]), 0.5))


def _strip(angle, lam=0.5):
    g = geodesic_from_ideal(angle, angle + math.pi)
    return _padded(g, g.reversed(), lam=lam)


def _sample_around(center, radius, count, seed):
    rng = np.random.default_rng(seed)
    shift = transvection(H2, center)
    return [shift.apply(random_point(H2, rng, radius)) for _ in range(count)]


def _distance_to_core(region, p, span=6.0, count=6001):
    """Brute force: closest sampled point of the core boundary, zero inside the core."""
    if all(g.signed_distance(p) >= 0 for g in region.core.lines):
        return 0.0
    q = np.array([g.point_at(s).coords for g in region.core.lines for s in np.linspace(-span, span, count)])
    x = p.coords
    cosh_d = q[:, 0] * x[0] - q[:, 1:] @ x[1:]
    return float(np.arccosh(max(cosh_d.min(), 1.0)))


class TestTracedMembership:
    def test_crossing_strips(self):
        a, b = _strip(0.0), _strip(math.pi / 2)
        result = intersect_regions(a, b)
        assert result.describe() == "Compact(4)"
        assert [o.value for o in result.polygon.owners] in (["A", "B", "A", "B"], ["B", "A", "B", "A"])
        points = _sample_around(base_point(H2), 2.5, 5000, 1)
        assert membership_disagreements(result.polygon, a, b, points) == 0
        inside = sum(result.polygon.contains(p) for p in points)
        assert 0 < inside < len(points)

    def test_construction_c(self):
        k, l = build_construction_c(0.7 * math.pi, 0.7 * math.pi, 0.5)
        polygon = intersect_regions(k, l).polygon
        points = _sample_around(base_point(H2), polygon.diameter() + 0.5, 5000, 2)
        assert membership_disagreements(polygon, k, l, points) == 0

    def test_chart_point_outside_polygon(self):
        polygon = intersect_regions(_strip(0.0), _strip(math.pi / 2)).polygon
        assert polygon.contains_chart_point([0.0, 0.0])
        assert not polygon.contains_chart_point([0.9, 0.0])


class TestPaddedRegions:
    @pytest.mark.parametrize(
        "region",
        [_strip(0.3, lam=0.5), construct_two_component_region(1.0, 0.4)],
        ids=["strip", "two_components"],
    )
    def test_matches_distance_to_core(self, region):
        for p in _sample_around(base_point(H2), 2.5, 300, 5):
            d = _distance_to_core(region, p)
            if abs(d - region.lam) < 1e-3:
                continue
            inside = region.contains(p) is not Containment.OUTSIDE
            assert inside == (d < region.lam)

    def test_parallel_domain_is_convex(self):
        region = construct_two_component_region(1.0, 0.4)
        points = region.sample_interior(np.random.default_rng(8), 2000, 3.0)
        assert len(points) == 2000
        for p, q in zip(points[::2], points[1::2]):
            for t in np.linspace(0.0, 1.0, 9):
                assert region.level(geodesic_point(H2, p, q, t)) <= 1e-9
