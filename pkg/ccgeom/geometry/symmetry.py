"""Central-symmetry detection with candidate centres and a minimal-enclosing-ball check.

Candidate centres come from pairs of congruent boundary cycles (midpoint of
circle centres, midpoint of the axis points of two paracycles, midpoint of the
common perpendicular of two hypercycle base lines). A candidate is accepted
when every arc maps onto its partner arc under the point reflection.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import (
    AntipodalPair,
    CoincidentCycles,
    CommonFinitePoint,
    GeometryError,
    HemisphereViolation,
    InvalidParameter,
    NotCongruent,
    OutOfChartDomain,
    Unsupported,
)
from .cycles import Circle, Cycle, Hypercycle, Paracycle, intersect_cycles
from .regions import (
    ArcPolygon,
    Disk,
    DiskHull,
    HalfPlane,
    IntersectionResult,
    Padded,
    Paraball,
    Region,
    ResultKind,
)
from .space_core import (
    Geodesic,
    LineRelation,
    ModelChart,
    Point,
    SpaceKind,
    _J,
    angle_close,
    base_point,
    classify_lines,
    common_perpendicular,
    distance,
    from_chart,
    geodesic_from_ideal,
    intersect_geodesics,
    midpoint,
    minkowski,
    point_reflection,
    to_chart,
)

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    SYMMETRIC = "Symmetric"
    NOT_SYMMETRIC = "NotSymmetric"
    INDETERMINATE = "Indeterminate"


class Method(str, Enum):
    DISK_MIDPOINT = "DiskMidpoint"
    ARC_PAIRING = "ArcPairing"
    MEB_CROSS_CHECK = "MEBCrossCheck"
    IDEAL_CERTIFICATE = "IdealCertificate"


class CenterKind(str, Enum):
    UNIQUE_POINT = "UniquePoint"
    LINE_LOCUS = "LineLocus"
    NONE = "None"


@dataclass(frozen=True)
class CandidateCenter:
    kind: CenterKind
    point: Optional[Point] = None
    locus: Optional[Geodesic] = None
    reason: str = ""

    @classmethod
    def unique(cls, p: Point) -> "CandidateCenter":
        return cls(CenterKind.UNIQUE_POINT, point=p)

    @classmethod
    def line(cls, g: Geodesic) -> "CandidateCenter":
        return cls(CenterKind.LINE_LOCUS, locus=g)

    @classmethod
    def none(cls, reason: str) -> "CandidateCenter":
        return cls(CenterKind.NONE, reason=reason)


@dataclass(frozen=True)
class SymmetryReport:
    verdict: Verdict
    center: Optional[Point] = None
    residual: float = math.inf
    pairing: Optional[int] = None
    method: Method = Method.ARC_PAIRING
    certificate: str = ""
    locus: Optional[Geodesic] = None

    @property
    def symmetric(self) -> bool:
        return self.verdict is Verdict.SYMMETRIC


def classify_residual(residual: float, tol: float) -> Verdict:
    """Symmetric below tol, NotSymmetric above 10 tol, Indeterminate in between."""
    if residual < tol:
        return Verdict.SYMMETRIC
    if residual <= 10.0 * tol:
        return Verdict.INDETERMINATE
    return Verdict.NOT_SYMMETRIC


def _distinct_angles(angles: Sequence[float], tol: float) -> list[float]:
    distinct: list[float] = []
    for a in angles:
        if not any(angle_close(a, b, tol) for b in distinct):
            distinct.append(a)
    return distinct


# -- candidate centres -----------------------------------------------------------


def candidate_center_two_hypercycles(h1: Hypercycle, h2: Hypercycle,
                                     tol: Tolerances = DEFAULT_TOLERANCES) -> CandidateCenter:
    """Centre candidates of the convex set bounded by two congruent hypercycles.

    Two distinct ideal points in total: the whole base line. Three: none.
    Four: the midpoint of the common perpendicular of the base lines.
    """
    if not (isinstance(h1, Hypercycle) and isinstance(h2, Hypercycle)):
        raise InvalidParameter("both cycles must be hypercycles")
    if abs(h1.distance - h2.distance) > tol.geometry:
        raise NotCongruent(f"hypercycle distances {h1.distance:.6g} and {h2.distance:.6g} differ")
    try:
        if intersect_cycles(h1, h2, tol):
            raise CommonFinitePoint("the hypercycles meet at a finite point")
    except CoincidentCycles:
        raise CommonFinitePoint("the hypercycles coincide") from None
    return _hypercycle_pair_candidate(h1, h2, tol)


def _hypercycle_pair_candidate(h1: Hypercycle, h2: Hypercycle, tol: Tolerances) -> CandidateCenter:
    ideal = _distinct_angles(list(h1.ideal_points()) + list(h2.ideal_points()), tol.ideal)
    if len(ideal) == 2:
        return CandidateCenter.line(h1.base)
    if len(ideal) == 3:
        return CandidateCenter.none("three ideal points: no centre of symmetry")
    relation = classify_lines(h1.base, h2.base, tol)
    if relation is not LineRelation.ULTRAPARALLEL:
        return CandidateCenter.none(f"base lines are {relation.value}")
    return CandidateCenter.unique(common_perpendicular(h1.base, h2.base, tol).midpoint)


def paracycle_axis_points(k: Paracycle, l: Paracycle) -> tuple[Point, Point]:
    """The points k', l' where the paracycles cross the line joining their ideal points."""
    line = geodesic_from_ideal(k.ideal_point, l.ideal_point)
    # along `line` the horocycle level grows with slope +1 away from k and -1 towards l
    k_prime = line.point_at(-k.level(line.point_at(0.0)))
    l_prime = line.point_at(l.level(line.point_at(0.0)))
    return k_prime, l_prime


def candidate_center(c1: Cycle, c2: Cycle, tol: Tolerances = DEFAULT_TOLERANCES) -> CandidateCenter:
    """Candidate centre of a point reflection exchanging two congruent cycles."""
    if c1.space != c2.space:
        raise InvalidParameter("cycles of different spaces")
    if isinstance(c1, Circle) and isinstance(c2, Circle):
        if abs(c1.radius - c2.radius) > tol.geometry:
            return CandidateCenter.none("circles of different radii")
        try:
            return CandidateCenter.unique(midpoint(c1.space, c1.center, c2.center))
        except AntipodalPair:
            return CandidateCenter.none("antipodal circle centres")
    if isinstance(c1, Paracycle) and isinstance(c2, Paracycle):
        if angle_close(c1.ideal_point, c2.ideal_point, tol.ideal):
            return CandidateCenter.none("paracycles share their ideal point")
        k_prime, l_prime = paracycle_axis_points(c1, c2)
        return CandidateCenter.unique(midpoint(c1.space, k_prime, l_prime))
    if isinstance(c1, Hypercycle) and isinstance(c2, Hypercycle):
        # adjacent arcs of an intersection lie on crossing hypercycles
        if abs(c1.distance - c2.distance) > tol.geometry:
            return CandidateCenter.none("hypercycles at different distances")
        return _hypercycle_pair_candidate(c1, c2, tol)
    return CandidateCenter.none(f"no candidate for {c1.kind.value} and {c2.kind.value}")


def _resolve(first: CandidateCenter, second: CandidateCenter, tol: Tolerances) -> Optional[Point]:
    """Combine the candidates of two pairs of opposite arcs into one centre."""
    if first.kind is CenterKind.UNIQUE_POINT:
        return first.point
    if first.kind is CenterKind.NONE:
        return None
    if second.kind is CenterKind.UNIQUE_POINT:
        if abs(first.locus.signed_distance(second.point)) < tol.geometry:
            return second.point
        return None
    if second.kind is CenterKind.LINE_LOCUS:
        return intersect_geodesics(first.locus, second.locus)
    return None


def _canonical(space: SpaceKind, center: Point, reference: Sequence[Point]) -> Point:
    """On S^2 report the centre in the hemisphere of the reference points."""
    if not space.is_spherical or not reference:
        return center
    mean = np.sum([p.coords for p in reference], axis=0)
    if float(center.coords @ mean) < 0:
        return Point(space, -center.coords)
    return center


# -- detectors ---------------------------------------------------------------------


def pairing_residual(polygon: ArcPolygon, center: Point, shift: int, samples: int = 17) -> float:
    """Largest distance from a reflected arc sample to the partner arc `shift` places later."""
    sigma = point_reflection(polygon.space, center)
    n = polygon.arc_count
    worst = 0.0
    for i, arc in enumerate(polygon.arcs):
        partner = polygon.arcs[(i + shift) % n]
        for p in arc.sample(samples):
            worst = max(worst, partner.distance_to(sigma.apply(p)))
    return worst


def _ideal_parity(polygon: ArcPolygon, tol: Tolerances) -> Optional[int]:
    if not polygon.space.is_hyperbolic:
        return None
    angles: list[float] = []
    for arc in polygon.arcs:
        angles.extend(arc.cycle.ideal_points())
    count = len(_distinct_angles(angles, tol.ideal))
    return count if count % 2 else None


def is_centrally_symmetric_polygon(polygon: ArcPolygon, tol: Optional[float] = None,
                                   tolerances: Tolerances = DEFAULT_TOLERANCES,
                                   samples: int = 17) -> SymmetryReport:
    """Try each cyclic arc pairing; accept the first candidate centre that verifies."""
    tol = tolerances.symmetry if tol is None else tol
    space = polygon.space
    odd = _ideal_parity(polygon, tolerances)
    if odd is not None:
        return SymmetryReport(Verdict.NOT_SYMMETRIC, method=Method.IDEAL_CERTIFICATE,
                              certificate=f"odd number of ideal points ({odd})")
    n = polygon.arc_count
    reference = polygon.vertices or polygon.sample_boundary(3)
    arcs = polygon.arcs
    tried: list[tuple[int, Point, float]] = []
    for shift in range(n):
        first = candidate_center(arcs[0].cycle, arcs[shift % n].cycle, tolerances)
        second = candidate_center(arcs[1 % n].cycle, arcs[(1 + shift) % n].cycle, tolerances)
        center = _resolve(first, second, tolerances)
        if center is None:
            logger.debug("pairing %d: no candidate centre (%s)", shift, first.reason or second.reason)
            continue
        residual = pairing_residual(polygon, center, shift, samples)
        tried.append((shift, _canonical(space, center, reference), residual))

    if not tried:
        return SymmetryReport(Verdict.NOT_SYMMETRIC, certificate="no pairing admits a candidate centre")
    accepted = [t for t in tried if t[2] < tol]
    if accepted:
        shift, center, residual = accepted[0]
        for other_shift, other_center, _ in accepted[1:]:
            gap = distance(space, center, other_center)
            if gap > tolerances.geometry:
                logger.warning("pairings %d and %d give centres %.3g apart", shift, other_shift, gap)
                return SymmetryReport(Verdict.INDETERMINATE, None, residual, shift, Method.ARC_PAIRING,
                                      certificate=f"pairings {shift} and {other_shift} give centres {gap:.3g} apart")
        return SymmetryReport(Verdict.SYMMETRIC, center, residual, shift, Method.ARC_PAIRING,
                              certificate=f"arc pairing shift {shift}")
    shift, center, residual = min(tried, key=lambda t: t[2])
    verdict = classify_residual(residual, tol)
    if verdict is Verdict.INDETERMINATE:
        logger.info("indeterminate symmetry verdict, residual %.3g", residual)
    return SymmetryReport(verdict, center if verdict is not Verdict.NOT_SYMMETRIC else None, residual, shift,
                          Method.ARC_PAIRING,
                          certificate=f"best residual {residual:.3g} at pairing shift {shift}")


def _two_component_residual(h1: Hypercycle, h2: Hypercycle, center: Point, samples: int) -> float:
    sigma = point_reflection(h1.space, center)
    worst = 0.0
    for a, b in ((h1, h2), (h2, h1)):
        s0 = a.param_of(center)
        for p in a.sample(samples, (s0 - 3.0, s0 + 3.0)):
            worst = max(worst, abs(b.level(sigma.apply(p))))
    return worst


def is_centrally_symmetric_region(region: Region, tol: Optional[float] = None,
                                  tolerances: Tolerances = DEFAULT_TOLERANCES,
                                  samples: int = 33) -> SymmetryReport:
    tol = tolerances.symmetry if tol is None else tol
    if isinstance(region, Disk):
        return SymmetryReport(Verdict.SYMMETRIC, region.center, 0.0, method=Method.DISK_MIDPOINT,
                              certificate="disk")
    if isinstance(region, Paraball):
        return SymmetryReport(Verdict.NOT_SYMMETRIC, method=Method.IDEAL_CERTIFICATE,
                              certificate="one ideal point")
    if isinstance(region, HalfPlane):
        raise Unsupported("symmetry of half-planes is not classified")
    if not isinstance(region, Padded):
        raise Unsupported(f"unknown region type {type(region).__name__}")
    components = region.boundary_components()
    if len(components) == 1:
        return SymmetryReport(Verdict.NOT_SYMMETRIC, method=Method.IDEAL_CERTIFICATE,
                              certificate="one boundary component")
    if len(components) > 2:
        raise Unsupported("regions with more than two components: intersect and use the polygon path")
    h1, h2 = components
    candidate = candidate_center_two_hypercycles(h1, h2, tolerances)
    if candidate.kind is CenterKind.LINE_LOCUS:
        foot = candidate.locus.project(base_point(region.space))
        return SymmetryReport(Verdict.SYMMETRIC, foot, 0.0, method=Method.ARC_PAIRING,
                              certificate="centres form the base line", locus=candidate.locus)
    if candidate.kind is CenterKind.NONE:
        return SymmetryReport(Verdict.NOT_SYMMETRIC, method=Method.IDEAL_CERTIFICATE,
                              certificate=candidate.reason)
    residual = _two_component_residual(h1, h2, candidate.point, samples)
    verdict = classify_residual(residual, tol)
    return SymmetryReport(verdict, candidate.point if verdict is Verdict.SYMMETRIC else None, residual,
                          method=Method.ARC_PAIRING, certificate="common perpendicular midpoint")


def is_centrally_symmetric_result(result: IntersectionResult, tol: Optional[float] = None,
                                  tolerances: Tolerances = DEFAULT_TOLERANCES) -> SymmetryReport:
    """Polygon path for compact results, ideal-set certificates for noncompact ones."""
    if result.kind is ResultKind.COMPACT:
        return is_centrally_symmetric_polygon(result.polygon, tol, tolerances)
    if result.kind is ResultKind.NONCOMPACT:
        ideal = result.ideal
        if ideal.is_empty or ideal.is_full or ideal.component_count % 2 == 0:
            return SymmetryReport(Verdict.INDETERMINATE, method=Method.IDEAL_CERTIFICATE,
                                  certificate="noncompact intersection without a parity certificate")
        points = ideal.isolated_points(tolerances.ideal)
        if ideal.component_count == 1 and points:
            certificate = "one ideal point"
        else:
            certificate = f"odd number of ideal components ({ideal.component_count})"
        return SymmetryReport(Verdict.NOT_SYMMETRIC, method=Method.IDEAL_CERTIFICATE, certificate=certificate)
    return SymmetryReport(Verdict.INDETERMINATE, certificate=f"{result.kind.value} intersection")


def is_centrally_symmetric_hull(hull: DiskHull, tol: Optional[float] = None,
                                tolerances: Tolerances = DEFAULT_TOLERANCES,
                                per_piece: int = 24) -> SymmetryReport:
    """Check the hull of two disks against the midpoint of the centres and each centre."""
    tol = tolerances.symmetry if tol is None else tol
    space = hull.space
    d1, d2 = hull.disks
    if hull.is_single_circle:
        return SymmetryReport(Verdict.SYMMETRIC, d1.center, 0.0, method=Method.DISK_MIDPOINT,
                              certificate="single disk")
    samples = hull.sample_boundary(per_piece)
    best: Optional[tuple[Point, float]] = None
    for center in (midpoint(space, d1.center, d2.center), d1.center, d2.center):
        sigma = point_reflection(space, center)
        residual = max(hull.distance_to_boundary(sigma.apply(p)) for p in samples)
        if best is None or residual < best[1]:
            best = (center, residual)
    center, residual = best
    verdict = classify_residual(residual, tol)
    return SymmetryReport(verdict, center if verdict is Verdict.SYMMETRIC else None, residual,
                          method=Method.DISK_MIDPOINT,
                          certificate=f"best candidate residual {residual:.3g}")


# -- minimal enclosing ball ----------------------------------------------------------


class _NoCircumcenter(GeometryError):
    pass


def _hemisphere_pole(points: Sequence[Point], rounds: int = 1000) -> np.ndarray:
    """A direction with positive product against every point (perceptron updates)."""
    pole = np.sum([p.coords for p in points], axis=0)
    for _ in range(rounds):
        if np.linalg.norm(pole) > 0:
            products = [float(pole @ p.coords) for p in points]
            worst = int(np.argmin(products))
            if products[worst] > 1e-12 * np.linalg.norm(pole):
                return pole / np.linalg.norm(pole)
            pole = pole + points[worst].coords
        else:
            pole = points[0].coords.copy()
    raise HemisphereViolation("points do not lie in an open hemisphere")


def _circumcenter(space: SpaceKind, a: Point, b: Point, c: Point) -> Point:
    if space.is_flat:
        pa, pb, pc = a.coords, b.coords, c.coords
        m = 2.0 * np.array([pb - pa, pc - pa])
        rhs = np.array([pb @ pb - pa @ pa, pc @ pc - pa @ pa])
        if abs(np.linalg.det(m)) < 1e-14:
            raise _NoCircumcenter("collinear points")
        return Point(space, np.linalg.solve(m, rhs))
    x = np.cross(a.coords - b.coords, a.coords - c.coords)
    if space.is_hyperbolic:
        x = _J(3) @ x
        if minkowski(x, x) >= -1e-15:
            raise _NoCircumcenter("the points lie on a horocycle or hypercycle")
        return Point(space, x)
    if np.linalg.norm(x) < 1e-15:
        raise _NoCircumcenter("points on a great circle")
    if float(x @ a.coords) < 0:
        x = -x
    return Point(space, x)


def _meb_incremental(space: SpaceKind, pts: Sequence[Point], eps: float) -> tuple[Point, float]:
    center, radius = pts[0], 0.0
    for i in range(1, len(pts)):
        if distance(space, center, pts[i]) <= radius + eps:
            continue
        center, radius = pts[i], 0.0
        for j in range(i):
            if distance(space, center, pts[j]) <= radius + eps:
                continue
            center = midpoint(space, pts[i], pts[j])
            radius = distance(space, center, pts[i])
            for k in range(j):
                if distance(space, center, pts[k]) <= radius + eps:
                    continue
                center = _circumcenter(space, pts[i], pts[j], pts[k])
                radius = max(distance(space, center, pts[m]) for m in (i, j, k))
    return center, radius


def meb_grid_search(space: SpaceKind, pts: Sequence[Point], levels: int = 48,
                    grid: int = 9) -> tuple[Point, float]:
    """Nested grid refinement of the enclosing radius over conformal chart coordinates."""
    chart = ModelChart.conformal(space)
    coords = np.array([to_chart(chart, p) for p in pts])
    best_u = coords.mean(axis=0)
    half = float(np.max(np.linalg.norm(coords - best_u, axis=1))) + 1e-3

    def radius_at(u: np.ndarray) -> float:
        try:
            c = from_chart(chart, u)
        except OutOfChartDomain:
            return math.inf
        return max(distance(space, c, p) for p in pts)

    best_r = radius_at(best_u)
    offsets = np.linspace(-1.0, 1.0, grid)
    for _ in range(levels):
        centre = best_u
        for dx in offsets:
            for dy in offsets:
                u = centre + half * np.array([dx, dy])
                r = radius_at(u)
                if r < best_r:
                    best_u, best_r = u, r
        half *= 0.5
    return from_chart(chart, best_u), best_r


def min_enclosing_ball(points: Sequence[Point], tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[Point, float]:
    """Smallest ball containing the points (H^2, R^2, or an open hemisphere of S^2)."""
    pts = list(points)
    if not pts:
        raise InvalidParameter("min_enclosing_ball needs at least one point")
    space = pts[0].space
    if space.dimension != 2:
        raise InvalidParameter("min_enclosing_ball is two-dimensional")
    if space.is_spherical:
        _hemisphere_pole(pts)
    try:
        center, radius = _meb_incremental(space, pts, 1e-12)
    except _NoCircumcenter as exc:
        logger.debug("circumcentre failed (%s), using grid refinement", exc)
        center, radius = meb_grid_search(space, pts)
    return _canonical(space, center, pts), radius


def meb_cross_check(polygon: ArcPolygon, report: SymmetryReport, tol: float = 1e-6) -> bool:
    """The symmetry centre must be the centre of the smallest ball around vertices and arc midpoints."""
    if not report.symmetric or report.center is None:
        raise InvalidParameter("meb_cross_check needs a symmetric report")
    center, _ = min_enclosing_ball(polygon.sample_boundary(3))
    return distance(polygon.space, center, report.center) < tol
