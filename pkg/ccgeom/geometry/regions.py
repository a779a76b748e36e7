"""Closed convex regions bounded by congruent cycles, and their intersections.

A region is kept as its generating data (a disk centre and radius, a paraball
ideal point, or a core of half-planes padded by lambda); boundary cycles,
ideal sets and intersection polygons are derived on demand.
"""
from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import (
    DegenerateConfiguration,
    DegenerateContact,
    HypothesisViolated,
    InvalidParameter,
    NestedDisks,
    Unsupported,
)
from .cycles import Circle, Cycle, GeodesicCycle, Hypercycle, Paracycle, intersect_cycles
from .space_core import (
    H2,
    TWO_PI,
    Geodesic,
    GeodesicSegment,
    Isometry,
    LineRelation,
    ModelChart,
    Point,
    SpaceKind,
    _dual_form,
    _trig,
    angle_close,
    base_point,
    classify_lines,
    common_perpendicular,
    distance,
    from_chart,
    geodesic_from_ideal,
    ideal_vector,
    random_point,
    to_chart,
    transvection,
)

logger = logging.getLogger(__name__)


class Containment(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


# -- ideal sets ---------------------------------------------------------------


@dataclass(frozen=True)
class IdealSet:
    """Closed subset of the boundary circle: sorted disjoint arcs (start, length).

    A zero-length arc is an isolated ideal point; the full circle is (0, 2 pi).
    """

    arcs: tuple = ()

    @classmethod
    def empty(cls) -> "IdealSet":
        return cls(())

    @classmethod
    def full(cls) -> "IdealSet":
        return cls(((0.0, TWO_PI),))

    @classmethod
    def point(cls, theta: float) -> "IdealSet":
        return cls(((theta % TWO_PI, 0.0),))

    @classmethod
    def from_arcs(cls, arcs: Sequence[tuple[float, float]], tol: float = 1e-9) -> "IdealSet":
        items = sorted(((s % TWO_PI, max(0.0, length)) for s, length in arcs), key=lambda a: a[0])
        if any(length >= TWO_PI - tol for _, length in items):
            return cls.full()
        merged: list[list[float]] = []
        for start, length in items:
            end = start + length
            if merged and start <= merged[-1][1] + tol:
                merged[-1][1] = max(merged[-1][1], end)
            else:
                merged.append([start, end])
        if len(merged) > 1 and merged[-1][1] - TWO_PI >= merged[0][0] - tol:
            first = merged.pop(0)
            merged[-1][1] = max(merged[-1][1], first[1] + TWO_PI)
        if merged and merged[-1][1] - merged[-1][0] >= TWO_PI - tol:
            return cls.full()
        return cls(tuple((s, e - s) for s, e in merged))

    @classmethod
    def complement_of_open(cls, open_arcs: Sequence[tuple[float, float]]) -> "IdealSet":
        """Circle minus a union of open arcs; arcs that merely touch leave their common endpoint."""
        if not open_arcs:
            return cls.full()
        items = sorted(((s % TWO_PI, length) for s, length in open_arcs), key=lambda a: a[0])
        merged: list[list[float]] = []
        for start, length in items:
            end = start + length
            if merged and start < merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], end)
            else:
                merged.append([start, end])
        if len(merged) > 1 and merged[-1][1] - TWO_PI > merged[0][0]:
            first = merged.pop(0)
            merged[-1][1] = max(merged[-1][1], first[1] + TWO_PI)
        if len(merged) == 1 and merged[0][1] - merged[0][0] >= TWO_PI:
            return cls.empty()
        gaps = []
        for i, (_, end) in enumerate(merged):
            nxt = merged[(i + 1) % len(merged)][0]
            if i + 1 == len(merged):
                nxt += TWO_PI
            gaps.append((end % TWO_PI, max(0.0, nxt - end)))
        return cls(tuple(sorted(gaps, key=lambda a: a[0])))

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    @property
    def is_full(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0][1] >= TWO_PI

    @property
    def component_count(self) -> int:
        return len(self.arcs)

    def isolated_points(self, tol: float = 1e-9) -> list[float]:
        return [s for s, length in self.arcs if length <= tol]

    def contains(self, theta: float, tol: float = 1e-9) -> bool:
        for start, length in self.arcs:
            if (theta - start) % TWO_PI <= length + tol or angle_close(theta, start, tol):
                return True
        return False

    def intersection(self, other: "IdealSet", tol: float = 1e-9) -> "IdealSet":
        pieces = []
        for s1, l1 in self.arcs:
            for s2, l2 in other.arcs:
                shifted = s1 + (s2 - s1) % TWO_PI
                for lo2 in (shifted, shifted - TWO_PI):
                    lo = max(s1, lo2)
                    hi = min(s1 + l1, lo2 + l2)
                    if hi >= lo - tol:
                        pieces.append((lo, max(hi - lo, 0.0)))
        return IdealSet.from_arcs(pieces, tol)

    def describe(self) -> str:
        if self.is_empty:
            return "none"
        if self.is_full:
            return "full circle"
        parts = []
        for s, length in self.arcs:
            parts.append(f"{s:.6g}" if length <= 1e-9 else f"[{s:.6g}, {s + length:.6g}]")
        return ", ".join(parts)


# -- cores and regions --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoreSet:
    """Intersection of the closed positive sides of pairwise non-crossing H^2 geodesics.

    A strip core (a single line with empty interior) is written as the line
    together with its reverse.
    """

    lines: tuple

    def __post_init__(self):
        lines = tuple(self.lines)
        object.__setattr__(self, "lines", lines)
        if not lines:
            raise InvalidParameter("a core needs at least one supporting line")
        if any(not g.space.is_hyperbolic for g in lines):
            raise Unsupported("padded cores are implemented in H^2")
        for i, gi in enumerate(lines):
            for gj in lines[i + 1:]:
                relation = classify_lines(gi, gj)
                if relation is LineRelation.INTERSECTING:
                    raise InvalidParameter("core lines must not cross")
                if relation is LineRelation.COINCIDENT and np.allclose(gi.covector, gj.covector):
                    raise InvalidParameter("repeated core line")
                for a in gj.ideal_angles:
                    if gi.covector @ ideal_vector(a) < -1e-9:
                        raise InvalidParameter("core lines do not bound a common convex set")

    @property
    def is_strip(self) -> bool:
        return len(self.lines) == 2 and self.lines[0].is_same_line(self.lines[1])

    def depth(self, p: Point) -> float:
        """Distance from p to the core (non-positive inside, up to the nearest facet)."""
        return max(-g.signed_distance(p) for g in self.lines)

    def transformed(self, iso: Isometry) -> "CoreSet":
        return CoreSet(tuple(g.transformed(iso) for g in self.lines))

    def negative_caps(self) -> list[tuple[float, float]]:
        caps = []
        for g in self.lines:
            a, b = g.ideal_angles
            caps.append((a, (b - a) % TWO_PI))
        return caps


class Region(ABC):
    """A closed convex region; level(p) <= 0 on the region."""

    space: SpaceKind

    @abstractmethod
    def boundary_components(self) -> list[Cycle]:
        ...

    @abstractmethod
    def transformed(self, iso: Isometry) -> "Region":
        ...

    @abstractmethod
    def anchor(self) -> Point:
        """A point of the region used to seed sampling."""

    def level(self, p: Point) -> float:
        return max(c.level(p) for c in self.boundary_components())

    def contains(self, p: Point, tol: Tolerances = DEFAULT_TOLERANCES) -> Containment:
        v = self.level(p)
        if v < -tol.boundary_band:
            return Containment.INTERIOR
        if v <= tol.boundary_band:
            return Containment.BOUNDARY
        return Containment.OUTSIDE

    def ideal_set(self) -> IdealSet:
        return IdealSet.empty()

    def sample_interior(self, rng: np.random.Generator, count: int, radius_bound: float = 3.0,
                        max_draws: int = 100_000) -> list[Point]:
        """Rejection-sample `count` points of the region within radius_bound of its anchor."""
        shift = transvection(self.space, self.anchor())
        points: list[Point] = []
        for _ in range(max_draws):
            p = shift.apply(random_point(self.space, rng, radius_bound))
            if self.level(p) < 0:
                points.append(p)
                if len(points) == count:
                    break
        return points


@dataclass(frozen=True, eq=False)
class Disk(Region):
    space: SpaceKind
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise InvalidParameter("disk radius must be positive")
        if self.space.is_spherical and self.radius > math.pi / 2 + 1e-12:
            raise InvalidParameter("spherical disks have radius at most pi/2")

    @property
    def circle(self) -> Circle:
        return Circle(self.space, self.center, self.radius)

    def boundary_components(self) -> list[Cycle]:
        return [self.circle]

    def level(self, p: Point) -> float:
        return distance(self.space, self.center, p) - self.radius

    def transformed(self, iso: Isometry) -> "Disk":
        return Disk(self.space, iso.apply(self.center), self.radius)

    def anchor(self) -> Point:
        return self.center

    def sample_interior(self, rng, count, radius_bound=None, max_draws=100_000):
        return super().sample_interior(rng, count, self.radius, max_draws)


@dataclass(frozen=True, eq=False)
class Paraball(Region):
    ideal_point: float
    horo_param: float
    space: SpaceKind = H2

    def __post_init__(self):
        Paracycle(self.ideal_point, self.horo_param)

    @property
    def paracycle(self) -> Paracycle:
        return Paracycle(self.ideal_point, self.horo_param)

    def boundary_components(self) -> list[Cycle]:
        return [self.paracycle]

    def ideal_set(self) -> IdealSet:
        return IdealSet.point(self.ideal_point)

    def transformed(self, iso: Isometry) -> "Paraball":
        image = self.paracycle.transformed(iso)
        return Paraball(image.ideal_point, image.horo_param)

    def anchor(self) -> Point:
        return self.paracycle.axis_point


@dataclass(frozen=True, eq=False)
class Padded(Region):
    """Parallel domain of a core at distance `lam`.

    Its boundary components are the hypercycles at distance lam beyond each
    supporting line of the core.
    """

    core: CoreSet
    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise InvalidParameter("lambda must be positive")

    @property
    def space(self) -> SpaceKind:
        return H2

    def boundary_components(self) -> list[Cycle]:
        return [Hypercycle(g, self.lam, side=-1) for g in self.core.lines]

    def level(self, p: Point) -> float:
        return self.core.depth(p) - self.lam

    def ideal_set(self) -> IdealSet:
        return IdealSet.complement_of_open(self.core.negative_caps())

    def transformed(self, iso: Isometry) -> "Padded":
        return Padded(self.core.transformed(iso), self.lam)

    def anchor(self) -> Point:
        return self.core.lines[0].project(base_point(self.space))

    def component_base(self, index: int) -> Geodesic:
        return self.core.lines[index]


@dataclass(frozen=True, eq=False)
class HalfPlane(Region):
    """Closed positive (left) side of a geodesic."""

    line: Geodesic

    @property
    def space(self) -> SpaceKind:
        return self.line.space

    def boundary_components(self) -> list[Cycle]:
        return [GeodesicCycle(self.line)]

    def ideal_set(self) -> IdealSet:
        if not self.space.is_hyperbolic:
            return IdealSet.empty()
        a, b = self.line.ideal_angles
        return IdealSet.complement_of_open([(a, (b - a) % TWO_PI)])

    def transformed(self, iso: Isometry) -> "HalfPlane":
        return HalfPlane(self.line.transformed(iso))

    def anchor(self) -> Point:
        return self.line.point_at(0.0)


def contains(region: Region, p: Point, tol: Tolerances = DEFAULT_TOLERANCES) -> Containment:
    if p.space != region.space:
        raise InvalidParameter("point and region live in different spaces")
    return region.contains(p, tol)


def boundary_components(region: Region) -> list[Cycle]:
    return region.boundary_components()


def ideal_set(region: Region) -> IdealSet:
    return region.ideal_set()


def component_separation(region: Padded) -> float:
    """Smallest distance between two boundary components (infinite for one component)."""
    lines = region.core.lines
    best = math.inf
    for i, gi in enumerate(lines):
        for gj in lines[i + 1:]:
            relation = classify_lines(gi, gj)
            gap = 0.0
            if relation is LineRelation.ULTRAPARALLEL:
                gap = common_perpendicular(gi, gj).length
            best = min(best, gap + 2.0 * region.lam)
    return best


# -- arc polygons ---------------------------------------------------------------


class Owner(str, Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "Owner":
        return Owner.B if self is Owner.A else Owner.A


@dataclass(frozen=True, eq=False)
class Arc:
    """Piece of `cycle` travelled from parameter `start` to parameter `end`."""

    cycle: Cycle
    start: float
    end: float
    owner: Owner = Owner.A

    @property
    def span(self) -> float:
        return abs(self.end - self.start)

    @property
    def increasing(self) -> bool:
        return self.end >= self.start

    def point_at(self, t: float) -> Point:
        return self.cycle.point_at(self.start + t * (self.end - self.start))

    @property
    def start_point(self) -> Point:
        return self.point_at(0.0)

    @property
    def end_point(self) -> Point:
        return self.point_at(1.0)

    @property
    def midpoint(self) -> Point:
        return self.point_at(0.5)

    def sample(self, count: int) -> list[Point]:
        if count == 1:
            return [self.midpoint]
        return [self.point_at(i / (count - 1)) for i in range(count)]

    def contains_param(self, s: float, tol: float = 1e-12) -> bool:
        lo, hi = min(self.start, self.end), max(self.start, self.end)
        if self.cycle.is_closed:
            return (s - lo) % TWO_PI <= (hi - lo) + tol or (lo - s) % TWO_PI <= tol
        return lo - tol <= s <= hi + tol

    def distance_to(self, p: Point) -> float:
        if self.contains_param(self.cycle.param_of(p)):
            return abs(self.cycle.level(p))
        space = self.cycle.space
        return min(distance(space, p, self.start_point), distance(space, p, self.end_point))

    def reversed(self) -> "Arc":
        return Arc(self.cycle, self.end, self.start, self.owner)

    def transformed(self, iso: Isometry) -> "Arc":
        image = self.cycle.transformed(iso)
        s0 = image.param_of(iso.apply(self.start_point))
        s1 = image.param_of(iso.apply(self.end_point))
        if image.is_closed:
            # proper isometries keep the direction of travel; only the turn count is lost
            direction = 1.0 if self.increasing else -1.0
            delta = (direction * (s1 - s0)) % TWO_PI
            if self.span - delta > math.pi:
                delta += TWO_PI
            s1 = s0 + direction * delta
        return Arc(image, s0, s1, self.owner)


@dataclass(frozen=True, eq=False)
class ArcPolygon:
    """Compact intersection boundary, positively oriented, starting at its canonical vertex."""

    arcs: tuple
    space: SpaceKind

    def __post_init__(self):
        arcs = tuple(self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if not arcs:
            raise InvalidParameter("an arc polygon needs at least one arc")
        if len(arcs) > 1:
            if len(arcs) % 2:
                raise DegenerateConfiguration(f"odd arc count {len(arcs)}")
            for i, arc in enumerate(arcs):
                if arc.owner == arcs[(i + 1) % len(arcs)].owner:
                    raise DegenerateConfiguration("arc owners do not alternate")

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @property
    def vertices(self) -> list[Point]:
        if len(self.arcs) == 1:
            return []
        return [arc.start_point for arc in self.arcs]

    @property
    def owners(self) -> list[Owner]:
        return [arc.owner for arc in self.arcs]

    def arc_midpoints(self) -> list[Point]:
        return [arc.midpoint for arc in self.arcs]

    def sample_boundary(self, per_arc: int = 16) -> list[Point]:
        points: list[Point] = []
        for arc in self.arcs:
            points.extend(arc.sample(per_arc)[:-1] if per_arc > 1 else arc.sample(1))
        return points

    def distance_to_boundary(self, p: Point) -> float:
        return min(arc.distance_to(p) for arc in self.arcs)

    def transformed(self, iso: Isometry) -> "ArcPolygon":
        return ArcPolygon(tuple(arc.transformed(iso) for arc in self.arcs), self.space)

    def diameter(self, per_arc: int = 32) -> float:
        pts = self.sample_boundary(per_arc)
        return max((distance(self.space, p, q) for i, p in enumerate(pts) for q in pts[i + 1:]), default=0.0)

    def chart_outline(self, per_arc: int = 32) -> np.ndarray:
        chart = ModelChart.conformal(self.space)
        return np.array([to_chart(chart, p) for p in self.sample_boundary(per_arc)])

    def signed_chart_area(self, per_arc: int = 32) -> float:
        return _shoelace(self.chart_outline(per_arc))

    def contains_chart_point(self, u) -> bool:
        """Ray casting from u in direction +x against the exact arc footprints."""
        u = np.asarray(u, dtype=float)
        chart = ModelChart.conformal(self.space)
        crossings = 0
        for arc in self.arcs:
            for x in _ray_hits(arc.cycle.footprint(), u):
                hit = np.array([x, u[1]])
                if self.space.is_hyperbolic and hit @ hit >= 1.0 - DEFAULT_TOLERANCES.chart:
                    continue
                q = from_chart(chart, hit)
                if arc.contains_param(arc.cycle.param_of(q), 1e-12) and abs(arc.cycle.level(q)) < 1e-7:
                    crossings += 1
        return crossings % 2 == 1

    def contains(self, p: Point) -> bool:
        return self.contains_chart_point(to_chart(ModelChart.conformal(self.space), p))


def _shoelace(pts: np.ndarray) -> float:
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _ray_hits(fp, u: np.ndarray) -> list[float]:
    """x-coordinates > u_x where the horizontal line through u meets the footprint."""
    if fp.is_line:
        bx, by = fp.b
        if abs(bx) < 1e-15:
            return []
        x = -(fp.C + 2.0 * by * u[1]) / (2.0 * bx)
        return [x] if x > u[0] else []
    c = fp.center
    r = fp.radius
    dy = u[1] - c[1]
    rem = r * r - dy * dy
    if rem < 0:
        return []
    root = math.sqrt(rem)
    return [x for x in (c[0] - root, c[0] + root) if x > u[0]] if root > 0 else []


class ResultKind(str, Enum):
    EMPTY = "Empty"
    EMPTY_INTERIOR = "EmptyInterior"
    COMPACT = "Compact"
    NONCOMPACT = "Noncompact"


@dataclass(frozen=True)
class IntersectionResult:
    kind: ResultKind
    polygon: Optional[ArcPolygon] = None
    ideal: IdealSet = field(default_factory=IdealSet.empty)

    @property
    def is_compact(self) -> bool:
        return self.kind is ResultKind.COMPACT

    def describe(self) -> str:
        if self.kind is ResultKind.COMPACT:
            return f"Compact({self.polygon.arc_count})"
        if self.kind is ResultKind.NONCOMPACT:
            return f"Noncompact(ideal points: {self.ideal.describe()})"
        return self.kind.value


@dataclass
class _Entry:
    cycle: Cycle
    owner: Owner
    params: list = field(default_factory=list)   # (param, vertex id)


@dataclass
class _Piece:
    entry: _Entry
    start: float
    end: float
    v_start: Optional[int]
    v_end: Optional[int]

    def flipped(self) -> "_Piece":
        return _Piece(self.entry, self.end, self.start, self.v_end, self.v_start)


def _same_side(c1: Cycle, c2: Cycle) -> bool:
    if isinstance(c1, GeodesicCycle) and isinstance(c2, GeodesicCycle):
        return float(c1.base.covector @ c2.base.covector) > 0
    return True


def intersect_regions(a: Region, b: Region, strict: bool = True,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> IntersectionResult:
    """Intersection of two regions as an arc polygon, ideal set, or empty verdict.

    With strict=True, regions whose closures touch without common interior
    raise DegenerateContact; otherwise EmptyInterior is returned.
    """
    if a.space != b.space:
        raise InvalidParameter("regions of different spaces")
    space = a.space
    band = tol.boundary_band

    entries: list[_Entry] = []
    contact = False
    for region, owner in ((a, Owner.A), (b, Owner.B)):
        for cycle in region.boundary_components():
            twin = next((e for e in entries if e.cycle.same_as(cycle, tol.geometry)), None)
            if twin is None:
                entries.append(_Entry(cycle, owner))
            elif not _same_side(twin.cycle, cycle):
                contact = True

    def inside_both(p: Point) -> bool:
        return a.level(p) <= band and b.level(p) <= band

    vertices: list[Point] = []
    for i, ei in enumerate(entries):
        for ej in entries[i + 1:]:
            for v in intersect_cycles(ei.cycle, ej.cycle, tol):
                if not inside_both(v):
                    continue
                for ek in entries:
                    if ek is not ei and ek is not ej and abs(ek.cycle.level(v)) < tol.geometry:
                        raise DegenerateConfiguration("vertex lies on a third boundary cycle")
                vid = len(vertices)
                vertices.append(v)
                ei.params.append((ei.cycle.param_of(v), vid))
                ej.params.append((ej.cycle.param_of(v), vid))

    pieces: list[_Piece] = []
    unbounded = False
    for entry in entries:
        cycle = entry.cycle
        params = sorted(entry.params)
        candidates: list[_Piece] = []
        if cycle.is_closed:
            if not params:
                candidates.append(_Piece(entry, 0.0, TWO_PI, None, None))
            for k, (s, vid) in enumerate(params):
                s_next, vid_next = params[(k + 1) % len(params)]
                if k + 1 == len(params):
                    s_next += TWO_PI
                candidates.append(_Piece(entry, s, s_next, vid, vid_next))
        else:
            if not params:
                candidates.append(_Piece(entry, -math.inf, math.inf, None, None))
            else:
                candidates.append(_Piece(entry, -math.inf, params[0][0], None, params[0][1]))
                for (s, vid), (s_next, vid_next) in zip(params, params[1:]):
                    candidates.append(_Piece(entry, s, s_next, vid, vid_next))
                candidates.append(_Piece(entry, params[-1][0], math.inf, params[-1][1], None))
        for piece in candidates:
            if math.isinf(piece.start) and math.isinf(piece.end):
                probe = 0.0
            elif math.isinf(piece.start):
                probe = piece.end - 1.0
            elif math.isinf(piece.end):
                probe = piece.start + 1.0
            else:
                probe = 0.5 * (piece.start + piece.end)
            if inside_both(cycle.point_at(probe)):
                pieces.append(piece)
                if math.isinf(piece.start) or math.isinf(piece.end):
                    unbounded = True

    if contact or (vertices and not pieces):
        if strict:
            raise DegenerateContact("regions touch without common interior points")
        return IntersectionResult(ResultKind.EMPTY_INTERIOR)
    if not pieces:
        return IntersectionResult(ResultKind.EMPTY)

    ideal = a.ideal_set().intersection(b.ideal_set(), tol.ideal) if space.is_hyperbolic else IdealSet.empty()
    if unbounded or not ideal.is_empty or _reaches_boundary(space, vertices):
        return IntersectionResult(ResultKind.NONCOMPACT, ideal=ideal)

    polygon = _stitch(pieces, vertices, space)
    logger.debug("intersect_regions -> Compact(%d)", polygon.arc_count)
    return IntersectionResult(ResultKind.COMPACT, polygon=polygon)


def _reaches_boundary(space: SpaceKind, vertices: list[Point]) -> bool:
    if not space.is_hyperbolic:
        return False
    limit = 1.0 - 1e-6
    for v in vertices:
        if np.linalg.norm(to_chart(ModelChart.POINCARE, v)) >= limit:
            return True
    return False


def _stitch(pieces: list[_Piece], vertices: list[Point], space: SpaceKind) -> ArcPolygon:
    remaining = list(pieces)
    loop = [remaining.pop(0)]
    if loop[0].v_start is not None:
        while loop[-1].v_end != loop[0].v_start:
            target = loop[-1].v_end
            nxt = next((p for p in remaining if target in (p.v_start, p.v_end)), None)
            if nxt is None:
                raise DegenerateConfiguration("intersection boundary does not close")
            remaining.remove(nxt)
            loop.append(nxt if nxt.v_start == target else nxt.flipped())
    if remaining:
        raise DegenerateConfiguration("intersection boundary has several loops")

    arcs = [Arc(p.entry.cycle, p.start, p.end, p.entry.owner) for p in loop]
    polygon = ArcPolygon(tuple(arcs), space)
    if polygon.signed_chart_area() < 0:
        arcs = [arc.reversed() for arc in reversed(arcs)]
    if len(arcs) > 1:
        chart = ModelChart.conformal(space)

        def seed_key(i: int):
            u = to_chart(chart, arcs[i].start_point)
            return (round(float(u[0]), 12), round(float(u[1]), 12), arcs[i].owner.value)

        first = min(range(len(arcs)), key=seed_key)
        arcs = arcs[first:] + arcs[:first]
    return ArcPolygon(tuple(arcs), space)


def check_interleaving(polygon: ArcPolygon, tol: float = 1e-9) -> bool:
    """Adjacent arcs' cycles have four distinct ideal points in the cyclic order h11, h21, h12, h22."""
    if polygon.arc_count <= 2:
        return True
    for i, arc in enumerate(polygon.arcs):
        nxt = polygon.arcs[(i + 1) % polygon.arc_count]
        first = _ordered_ideal(arc)
        second = _ordered_ideal(nxt)
        if first is None or second is None:
            return False
        h11, h12 = first
        h21, h22 = second
        points = [h11, h21, h12, h22]
        if any(angle_close(p, q, tol) for k, p in enumerate(points) for q in points[k + 1:]):
            return False
        offsets = [(p - h11) % TWO_PI for p in (h21, h12, h22)]
        if not offsets[0] < offsets[1] < offsets[2]:
            return False
    return True


def membership_disagreements(polygon: ArcPolygon, a: Region, b: Region, points: Sequence[Point],
                             band: float = 1e-8) -> int:
    """Points where the traced polygon and `a and b` disagree, ignoring a band around either boundary."""
    count = 0
    for p in points:
        la, lb = a.level(p), b.level(p)
        if abs(la) <= band or abs(lb) <= band:
            continue
        if polygon.contains(p) != (la < 0 and lb < 0):
            count += 1
    return count


def _ordered_ideal(arc: Arc) -> Optional[tuple[float, float]]:
    cycle = arc.cycle
    if isinstance(cycle, Hypercycle):
        a, b = cycle.base.ideal_angles
    elif isinstance(cycle, GeodesicCycle) and cycle.space.is_hyperbolic:
        a, b = cycle.base.ideal_angles
    else:
        return None
    return (a, b) if arc.increasing else (b, a)


# -- reduction and inclusion lemmas ---------------------------------------------


def _on_closed_negative_side(g: Geodesic, h: Geodesic, tol: float = 1e-9) -> bool:
    return all(g.covector @ ideal_vector(t) <= tol for t in h.ideal_angles)


def lemma12_reduce(a: Padded, b: Padded, comp_a: int, comp_b: int,
                   tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[Padded, Padded]:
    """Replace two padded regions by the single-component regions of the chosen components.

    Valid when the chosen base lines share no finite point and at most one
    ideal point, and each core faces away from the other chosen line.
    """
    if not (0 <= comp_a < len(a.core.lines) and 0 <= comp_b < len(b.core.lines)):
        raise InvalidParameter("component index out of range")
    if not math.isclose(a.lam, b.lam, rel_tol=0, abs_tol=tol.geometry):
        raise InvalidParameter("the regions must share lambda")
    ga, gb = a.core.lines[comp_a], b.core.lines[comp_b]
    relation = classify_lines(ga, gb, tol)
    if relation not in (LineRelation.ULTRAPARALLEL, LineRelation.ASYMPTOTIC):
        raise HypothesisViolated(1, f"chosen base lines are {relation.value}")
    for region, g, h in ((a, ga, gb), (b, gb, ga)):
        if not _on_closed_negative_side(g, h, tol.ideal):
            clause = 3 if region.core.is_strip else 2
            raise HypothesisViolated(clause, "core does not face away from the other base line")
    return Padded(CoreSet((ga,)), a.lam), Padded(CoreSet((gb,)), b.lam)


def lemma31_inclusion(k_star: Padded, l_star: Padded, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Check the configuration in which K* lies in the interior of L*, then decide the inclusion.

    Both regions must be single-component. The base lines share no finite point
    and at most one ideal point; K lies on the side of its base line facing
    L's base line, while L lies on the side of its base line away from K's.
    """
    if len(k_star.core.lines) != 1 or len(l_star.core.lines) != 1:
        raise InvalidParameter("lemma31_inclusion takes single-component regions")
    gk, gl = k_star.core.lines[0], l_star.core.lines[0]
    relation = classify_lines(gk, gl, tol)
    if relation not in (LineRelation.ULTRAPARALLEL, LineRelation.ASYMPTOTIC):
        raise HypothesisViolated(1, f"base lines are {relation.value}")
    # K's hypercycle is on the negative side of gk; gl must be there too
    if not _on_closed_negative_side(gk, gl, tol.ideal):
        raise HypothesisViolated(2, "K does not lie on the side of its base line facing L's")
    # L's hypercycle is on the negative side of gl; gk must be on the positive side
    if not all(gl.covector @ ideal_vector(t) >= -tol.ideal for t in gk.ideal_angles):
        raise HypothesisViolated(3, "L lies on the side of its base line facing K")
    hk, hl = k_star.boundary_components()[0], l_star.boundary_components()[0]
    if intersect_cycles(hk, hl, tol):
        return False
    if l_star.level(hk.point_at(0.0)) >= 0:
        return False
    inner, outer = k_star.ideal_set(), l_star.ideal_set()
    return all(outer.contains(s, tol.ideal) and outer.contains(s + length, tol.ideal)
               for s, length in inner.arcs)


# -- constructions ---------------------------------------------------------------


def construct_rosette_region(count: int, half_width: float, lam: float,
                             pose: Optional[Isometry] = None, phase: float = 0.0) -> Padded:
    """Padded region with `count` congruent hypercycle components arranged count-fold.

    Component j cuts off the cap of ideal points centred at phase + 2 pi j / count
    with half-width `half_width`.
    """
    if count < 1:
        raise InvalidParameter("count must be positive")
    if not 0 < half_width < math.pi / count:
        raise InvalidParameter("caps must be non-empty and pairwise disjoint")
    lines = []
    for j in range(count):
        centre = phase + TWO_PI * j / count
        lines.append(geodesic_from_ideal(centre - half_width, centre + half_width))
    region = Padded(CoreSet(tuple(lines)), lam)
    return region.transformed(pose) if pose is not None else region


def construct_two_component_region(alpha: float, lam: float, pose: Optional[Isometry] = None) -> Padded:
    """Two-component padded region, centrally symmetric about pose(origin).

    Its ideal points k11, k12 and k21, k22 lie at -alpha/2, alpha/2 and
    pi - alpha/2, pi + alpha/2, so the lines k11 k21 and k12 k22 cross at the
    centre at angle alpha.
    """
    if not 0 < alpha < math.pi:
        raise InvalidParameter("alpha must lie in (0, pi)")
    return construct_rosette_region(2, alpha / 2.0, lam, pose)


# -- hull of two disks --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DiskHull:
    """Boundary of the convex hull of two disks: circle arcs joined by bitangent segments."""

    space: SpaceKind
    disks: tuple
    arcs: tuple
    segments: tuple

    @property
    def is_single_circle(self) -> bool:
        return not self.segments

    def sample_boundary(self, per_piece: int = 32) -> list[Point]:
        points: list[Point] = []
        for arc in self.arcs:
            points.extend(arc.sample(per_piece))
        for seg in self.segments:
            points.extend(seg.point_at(i / (per_piece - 1)) for i in range(per_piece))
        return points

    def distance_to_boundary(self, p: Point) -> float:
        dists = [arc.distance_to(p) for arc in self.arcs]
        dists.extend(seg.distance_to(p) for seg in self.segments)
        return min(dists)

    def transformed(self, iso: Isometry) -> "DiskHull":
        return DiskHull(
            self.space,
            tuple(d.transformed(iso) for d in self.disks),
            tuple(arc.transformed(iso) for arc in self.arcs),
            tuple(GeodesicSegment(iso.apply(s.start), iso.apply(s.end)) for s in self.segments),
        )


def outer_bitangents(d1: Disk, d2: Disk) -> list[Geodesic]:
    """The geodesics touching both disks with both disks on their positive side."""
    space = d1.space
    c1, c2 = d1.center.ambient, d2.center.ambient
    rows = np.array([c1, c2])
    sin_k = _trig(space)[1]
    rhs = np.array([sin_k(d1.radius), sin_k(d2.radius)])
    particular = np.linalg.lstsq(rows, rhs, rcond=None)[0]
    w = np.cross(c1, c2)
    q = _dual_form(space)
    qa = float(w @ q @ w)
    qb = float(particular @ q @ w)
    qc = float(particular @ q @ particular) - 1.0
    if abs(qa) < 1e-14:
        raise NestedDisks("no outer bitangents")
    disc = qb * qb - qa * qc
    if disc <= 0:
        raise NestedDisks("no outer bitangents, one disk contains the other")
    root = math.sqrt(disc)
    return [Geodesic(space, particular + ((-qb + sgn * root) / qa) * w) for sgn in (1.0, -1.0)]


def hull_union_disks(d1: Disk, d2: Disk, tol: Tolerances = DEFAULT_TOLERANCES) -> DiskHull:
    """Convex hull of two disks: two circle arcs and two bitangent segments."""
    if d1.space != d2.space:
        raise InvalidParameter("disks of different spaces")
    space = d1.space
    if space.is_spherical and max(d1.radius, d2.radius) >= math.pi / 2:
        raise InvalidParameter("hulls on S^2 need radii below pi/2")
    gap = distance(space, d1.center, d2.center)
    if gap < tol.geometry and abs(d1.radius - d2.radius) < tol.geometry:
        circle = d1.circle
        return DiskHull(space, (d1, d2), (Arc(circle, 0.0, TWO_PI, Owner.A),), ())
    if gap + min(d1.radius, d2.radius) <= max(d1.radius, d2.radius) + tol.geometry:
        raise NestedDisks("one disk lies inside the other; the hull is the larger disk")

    disks = (d1, d2)
    owners = (Owner.A, Owner.B)
    sides = []
    for g in outer_bitangents(d1, d2):
        feet = [g.project(d.center) for d in disks]
        params = [g.param_of(f) for f in feet]
        first = 0 if params[0] <= params[1] else 1
        sides.append((first, 1 - first, feet[first], feet[1 - first]))
    # each bitangent runs from one disk to the other; order them into a loop
    if sides[0][0] == sides[1][0]:
        raise DegenerateConfiguration("bitangents do not alternate between the disks")
    loop_arcs = []
    segments = []
    for k in range(2):
        src, dst, p_from, p_to = sides[k]
        nxt = sides[1 - k]
        segments.append(GeodesicSegment(p_from, p_to))
        circle = disks[dst].circle
        s0 = circle.param_of(p_to)
        s1 = circle.param_of(nxt[2])
        s1 = s0 + (s1 - s0) % TWO_PI
        loop_arcs.append(Arc(circle, s0, s1, owners[dst]))
    return DiskHull(space, disks, tuple(loop_arcs), tuple(segments))
