"""Cycles of the constant-curvature planes.

A cycle is a complete curve of constant geodesic curvature: a circle, a
paracycle (horocycle), a hypercycle (distance line) or a geodesic. In the
curved spaces every cycle is the trace of an affine plane {nu . x = k} on the
ambient surface, which is what makes the conformal footprints Euclidean
circles.
"""
from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Optional

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import CoincidentCycles, InvalidParameter, OutOfChartDomain, StepOutOfRange
from .space_core import (
    H2,
    TWO_PI,
    Geodesic,
    Isometry,
    ModelChart,
    Point,
    SpaceKind,
    _J,
    angle_between,
    base_point,
    distance,
    frame_at,
    from_chart,
    geodesic_from_ideal,
    minkowski,
    tangent_toward,
    transvection,
)

logger = logging.getLogger(__name__)

__all__ = [
    "Circle",
    "ConformalFootprint",
    "Cycle",
    "CycleKind",
    "Geodesic",
    "GeodesicCycle",
    "Hypercycle",
    "Paracycle",
    "conformal_footprint",
    "curvature",
    "finite_difference_curvature",
    "ideal_points",
    "intersect_cycles",
]


class CycleKind(str, Enum):
    CIRCLE = "circle"
    PARACYCLE = "paracycle"
    HYPERCYCLE = "hypercycle"
    GEODESIC = "geodesic"


@dataclass(frozen=True)
class ConformalFootprint:
    """Euclidean circle or line A|u|^2 + 2 b.u + C = 0 in the conformal chart.

    Coefficients are normalized to unit length. For H^2 only the part inside
    the open unit disk belongs to the cycle (`clipped_to_disk`).
    """

    A: float
    b: tuple
    C: float
    clipped_to_disk: bool = False

    @classmethod
    def from_coefficients(cls, A: float, b, C: float, clipped_to_disk: bool = False) -> "ConformalFootprint":
        b = np.asarray(b, dtype=float)
        scale = math.sqrt(A * A + float(b @ b) + C * C)
        if scale == 0:
            raise InvalidParameter("degenerate footprint")
        A, b, C = A / scale, b / scale, C / scale
        lead = next((v for v in (A, b[0], b[1]) if abs(v) > 1e-14), 1.0)
        if lead < 0:
            A, b, C = -A, -b, -C
        return cls(float(A), (float(b[0]), float(b[1])), float(C), clipped_to_disk)

    @property
    def b_vec(self) -> np.ndarray:
        return np.array(self.b)

    @property
    def is_line(self) -> bool:
        return abs(self.A) < 1e-12

    @property
    def center(self) -> np.ndarray:
        if self.is_line:
            raise InvalidParameter("a footprint line has no centre")
        return -self.b_vec / self.A

    @property
    def radius(self) -> float:
        if self.is_line:
            return math.inf
        return math.sqrt(max(float(self.b_vec @ self.b_vec) - self.A * self.C, 0.0)) / abs(self.A)

    def evaluate(self, u) -> float:
        u = np.asarray(u, dtype=float)
        return float(self.A * (u @ u) + 2.0 * (self.b_vec @ u) + self.C)

    def boundary_angles(self) -> tuple[float, ...]:
        """Angles where the footprint meets the unit circle."""
        bb = self.b_vec
        nb = float(np.linalg.norm(bb))
        if nb < 1e-15:
            return ()
        cos_val = -(self.A + self.C) / (2.0 * nb)
        if cos_val > 1.0 + 1e-12 or cos_val < -1.0 - 1e-12:
            return ()
        beta = math.atan2(bb[1], bb[0])
        delta = math.acos(max(-1.0, min(1.0, cos_val)))
        if delta < 1e-12:
            return (beta % TWO_PI,)
        return tuple(sorted(((beta - delta) % TWO_PI, (beta + delta) % TWO_PI)))

    def same_curve(self, other: "ConformalFootprint", tol: float) -> bool:
        mine = np.array([self.A, *self.b, self.C])
        theirs = np.array([other.A, *other.b, other.C])
        return bool(min(np.linalg.norm(mine - theirs), np.linalg.norm(mine + theirs)) < tol)


def _footprint_from_equation(space: SpaceKind, nu: np.ndarray, k: float) -> ConformalFootprint:
    if space.is_hyperbolic:
        return ConformalFootprint.from_coefficients(nu[0] + k, nu[1:], nu[0] - k, clipped_to_disk=True)
    if space.is_spherical:
        return ConformalFootprint.from_coefficients(nu[2] - k, nu[:2], -(nu[2] + k))
    # flat lines: u.p + w = 0
    return ConformalFootprint.from_coefficients(0.0, nu[:2] / 2.0, nu[2])


class Cycle(ABC):
    """Common interface of the four cycle kinds."""

    kind: ClassVar[CycleKind]
    space: SpaceKind

    # -- geometry ---------------------------------------------------------

    @abstractmethod
    def curvature(self) -> float:
        ...

    @abstractmethod
    def level(self, p: Point) -> float:
        """Signed level function; the convex side of the cycle is level <= 0."""

    @abstractmethod
    def point_at(self, s: float) -> Point:
        ...

    @abstractmethod
    def param_of(self, p: Point) -> float:
        """Parameter of the point of the cycle nearest p (exact for points on the cycle)."""

    @abstractmethod
    def transformed(self, iso: Isometry) -> "Cycle":
        ...

    @abstractmethod
    def footprint(self) -> ConformalFootprint:
        ...

    def ideal_points(self) -> tuple[float, ...]:
        return ()

    @property
    def speed(self) -> float:
        """Arclength per unit of parameter."""
        return 1.0

    @property
    def is_closed(self) -> bool:
        return False

    @property
    def period(self) -> float:
        return TWO_PI if self.is_closed else math.inf

    def contains_point(self, p: Point, tol: float = 1e-9) -> bool:
        return abs(self.level(p)) <= tol

    def sample(self, count: int, span: Optional[tuple[float, float]] = None) -> list[Point]:
        """`count` points evenly spaced in parameter over `span` (default: the whole closed cycle)."""
        if span is None:
            if not self.is_closed:
                raise InvalidParameter("open cycles need an explicit parameter span")
            return [self.point_at(TWO_PI * i / count) for i in range(count)]
        lo, hi = span
        if count == 1:
            return [self.point_at(0.5 * (lo + hi))]
        return [self.point_at(lo + (hi - lo) * i / (count - 1)) for i in range(count)]

    def same_as(self, other: "Cycle", tol: float = 1e-9) -> bool:
        """Equality as point sets."""
        if other.space != self.space:
            return False
        return self.footprint().same_curve(other.footprint(), tol)


@dataclass(frozen=True, eq=False)
class Circle(Cycle):
    """Circle of radius r about `center`; on S^2 radii above pi/2 are replaced by
    the complementary radius about the antipodal centre."""

    space: SpaceKind
    center: Point
    radius: float

    kind: ClassVar[CycleKind] = CycleKind.CIRCLE

    def __post_init__(self):
        if self.center.space != self.space:
            raise InvalidParameter("circle centre in another space")
        if not self.radius > 0:
            raise InvalidParameter(f"circle radius must be positive, got {self.radius}")
        if self.space.is_spherical:
            if self.radius >= math.pi:
                raise InvalidParameter("spherical circle radius must be below pi")
            if self.radius > math.pi / 2:
                object.__setattr__(self, "center", Point(self.space, -self.center.coords))
                object.__setattr__(self, "radius", math.pi - self.radius)

    def curvature(self) -> float:
        r = self.radius
        if self.space.is_hyperbolic:
            return 1.0 / math.tanh(r)
        if self.space.is_spherical:
            return math.cos(r) / math.sin(r)
        return 1.0 / r

    def level(self, p: Point) -> float:
        return distance(self.space, self.center, p) - self.radius

    @property
    def speed(self) -> float:
        if self.space.is_hyperbolic:
            return math.sinh(self.radius)
        if self.space.is_spherical:
            return math.sin(self.radius)
        return self.radius

    @property
    def is_closed(self) -> bool:
        return True

    def equation(self) -> tuple[np.ndarray, float]:
        c = self.center.coords
        if self.space.is_hyperbolic:
            return -(_J(3) @ c), math.cosh(self.radius)
        if self.space.is_spherical:
            return c.copy(), math.cos(self.radius)
        raise InvalidParameter("flat circles have no linear equation")

    def point_at(self, s: float) -> Point:
        e1, e2 = frame_at(self.space, self.center)
        direction = math.cos(s) * e1 + math.sin(s) * e2
        r = self.radius
        if self.space.is_flat:
            return Point(self.space, self.center.coords + r * direction[:-1])
        if self.space.is_hyperbolic:
            return Point(self.space, math.cosh(r) * self.center.coords + math.sinh(r) * direction)
        return Point(self.space, math.cos(r) * self.center.coords + math.sin(r) * direction)

    def param_of(self, p: Point) -> float:
        e1, e2 = frame_at(self.space, self.center)
        v = tangent_toward(self.space, self.center, p.ambient)
        g = self.space.form() if not self.space.is_flat else np.eye(3)
        return math.atan2(float(v @ g @ e2), float(v @ g @ e1)) % TWO_PI

    def transformed(self, iso: Isometry) -> "Circle":
        return Circle(self.space, iso.apply(self.center), self.radius)

    def footprint(self) -> ConformalFootprint:
        if self.space.is_flat:
            c = self.center.coords
            return ConformalFootprint.from_coefficients(1.0, -c, float(c @ c) - self.radius ** 2)
        nu, k = self.equation()
        return _footprint_from_equation(self.space, nu, k)

    def __repr__(self) -> str:
        return f"Circle({self.space}, center={self.center!r}, r={self.radius:.6g})"


def _boost_x(beta: float) -> np.ndarray:
    return np.array([[math.cosh(beta), math.sinh(beta), 0.0],
                     [math.sinh(beta), math.cosh(beta), 0.0],
                     [0.0, 0.0, 1.0]])


def _rotation_h(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


@dataclass(frozen=True, eq=False)
class Paracycle(Cycle):
    """Horocycle of H^2 with ideal point at boundary angle `ideal_point`.

    `horo_param` is the signed Poincare-chart coordinate t in (-1, 1) of the
    point where the horocycle crosses the diameter through its ideal point,
    so that point sits at t * (cos a, sin a).
    """

    ideal_point: float
    horo_param: float
    space: SpaceKind = H2

    kind: ClassVar[CycleKind] = CycleKind.PARACYCLE

    def __post_init__(self):
        if not self.space.is_hyperbolic:
            raise InvalidParameter("paracycles exist in H^2 only")
        if not -1.0 < self.horo_param < 1.0:
            raise InvalidParameter("horo_param must lie in (-1, 1)")
        object.__setattr__(self, "ideal_point", self.ideal_point % TWO_PI)

    @classmethod
    def from_null_vector(cls, ell: np.ndarray) -> "Paracycle":
        """Horocycle {<x, ell> = -1} for a future-pointing null vector ell."""
        lam = float(ell[0])
        theta = math.atan2(ell[2], ell[1])
        return cls(theta, (lam - 1.0) / (lam + 1.0))

    @property
    def null_vector(self) -> np.ndarray:
        lam = (1.0 + self.horo_param) / (1.0 - self.horo_param)
        a = self.ideal_point
        return lam * np.array([1.0, math.cos(a), math.sin(a)])

    @property
    def axis_point(self) -> Point:
        """Where the horocycle meets the diameter through its ideal point (k' in the proofs)."""
        a = self.ideal_point
        return from_chart(ModelChart.POINCARE, self.horo_param * np.array([math.cos(a), math.sin(a)]))

    def _standard_map(self) -> np.ndarray:
        lam = (1.0 + self.horo_param) / (1.0 - self.horo_param)
        return _rotation_h(self.ideal_point) @ _boost_x(math.log(lam))

    def curvature(self) -> float:
        return 1.0

    def level(self, p: Point) -> float:
        return math.log(-minkowski(p.coords, self.null_vector))

    def equation(self) -> tuple[np.ndarray, float]:
        return _J(3) @ self.null_vector, -1.0

    def point_at(self, s: float) -> Point:
        standard = np.array([1.0 + 0.5 * s * s, 0.5 * s * s, s])
        return Point(self.space, self._standard_map() @ standard)

    def param_of(self, p: Point) -> float:
        m = self._standard_map()
        q = _J(3) @ m.T @ _J(3) @ p.coords
        # project to the standard horocycle along the geodesic to the ideal point
        return float(q[2] / (q[0] - q[1]))

    def ideal_points(self) -> tuple[float, ...]:
        return (self.ideal_point,)

    def transformed(self, iso: Isometry) -> "Paracycle":
        return Paracycle.from_null_vector(iso.matrix @ self.null_vector)

    def footprint(self) -> ConformalFootprint:
        nu, k = self.equation()
        return _footprint_from_equation(self.space, nu, k)

    def __repr__(self) -> str:
        return f"Paracycle(ideal={self.ideal_point:.6g}, t={self.horo_param:.6g})"


@dataclass(frozen=True, eq=False)
class Hypercycle(Cycle):
    """Distance line at distance l from `base`, on the side `side` (+1 left, -1 right)."""

    base: Geodesic
    distance: float
    side: int = 1

    kind: ClassVar[CycleKind] = CycleKind.HYPERCYCLE

    def __post_init__(self):
        if not self.base.space.is_hyperbolic:
            raise InvalidParameter("hypercycles exist in H^2 only")
        if not self.distance > 0:
            raise InvalidParameter("hypercycle distance must be positive")
        if self.side not in (1, -1):
            raise InvalidParameter("side must be +1 or -1")

    @property
    def space(self) -> SpaceKind:
        return self.base.space

    def curvature(self) -> float:
        return math.tanh(self.distance)

    def level(self, p: Point) -> float:
        return self.side * self.base.signed_distance(p) - self.distance

    def equation(self) -> tuple[np.ndarray, float]:
        return self.base.covector.copy(), math.sinh(self.side * self.distance)

    @property
    def speed(self) -> float:
        return math.cosh(self.distance)

    def point_at(self, s: float) -> Point:
        o, t = self.base.frame()
        n = self.base.normal
        l = self.distance
        v = math.cosh(l) * (math.cosh(s) * o + math.sinh(s) * t) + self.side * math.sinh(l) * n
        return Point(self.space, v)

    def param_of(self, p: Point) -> float:
        return self.base.param_of(p)

    def ideal_points(self) -> tuple[float, ...]:
        return tuple(sorted(self.base.ideal_angles))

    def transformed(self, iso: Isometry) -> "Hypercycle":
        return Hypercycle(self.base.transformed(iso), self.distance, self.side)

    def footprint(self) -> ConformalFootprint:
        nu, k = self.equation()
        return _footprint_from_equation(self.space, nu, k)

    def __repr__(self) -> str:
        return f"Hypercycle({self.base!r}, l={self.distance:.6g}, side={self.side:+d})"


@dataclass(frozen=True, eq=False)
class GeodesicCycle(Cycle):
    """A geodesic viewed as a cycle of curvature zero; its convex side is the left one."""

    base: Geodesic

    kind: ClassVar[CycleKind] = CycleKind.GEODESIC

    @property
    def space(self) -> SpaceKind:
        return self.base.space

    @property
    def is_closed(self) -> bool:
        return self.space.is_spherical

    def curvature(self) -> float:
        return 0.0

    def level(self, p: Point) -> float:
        return -self.base.signed_distance(p)

    def equation(self) -> tuple[np.ndarray, float]:
        return self.base.covector.copy(), 0.0

    def point_at(self, s: float) -> Point:
        return self.base.point_at(s)

    def param_of(self, p: Point) -> float:
        s = self.base.param_of(p)
        return s % TWO_PI if self.is_closed else s

    def ideal_points(self) -> tuple[float, ...]:
        if not self.space.is_hyperbolic:
            return ()
        return tuple(sorted(self.base.ideal_angles))

    def transformed(self, iso: Isometry) -> "GeodesicCycle":
        return GeodesicCycle(self.base.transformed(iso))

    def footprint(self) -> ConformalFootprint:
        nu, k = self.equation()
        return _footprint_from_equation(self.space, nu, k)

    def __repr__(self) -> str:
        return f"GeodesicCycle({self.base!r})"


def curvature(c: Cycle) -> float:
    return c.curvature()


def ideal_points(c: Cycle) -> tuple[float, ...]:
    return c.ideal_points()


def conformal_footprint(c: Cycle) -> ConformalFootprint:
    return c.footprint()


def finite_difference_curvature(c: Cycle, arclength_step: float, at: float = 0.0) -> float:
    """Geodesic curvature from three points spaced `arclength_step` apart.

    The turning angle delta between the chords at the middle point and the
    chord length a give kappa = 2 sin(delta / 2) / a, which is exact for
    Euclidean circles and accurate to second order in the step otherwise.

    The cycle is first moved so that the point at `at` sits on the base point.
    Far from the base point the ambient coordinates grow like cosh of the
    distance and the short chords lose their digits to cancellation.
    """
    if not 1e-6 < arclength_step < 1e-2:
        raise StepOutOfRange(f"arclength step {arclength_step} outside (1e-6, 1e-2)")
    space = c.space
    local = c.transformed(transvection(space, c.point_at(at)).inverse())
    t0 = local.param_of(base_point(space))
    dp = arclength_step / local.speed
    x_prev, x_mid, x_next = (local.point_at(t0 + k * dp) for k in (-1, 0, 1))
    back = tangent_toward(space, x_mid, x_prev.ambient)
    ahead = tangent_toward(space, x_mid, x_next.ambient)
    turning = math.pi - angle_between(space, back, ahead)
    chord = 0.5 * (distance(space, x_mid, x_prev) + distance(space, x_mid, x_next))
    return 2.0 * math.sin(turning / 2.0) / chord


# -- intersections --------------------------------------------------------------


def _solve_footprints(f1: ConformalFootprint, f2: ConformalFootprint, tangency: float) -> list[np.ndarray]:
    if f1.is_line and f2.is_line:
        m = 2.0 * np.array([f1.b, f2.b])
        rhs = -np.array([f1.C, f2.C])
        if abs(np.linalg.det(m)) < 1e-14:
            return []
        return [np.linalg.solve(m, rhs)]
    # radical line A2*f1 - A1*f2, then intersect with the footprint that is a true circle
    circle = f1 if abs(f1.A) >= abs(f2.A) else f2
    m = 2.0 * (f2.A * f1.b_vec - f1.A * f2.b_vec)
    h = f2.A * f1.C - f1.A * f2.C
    norm_m = float(np.linalg.norm(m))
    if norm_m < 1e-14:
        return []
    u0 = -h * m / norm_m ** 2
    d = np.array([-m[1], m[0]]) / norm_m
    a = circle.A
    half_b = float(circle.b_vec @ d)
    c0 = circle.evaluate(u0)
    disc = (half_b * half_b - a * c0) / (a * a)
    if disc < -tangency:
        return []
    if disc <= tangency:
        return [u0 - (half_b / a) * d]
    root = math.sqrt(disc)
    return [u0 + (-half_b / a - root) * d, u0 + (-half_b / a + root) * d]


def intersect_cycles(c1: Cycle, c2: Cycle, tol: Tolerances = DEFAULT_TOLERANCES) -> list[Point]:
    """Common points of two distinct cycles (0, 1 or 2 points).

    Solved as Euclidean circle algebra on the conformal footprints and mapped
    back through the chart; on H^2 only points inside the open disk count.
    """
    if c1.space != c2.space:
        raise InvalidParameter("cycles of different spaces")
    space = c1.space
    f1, f2 = c1.footprint(), c2.footprint()
    if f1.same_curve(f2, tol.geometry):
        raise CoincidentCycles("cycles coincide as point sets")
    chart = ModelChart.conformal(space)
    points: list[Point] = []
    for u in _solve_footprints(f1, f2, tol.tangency):
        if space.is_hyperbolic and u @ u >= 1.0 - 1e-9:
            continue
        try:
            points.append(from_chart(chart, u))
        except OutOfChartDomain:
            continue
    if space.is_spherical:
        north = Point(space, np.array([0.0, 0.0, 1.0]))
        if c1.contains_point(north, 1e-12) and c2.contains_point(north, 1e-12):
            points.append(north)
    if len(points) == 2 and distance(space, points[0], points[1]) < math.sqrt(tol.tangency):
        points = [points[0]]
    logger.debug("intersect_cycles %r, %r -> %d points", c1, c2, len(points))
    return points


def hypercycle_between(a: float, b: float, lam: float, side: int = 1) -> Hypercycle:
    """Hypercycle at distance lam over the geodesic with ideal points a -> b."""
    return Hypercycle(geodesic_from_ideal(a, b), lam, side)
