"""Points, distances, geodesics, isometries and model charts.

Every space stores points in ambient coordinates: the unit sphere in R^(d+1)
for S^d, the upper sheet of the hyperboloid <x,x> = -1 in R^(d,1) for H^d,
and homogeneous coordinates (x, 1) for R^d. Isometries are then (d+1)x(d+1)
matrices acting linearly, and charts are derived views of the ambient store.

Geodesics of the two-dimensional spaces are stored as covectors nu: the line
is {x : nu . x = 0} and its positive (left) side is {nu . x > 0}.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..config import DEFAULT_TOLERANCES, Tolerances
from ..errors import (
    AntipodalPair,
    GeometryError,
    InvalidParameter,
    LinesAsymptotic,
    LinesIntersect,
    OutOfChartDomain,
)

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class SpaceKind:
    """One of S^d, R^d, H^d for d in {2, 3}."""

    curvature_sign: int
    dimension: int = 2

    def __post_init__(self):
        if self.curvature_sign not in (1, 0, -1):
            raise InvalidParameter(f"curvature_sign must be +1, 0 or -1, got {self.curvature_sign}")
        if self.dimension not in (2, 3):
            raise InvalidParameter(f"dimension must be 2 or 3, got {self.dimension}")

    @property
    def name(self) -> str:
        return {1: "S", 0: "E", -1: "H"}[self.curvature_sign] + str(self.dimension)

    @property
    def ambient_dim(self) -> int:
        return self.dimension + 1

    @property
    def is_spherical(self) -> bool:
        return self.curvature_sign == 1

    @property
    def is_flat(self) -> bool:
        return self.curvature_sign == 0

    @property
    def is_hyperbolic(self) -> bool:
        return self.curvature_sign == -1

    def form(self) -> np.ndarray:
        """Gram matrix of the ambient bilinear form (degenerate for flat space)."""
        n = self.ambient_dim
        if self.is_spherical:
            return np.eye(n)
        if self.is_hyperbolic:
            g = np.eye(n)
            g[0, 0] = -1.0
            return g
        g = np.eye(n)
        g[-1, -1] = 0.0
        return g

    @classmethod
    def from_name(cls, name: str) -> "SpaceKind":
        try:
            sign = {"S": 1, "E": 0, "R": 0, "H": -1}[name[0].upper()]
            return cls(sign, int(name[1:]))
        except (KeyError, ValueError, IndexError):
            raise InvalidParameter(f"unknown space name: {name!r}") from None

    def __str__(self) -> str:
        return self.name


S2 = SpaceKind(1, 2)
E2 = SpaceKind(0, 2)
H2 = SpaceKind(-1, 2)
S3 = SpaceKind(1, 3)
E3 = SpaceKind(0, 3)
H3 = SpaceKind(-1, 3)


def minkowski(x: np.ndarray, y: np.ndarray) -> float:
    return float(-x[0] * y[0] + np.dot(x[1:], y[1:]))


def _J(n: int) -> np.ndarray:
    g = np.eye(n)
    g[0, 0] = -1.0
    return g


def inner(space: SpaceKind, x: np.ndarray, y: np.ndarray) -> float:
    """Ambient form of `space` (Euclidean on the affine part for flat space)."""
    if space.is_hyperbolic:
        return minkowski(x, y)
    if space.is_spherical:
        return float(np.dot(x, y))
    return float(np.dot(x[:-1], y[:-1]))


def _normalize_ambient(space: SpaceKind, v: np.ndarray) -> np.ndarray:
    if space.is_spherical:
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvalidParameter("zero vector is not a point of the sphere")
        return v / norm
    if space.is_hyperbolic:
        q = -minkowski(v, v)
        if q <= 0:
            raise InvalidParameter("vector is not timelike, not a point of H^d")
        w = v / math.sqrt(q)
        return w if w[0] > 0 else -w
    if v[-1] == 0:
        raise InvalidParameter("point at infinity is not a point of R^d")
    return v / v[-1]


class Point:
    """A location in S^d, R^d or H^d.

    `coords` has length d+1 for the curved spaces (ambient embedding) and
    length d for flat space; `ambient` is homogeneous in the flat case.
    """

    __slots__ = ("space", "coords")

    def __init__(self, space: SpaceKind, coords, normalize: bool = True):
        arr = np.asarray(coords, dtype=float)
        expected = space.dimension if space.is_flat else space.ambient_dim
        if arr.shape != (expected,):
            raise InvalidParameter(f"{space} point needs {expected} coordinates, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidParameter("point coordinates must be finite")
        if normalize and not space.is_flat:
            arr = _normalize_ambient(space, arr)
        arr.setflags(write=False)
        self.space = space
        self.coords = arr

    @classmethod
    def from_ambient(cls, space: SpaceKind, v) -> "Point":
        v = np.asarray(v, dtype=float)
        if space.is_flat:
            if abs(v[-1]) < 1e-300:
                raise InvalidParameter("point at infinity is not a point of R^d")
            return cls(space, v[:-1] / v[-1])
        return cls(space, v)

    @property
    def ambient(self) -> np.ndarray:
        if self.space.is_flat:
            return np.append(self.coords, 1.0)
        return self.coords

    def isclose(self, other: "Point", tol: float = 1e-8) -> bool:
        return distance(self.space, self, other) < tol

    def __repr__(self) -> str:
        body = ", ".join(f"{c:.6g}" for c in self.coords)
        return f"Point({self.space}, [{body}])"


def base_point(space: SpaceKind) -> Point:
    """The reference point: south pole, hyperboloid apex, or origin."""
    if space.is_flat:
        return Point(space, np.zeros(space.dimension))
    v = np.zeros(space.ambient_dim)
    if space.is_spherical:
        v[-1] = -1.0
    else:
        v[0] = 1.0
    return Point(space, v)


def _check_space(space: SpaceKind, *points: Point):
    for p in points:
        if p.space != space:
            raise InvalidParameter(f"point of {p.space} used in {space}")


def distance(space: SpaceKind, p: Point, q: Point) -> float:
    """Geodesic distance; stable for nearby and (on S^d) nearly antipodal points."""
    _check_space(space, p, q)
    if space.is_flat:
        return float(np.linalg.norm(p.coords - q.coords))
    x, y = p.coords, q.coords
    if space.is_spherical:
        return float(2.0 * math.atan2(np.linalg.norm(x - y), np.linalg.norm(x + y)))
    diff = x - y
    chord2 = max(minkowski(diff, diff), 0.0)
    return float(2.0 * math.asinh(math.sqrt(chord2) / 2.0))


def _trig(space: SpaceKind):
    """(cos_k, sin_k) of the space's curvature."""
    if space.is_spherical:
        return math.cos, math.sin
    if space.is_hyperbolic:
        return math.cosh, math.sinh
    return (lambda s: 1.0), (lambda s: s)


def geodesic_point(space: SpaceKind, p: Point, q: Point, t: float) -> Point:
    """Point at fraction t of the way from p to q along the geodesic."""
    _check_space(space, p, q)
    if space.is_flat:
        return Point(space, (1 - t) * p.coords + t * q.coords)
    x, y = p.coords, q.coords
    if space.is_spherical and np.linalg.norm(x + y) < 1e-12:
        raise AntipodalPair("geodesic between antipodal points is not unique")
    d = distance(space, p, q)
    if d < 1e-15:
        return p
    _, sin_k = _trig(space)
    v = (sin_k((1 - t) * d) * x + sin_k(t * d) * y) / sin_k(d)
    return Point(space, v)


def midpoint(space: SpaceKind, p: Point, q: Point) -> Point:
    return geodesic_point(space, p, q, 0.5)


def tangent_toward(space: SpaceKind, x: Point, target: np.ndarray) -> np.ndarray:
    """Unit tangent vector at x pointing along the geodesic toward `target`.

    `target` is an ambient vector: a point, or on H^2 a null vector naming an
    ideal point.
    """
    xa = x.ambient
    if space.is_hyperbolic:
        v = target + minkowski(target, xa) * xa
    elif space.is_spherical:
        v = target - np.dot(target, xa) * xa
    else:
        tgt = np.asarray(target, dtype=float)
        v = tgt - xa if tgt[-1] != 0 else tgt.copy()
        v[-1] = 0.0
    norm2 = inner(space, v, v)
    if norm2 <= 0:
        raise GeometryError("target coincides with the base of the tangent vector")
    return v / math.sqrt(norm2)


def angle_between(space: SpaceKind, u: np.ndarray, v: np.ndarray) -> float:
    """Angle in [0, pi] between two unit tangent vectors at the same point."""
    d, s = u - v, u + v
    # half-angle form stays accurate near 0 and pi
    return 2.0 * math.atan2(math.sqrt(max(inner(space, d, d), 0.0)), math.sqrt(max(inner(space, s, s), 0.0)))


def tangent_angle(space: SpaceKind, x: Point, p: Point, q: Point) -> float:
    """Angle at x of the geodesic triangle x p q."""
    return angle_between(space, tangent_toward(space, x, p.ambient), tangent_toward(space, x, q.ambient))


# -- isometries ---------------------------------------------------------------


class Isometry:
    """A congruence of the space, stored as a form-preserving matrix.

    For flat space the matrix is homogeneous: a rotation block plus a
    translation column.
    """

    __slots__ = ("space", "matrix")

    def __init__(self, space: SpaceKind, matrix, check: bool = True, proper: bool = True,
                 tol: Tolerances = DEFAULT_TOLERANCES):
        m = np.array(matrix, dtype=float)
        n = space.ambient_dim
        if m.shape != (n, n):
            raise InvalidParameter(f"{space} isometry needs a {n}x{n} matrix")
        if check:
            residual = _form_residual(space, m)
            if residual > tol.form:
                raise InvalidParameter(f"matrix does not preserve the form (residual {residual:.3g})")
            if proper and np.linalg.det(m) < 0:
                raise InvalidParameter("isometry is not orientation preserving")
        m.setflags(write=False)
        self.space = space
        self.matrix = m

    @classmethod
    def identity(cls, space: SpaceKind) -> "Isometry":
        return cls(space, np.eye(space.ambient_dim), check=False)

    def compose(self, other: "Isometry") -> "Isometry":
        """self after other."""
        if other.space != self.space:
            raise InvalidParameter("isometries of different spaces")
        return Isometry(self.space, self.matrix @ other.matrix, check=False)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return self.compose(other)

    def inverse(self) -> "Isometry":
        m = self.matrix
        if self.space.is_spherical:
            inv = m.T
        elif self.space.is_hyperbolic:
            j = _J(m.shape[0])
            inv = j @ m.T @ j
        else:
            d = m.shape[0] - 1
            rot_t = m[:d, :d].T
            inv = np.eye(d + 1)
            inv[:d, :d] = rot_t
            inv[:d, d] = -rot_t @ m[:d, d]
        return Isometry(self.space, inv, check=False)

    def apply(self, p: Point) -> Point:
        return apply(self, p)

    def apply_vector(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v

    def apply_covector(self, nu: np.ndarray) -> np.ndarray:
        """Image of a covector: nu' . (M x) = nu . x."""
        return self.inverse().matrix.T @ nu

    @property
    def is_proper(self) -> bool:
        return bool(np.linalg.det(self.matrix) > 0)

    def form_residual(self) -> float:
        return _form_residual(self.space, self.matrix)

    def __repr__(self) -> str:
        return f"Isometry({self.space}, {np.array2string(self.matrix, precision=4)})"


def _form_residual(space: SpaceKind, m: np.ndarray) -> float:
    if space.is_flat:
        d = m.shape[0] - 1
        rot = m[:d, :d]
        last = np.zeros(d + 1)
        last[-1] = 1.0
        return float(max(np.max(np.abs(rot.T @ rot - np.eye(d))), np.max(np.abs(m[d] - last))))
    g = space.form()
    return float(np.max(np.abs(m.T @ g @ m - g)))


def apply(iso: Isometry, p: Point) -> Point:
    """Image of p; curved results are renormalized onto the constraint surface."""
    if iso.space != p.space:
        raise InvalidParameter(f"isometry of {iso.space} applied to point of {p.space}")
    return Point.from_ambient(p.space, iso.matrix @ p.ambient)


def rotation_about_base(space: SpaceKind, theta: float) -> Isometry:
    """Rotation by theta about the base point, counter-clockwise in the charts."""
    m = np.eye(space.ambient_dim)
    c, s = math.cos(theta), math.sin(theta)
    i, j = (1, 2) if space.is_hyperbolic else (0, 1)
    m[i, i], m[i, j], m[j, i], m[j, j] = c, -s, s, c
    return Isometry(space, m, check=False)


def _plane_rotation(n: int, a: np.ndarray, b: np.ndarray, cos_t: float, sin_t: float,
                    hyperbolic: bool) -> np.ndarray:
    """Rotation (or boost) of the plane spanned by orthonormal a, b: a -> cos a + sin b."""
    if hyperbolic:
        return (np.eye(n) + (cos_t - 1.0) * (np.outer(a, a) + np.outer(b, b))
                + sin_t * (np.outer(b, a) + np.outer(a, b)))
    return (np.eye(n) + (cos_t - 1.0) * (np.outer(a, a) + np.outer(b, b))
            + sin_t * (np.outer(b, a) - np.outer(a, b)))


def transvection(space: SpaceKind, p: Point) -> Isometry:
    """Translation along the geodesic from the base point to p."""
    _check_space(space, p)
    n = space.ambient_dim
    if space.is_flat:
        m = np.eye(n)
        m[:-1, -1] = p.coords
        return Isometry(space, m, check=False)
    base = base_point(space).coords
    x = p.coords
    d = distance(space, base_point(space), p)
    if d < 1e-15:
        return Isometry.identity(space)
    if space.is_hyperbolic:
        direction = x.copy()
        direction[0] = 0.0
    else:
        direction = x - np.dot(x, base) * base
        if np.linalg.norm(direction) < 1e-14:
            direction = np.zeros(n)
            direction[0] = 1.0
    direction = direction / np.linalg.norm(direction)
    cos_k, sin_k = _trig(space)
    m = _plane_rotation(n, base, direction, cos_k(d), sin_k(d), space.is_hyperbolic)
    return Isometry(space, m, check=False)


def point_at_polar(space: SpaceKind, dist: float, angle: float) -> Point:
    """Point at geodesic distance `dist` from the base point in direction `angle` (d=2)."""
    if space.dimension != 2:
        raise InvalidParameter("polar coordinates are two-dimensional")
    tangent = np.zeros(space.ambient_dim)
    i = 1 if space.is_hyperbolic else 0
    tangent[i], tangent[i + 1] = math.cos(angle), math.sin(angle)
    return exp_from(space, base_point(space), tangent, dist)


def exp_from(space: SpaceKind, x: Point, unit_tangent: np.ndarray, dist: float) -> Point:
    """Point reached from x after `dist` along the unit tangent direction."""
    if space.is_flat:
        return Point(space, x.coords + dist * unit_tangent[:-1])
    cos_k, sin_k = _trig(space)
    return Point(space, cos_k(dist) * x.coords + sin_k(dist) * unit_tangent)


def base_frame(space: SpaceKind) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal tangent frame (e1, e2) at the base point, positively oriented."""
    n = space.ambient_dim
    e1, e2 = np.zeros(n), np.zeros(n)
    i = 1 if space.is_hyperbolic else 0
    e1[i], e2[i + 1] = 1.0, 1.0
    return e1, e2


def frame_at(space: SpaceKind, c: Point) -> tuple[np.ndarray, np.ndarray]:
    """Positively oriented orthonormal frame at c (transported from the base point)."""
    m = transvection(space, c).matrix
    e1, e2 = base_frame(space)
    return m @ e1, m @ e2


def point_reflection(space: SpaceKind, c: Point) -> Isometry:
    """Central symmetry through c; on S^d the maps for c and -c coincide."""
    _check_space(space, c)
    n = space.ambient_dim
    proper = space.dimension % 2 == 0
    if space.is_spherical:
        m = 2.0 * np.outer(c.coords, c.coords) - np.eye(n)
    elif space.is_hyperbolic:
        m = -np.eye(n) - 2.0 * np.outer(c.coords, c.coords) @ _J(n)
    else:
        m = -np.eye(n)
        m[-1, -1] = 1.0
        m[:-1, -1] = 2.0 * c.coords
    return Isometry(space, m, check=False, proper=proper)


def random_direction(rng: np.random.Generator, dimension: int) -> np.ndarray:
    v = rng.normal(size=dimension)
    return v / np.linalg.norm(v)


def _random_rotation_block(rng: np.random.Generator, dimension: int) -> np.ndarray:
    if dimension == 2:
        t = rng.uniform(0.0, TWO_PI)
        return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    q, r = np.linalg.qr(rng.normal(size=(dimension, dimension)))
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def _embed_rotation(space: SpaceKind, block: np.ndarray) -> Isometry:
    m = np.eye(space.ambient_dim)
    d = space.dimension
    if space.is_hyperbolic:
        m[1:, 1:] = block
    else:
        m[:d, :d] = block
    return Isometry(space, m, check=False)


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_point(space: SpaceKind, seed, radius_bound: float) -> Point:
    """Point at distance <= radius_bound from the base point."""
    rng = _as_rng(seed)
    dist = rng.uniform(0.0, radius_bound)
    return _displace_base(space, random_direction(rng, space.dimension), dist)


def _displace_base(space: SpaceKind, direction: np.ndarray, dist: float) -> Point:
    tangent = np.zeros(space.ambient_dim)
    if space.is_hyperbolic:
        tangent[1:] = direction
    else:
        tangent[:space.dimension] = direction
    return exp_from(space, base_point(space), tangent, dist)


def random_isometry(space: SpaceKind, seed, radius_bound: float) -> Isometry:
    """Deterministic random congruence moving the base point at most radius_bound."""
    if radius_bound < 0:
        raise InvalidParameter("radius_bound must be non-negative")
    rng = _as_rng(seed)
    rotation = _embed_rotation(space, _random_rotation_block(rng, space.dimension))
    if radius_bound == 0:
        return rotation
    target = random_point(space, rng, radius_bound)
    return transvection(space, target) @ rotation


def perturbation(space: SpaceKind, seed, magnitude: float, about: Optional[Point] = None) -> Isometry:
    """Displacement by exactly `magnitude` composed with a rotation by at most `magnitude`.

    The perturbation is conjugated to act around `about` (default: the base point).
    """
    rng = _as_rng(seed)
    target = _displace_base(space, random_direction(rng, space.dimension), magnitude)
    if space.dimension == 2:
        rotation = rotation_about_base(space, rng.uniform(-magnitude, magnitude))
    else:
        axis = random_direction(rng, 3)
        angle = rng.uniform(-magnitude, magnitude)
        k = np.array([[0, -axis[2], axis[1]], [axis[2], 0, -axis[0]], [-axis[1], axis[0], 0]])
        rotation = _embed_rotation(space, np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * k @ k)
    local = transvection(space, target) @ rotation
    if about is None:
        return local
    shift = transvection(space, about)
    return shift @ local @ shift.inverse()


# -- model charts -------------------------------------------------------------


class ModelChart(Enum):
    KLEIN = "klein"
    POINCARE = "poincare"
    GNOMONIC = "gnomonic"
    STEREOGRAPHIC = "stereographic"
    IDENTITY = "identity"

    @property
    def curvature_sign(self) -> int:
        return {
            ModelChart.KLEIN: -1,
            ModelChart.POINCARE: -1,
            ModelChart.GNOMONIC: 1,
            ModelChart.STEREOGRAPHIC: 1,
            ModelChart.IDENTITY: 0,
        }[self]

    @classmethod
    def conformal(cls, space: SpaceKind) -> "ModelChart":
        """The chart in which every cycle is a Euclidean circle or line."""
        return {1: cls.STEREOGRAPHIC, 0: cls.IDENTITY, -1: cls.POINCARE}[space.curvature_sign]


def to_chart(chart: ModelChart, p: Point, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Chart image of `p`; points within `tol.chart` of the chart boundary are refused."""
    if chart.curvature_sign != p.space.curvature_sign:
        raise InvalidParameter(f"{chart.value} chart does not belong to {p.space}")
    x = p.coords
    if chart is ModelChart.IDENTITY:
        return x.copy()
    if chart is ModelChart.KLEIN:
        return x[1:] / x[0]
    if chart is ModelChart.POINCARE:
        return x[1:] / (1.0 + x[0])
    if chart is ModelChart.GNOMONIC:
        if x[-1] >= -tol.chart:
            raise OutOfChartDomain("gnomonic chart covers the open southern hemisphere only")
        return x[:-1] / (-x[-1])
    if x[-1] >= 1.0 - tol.chart:
        raise OutOfChartDomain("stereographic chart excludes the north pole")
    return x[:-1] / (1.0 - x[-1])


def from_chart(chart: ModelChart, u, dimension: int = 2, tol: Tolerances = DEFAULT_TOLERANCES) -> Point:
    u = np.asarray(u, dtype=float)
    if u.shape != (dimension,):
        raise InvalidParameter(f"chart coordinates must have {dimension} entries")
    space = SpaceKind(chart.curvature_sign, dimension)
    r2 = float(np.dot(u, u))
    if chart is ModelChart.IDENTITY:
        return Point(space, u)
    if chart is ModelChart.KLEIN:
        if r2 >= 1.0 - tol.chart:
            raise OutOfChartDomain("Klein chart is the open unit disk")
        x0 = 1.0 / math.sqrt(1.0 - r2)
        return Point(space, np.concatenate(([x0], x0 * u)))
    if chart is ModelChart.POINCARE:
        if r2 >= 1.0 - tol.chart:
            raise OutOfChartDomain("Poincare chart is the open unit disk")
        return Point(space, np.concatenate(([1.0 + r2], 2.0 * u)) / (1.0 - r2))
    if chart is ModelChart.GNOMONIC:
        return Point(space, np.concatenate((u, [-1.0])))
    return Point(space, np.concatenate((2.0 * u, [r2 - 1.0])) / (1.0 + r2))


# -- geodesics ----------------------------------------------------------------


def _dual_form(space: SpaceKind) -> np.ndarray:
    """Form on covectors whose value is 1 on normalized geodesic covectors."""
    if space.is_hyperbolic:
        return _J(3)
    if space.is_spherical:
        return np.eye(3)
    return np.diag([1.0, 1.0, 0.0])


def _orientation_sign(space: SpaceKind) -> float:
    # S^2 is read through the stereographic chart, which reverses the cross product
    return -1.0 if space.is_spherical else 1.0


class Geodesic:
    """Oriented geodesic of a two-dimensional space.

    hyperbolic: ideal points a -> b (angles on the boundary circle);
    spherical: oriented great circle with pole `covector`;
    flat: oriented line with unit normal and offset.
    The positive side lies to the left of the direction of travel.
    """

    __slots__ = ("space", "covector")

    def __init__(self, space: SpaceKind, covector):
        if space.dimension != 2:
            raise InvalidParameter("geodesics are implemented for two-dimensional spaces")
        nu = np.asarray(covector, dtype=float)
        q = float(nu @ _dual_form(space) @ nu)
        if q <= 1e-300:
            raise InvalidParameter("covector does not describe a geodesic")
        nu = nu / math.sqrt(q)
        nu.setflags(write=False)
        self.space = space
        self.covector = nu

    # constructors

    @classmethod
    def through(cls, p: Point, q: Point) -> "Geodesic":
        return geodesic_through(p, q)

    @classmethod
    def from_ideal(cls, a: float, b: float) -> "Geodesic":
        return geodesic_from_ideal(a, b)

    # queries

    @property
    def normal(self) -> np.ndarray:
        """Ambient normal n with pairing(x) = <x, n> in the space's form."""
        return _dual_form(self.space) @ self.covector

    def pairing(self, p: Point) -> float:
        return float(self.covector @ p.ambient)

    def signed_distance(self, p: Point) -> float:
        v = self.pairing(p)
        if self.space.is_hyperbolic:
            return math.asinh(v)
        if self.space.is_spherical:
            return math.asin(max(-1.0, min(1.0, v)))
        return v

    def reversed(self) -> "Geodesic":
        return Geodesic(self.space, -self.covector)

    def transformed(self, iso: Isometry) -> "Geodesic":
        return Geodesic(self.space, iso.apply_covector(self.covector))

    def frame(self) -> tuple[np.ndarray, np.ndarray]:
        """(o, t): the point of the line nearest the base point and the forward unit tangent."""
        space = self.space
        nu = self.covector
        n = self.normal
        b = base_point(space).ambient
        if space.is_flat:
            u, w = nu[:2], nu[2]
            o = np.array([-w * u[0], -w * u[1], 1.0])
            t = np.array([u[1], -u[0], 0.0])
        elif space.is_hyperbolic:
            o = _normalize_ambient(space, b - (nu @ b) * n)
            t = _J(3) @ np.cross(o, n)
            t = t / math.sqrt(minkowski(t, t))
        else:
            o = b - (nu @ b) * n
            if np.linalg.norm(o) < 1e-12:
                o = np.cross(n, [1.0, 0.0, 0.0])
                if np.linalg.norm(o) < 1e-6:
                    o = np.cross(n, [0.0, 1.0, 0.0])
            o = o / np.linalg.norm(o)
            t = np.cross(o, n)
            t = t / np.linalg.norm(t)
        if _orientation_sign(space) * (np.cross(o, t) @ nu) < 0:
            t = -t
        return o, t

    def point_at(self, s: float) -> Point:
        o, t = self.frame()
        if self.space.is_flat:
            return Point.from_ambient(self.space, o + s * t)
        cos_k, sin_k = _trig(self.space)
        return Point(self.space, cos_k(s) * o + sin_k(s) * t)

    def project(self, p: Point) -> Point:
        """Foot of the perpendicular from p."""
        x = p.ambient
        if self.space.is_flat:
            u = self.covector[:2]
            return Point(self.space, p.coords - self.pairing(p) * u)
        foot = x - self.pairing(p) * self.normal
        return Point(self.space, foot)

    def param_of(self, p: Point) -> float:
        """Arclength parameter of the foot of p."""
        o, t = self.frame()
        if self.space.is_flat:
            return float((p.ambient - o) @ t)
        q = self.project(p).coords
        if self.space.is_hyperbolic:
            return math.asinh(minkowski(q, t))
        return math.atan2(q @ t, q @ o)

    @property
    def ideal_angles(self) -> tuple[float, float]:
        """(a, b): first and last ideal points, as boundary angles in [0, 2 pi)."""
        if not self.space.is_hyperbolic:
            raise InvalidParameter("ideal points exist in H^2 only")
        o, t = self.frame()
        start, end = o - t, o + t
        return (math.atan2(start[2], start[1]) % TWO_PI, math.atan2(end[2], end[1]) % TWO_PI)

    def is_same_line(self, other: "Geodesic", tol: float = 1e-9) -> bool:
        return bool(min(np.linalg.norm(self.covector - other.covector),
                        np.linalg.norm(self.covector + other.covector)) < tol)

    def __repr__(self) -> str:
        if self.space.is_hyperbolic:
            a, b = self.ideal_angles
            return f"Geodesic(H2, ideal {a:.6g} -> {b:.6g})"
        return f"Geodesic({self.space}, {np.array2string(self.covector, precision=6)})"


def ideal_vector(angle: float) -> np.ndarray:
    """Null vector of the ideal point at boundary angle `angle`."""
    return np.array([1.0, math.cos(angle), math.sin(angle)])


def geodesic_from_ideal(a: float, b: float) -> Geodesic:
    """H^2 geodesic from ideal angle a to ideal angle b."""
    if abs(math.remainder(a - b, TWO_PI)) < 1e-12:
        raise InvalidParameter("ideal points of a geodesic must be distinct")
    return Geodesic(H2, np.cross(ideal_vector(a), ideal_vector(b)))


def geodesic_through(p: Point, q: Point) -> Geodesic:
    """Geodesic from p through q."""
    space = p.space
    _check_space(space, q)
    if space.is_spherical and np.linalg.norm(p.coords + q.coords) < 1e-12:
        raise AntipodalPair("great circle through antipodal points is not unique")
    nu = _orientation_sign(space) * np.cross(p.ambient, q.ambient)
    if np.linalg.norm(nu) < 1e-15:
        raise InvalidParameter("geodesic through coincident points is not unique")
    return Geodesic(space, nu)


def perpendicular_through(g: Geodesic, p: Point) -> Geodesic:
    """Geodesic through p orthogonal to g, oriented so g's forward direction is on its positive side."""
    space = g.space
    n = g.normal
    if space.is_flat:
        n = np.array([g.covector[0], g.covector[1], 0.0])
    nu = np.cross(p.ambient, n)
    perp = Geodesic(space, nu)
    foot = intersect_geodesics(g, perp)
    if foot is None:
        raise GeometryError("perpendicular does not meet the line")
    o, t = g.frame()
    s = g.param_of(foot)
    tangent = _forward_tangent(g, s)
    if perp.covector @ tangent < 0:
        perp = perp.reversed()
    return perp


def _forward_tangent(g: Geodesic, s: float) -> np.ndarray:
    o, t = g.frame()
    if g.space.is_flat:
        return t
    if g.space.is_hyperbolic:
        return math.sinh(s) * o + math.cosh(s) * t
    return -math.sin(s) * o + math.cos(s) * t


class LineRelation(Enum):
    COINCIDENT = "coincident"
    INTERSECTING = "intersecting"
    ASYMPTOTIC = "asymptotic"
    ULTRAPARALLEL = "ultraparallel"


def classify_lines(g1: Geodesic, g2: Geodesic, tol: Tolerances = DEFAULT_TOLERANCES) -> LineRelation:
    if g1.is_same_line(g2, tol.geometry):
        return LineRelation.COINCIDENT
    space = g1.space
    if space.is_spherical:
        return LineRelation.INTERSECTING
    if space.is_flat:
        u1, u2 = g1.covector[:2], g2.covector[:2]
        cross = u1[0] * u2[1] - u1[1] * u2[0]
        return LineRelation.ULTRAPARALLEL if abs(cross) < tol.geometry else LineRelation.INTERSECTING
    shared = count_shared_ideal(g1.ideal_angles, g2.ideal_angles, tol.ideal)
    if shared >= 2:
        return LineRelation.COINCIDENT
    if shared == 1:
        return LineRelation.ASYMPTOTIC
    c = abs(float(g1.covector @ _J(3) @ g2.covector))
    return LineRelation.INTERSECTING if c < 1.0 else LineRelation.ULTRAPARALLEL


def angle_close(a: float, b: float, tol: float) -> bool:
    return abs(math.remainder(a - b, TWO_PI)) < tol


def count_shared_ideal(first, second, tol: float) -> int:
    return sum(1 for a in first if any(angle_close(a, b, tol) for b in second))


def intersect_geodesics(g1: Geodesic, g2: Geodesic) -> Optional[Point]:
    """Common finite point of two distinct geodesics, or None.

    On S^2 the two antipodal solutions are canonicalized to the southern
    hemisphere (the one nearer the base point).
    """
    space = g1.space
    x = np.cross(g1.covector, g2.covector)
    if np.linalg.norm(x) < 1e-15:
        return None
    if space.is_hyperbolic:
        if minkowski(x, x) >= -1e-15:
            return None
        return Point(space, x)
    if space.is_spherical:
        if x[-1] > 0:
            x = -x
        return Point(space, x)
    if abs(x[-1]) < 1e-14 * np.linalg.norm(x):
        return None
    return Point.from_ambient(space, x)


@dataclass(frozen=True, eq=False)
class GeodesicSegment:
    start: Point
    end: Point

    def __post_init__(self):
        if self.start.space != self.end.space:
            raise InvalidParameter("segment endpoints in different spaces")
        if self.start.space.is_spherical and np.linalg.norm(self.start.coords + self.end.coords) < 1e-12:
            raise AntipodalPair("segment between antipodal points is not unique")

    @property
    def space(self) -> SpaceKind:
        return self.start.space

    @property
    def length(self) -> float:
        return distance(self.space, self.start, self.end)

    @property
    def midpoint(self) -> Point:
        return midpoint(self.space, self.start, self.end)

    def point_at(self, t: float) -> Point:
        return geodesic_point(self.space, self.start, self.end, t)

    def distance_to(self, p: Point) -> float:
        """Distance from p to the closed segment."""
        if self.length < 1e-15:
            return distance(self.space, p, self.start)
        line = geodesic_through(self.start, self.end)
        s0, s1 = line.param_of(self.start), line.param_of(self.end)
        s = line.param_of(p)
        lo, hi = min(s0, s1), max(s0, s1)
        if self.space.is_spherical and hi - lo > math.pi:
            s = s if lo <= s <= hi else (s - TWO_PI if s > hi else s + TWO_PI)
        if lo <= s <= hi:
            return abs(line.signed_distance(p))
        return min(distance(self.space, p, self.start), distance(self.space, p, self.end))


def common_perpendicular(g1: Geodesic, g2: Geodesic, tol: Tolerances = DEFAULT_TOLERANCES) -> GeodesicSegment:
    """Segment realizing the distance of two H^2 geodesics without common points."""
    if not g1.space.is_hyperbolic:
        raise InvalidParameter("common perpendiculars are computed in H^2")
    relation = classify_lines(g1, g2, tol)
    if relation in (LineRelation.INTERSECTING, LineRelation.COINCIDENT):
        raise LinesIntersect("the lines share a finite point")
    if relation is LineRelation.ASYMPTOTIC:
        raise LinesAsymptotic("the lines share exactly one ideal point")
    perp = Geodesic(H2, np.cross(g1.normal, g2.normal))
    foot1 = intersect_geodesics(g1, perp)
    foot2 = intersect_geodesics(g2, perp)
    if foot1 is None or foot2 is None:
        raise GeometryError("common perpendicular failed to meet the lines")
    return GeodesicSegment(foot1, foot2)


def translation_along_geodesic(space: SpaceKind, g: Geodesic, s: float) -> Isometry:
    """Translation by s along g (a rotation about g's poles on S^2).

    Every orbit lies on the cycle equidistant from g through its starting point.
    """
    if g.space != space:
        raise InvalidParameter("geodesic of another space")
    o, t = g.frame()
    if space.is_flat:
        m = np.eye(3)
        m[:2, 2] = s * t[:2]
        return Isometry(space, m, check=False)
    if space.is_hyperbolic:
        j = _J(3)
        m = (np.eye(3) + (math.cosh(s) - 1.0) * (-np.outer(o, o) + np.outer(t, t)) @ j
             + math.sinh(s) * (np.outer(o, t) - np.outer(t, o)) @ j)
        return Isometry(space, m, check=False)
    m = _plane_rotation(3, o, t, math.cos(s), math.sin(s), hyperbolic=False)
    return Isometry(space, m, check=False)
