"""Curvature table of cycles and the Lambert quadrangle inequality."""
import logging
import math

from ..config import ExperimentConfig
from ..errors import GeometryError
from ..geometry.cycles import (
    Circle,
    Cycle,
    GeodesicCycle,
    Hypercycle,
    Paracycle,
    finite_difference_curvature,
)
from ..geometry.space_core import (
    E2,
    H2,
    SpaceKind,
    base_point,
    distance,
    geodesic_from_ideal,
    geodesic_through,
    intersect_geodesics,
    perpendicular_through,
    point_at_polar,
    random_isometry,
    tangent_angle,
)
from .report import ExperimentReport, trial_rng

logger = logging.getLogger(__name__)

GRID = (0.1, 0.5, 1.0, 2.0, 3.0)
FD_STEP = 1e-3
FD_TOL = 1e-5


def closed_form_curvature(space: SpaceKind, kind: str, value: float = 0.0) -> float:
    """Geodesic curvature from the table: circles by radius, hypercycles by distance."""
    if kind == "geodesic":
        return 0.0
    if kind == "paracycle":
        return 1.0
    if kind == "hypercycle":
        return math.tanh(value)
    if space.is_hyperbolic:
        return 1.0 / math.tanh(value)
    if space.is_spherical:
        # a circle of radius r > pi/2 is the circle of radius pi - r about the antipode
        r = min(value, math.pi - value)
        return math.cos(r) / math.sin(r)
    return 1.0 / value


def _table(space: SpaceKind) -> list[tuple[str, float, Cycle]]:
    base = base_point(space)
    rows = [("circle", r, Circle(space, base, r)) for r in GRID]
    if space.is_hyperbolic:
        rows += [("hypercycle", l, Hypercycle(geodesic_from_ideal(0.0, math.pi), l)) for l in GRID]
        rows += [("paracycle", t, Paracycle(0.0, t)) for t in (-0.5, 0.0, 0.5)]
        rows.append(("geodesic", 0.0, GeodesicCycle(geodesic_from_ideal(0.0, math.pi))))
    else:
        rows.append(("geodesic", 0.0, GeodesicCycle(geodesic_through(base, point_at_polar(space, 1.0, 0.3)))))
    return rows


def exp_curvature(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("curvature")
    for name in cfg.spaces:
        space = SpaceKind.from_name(name)
        for kind, value, cycle in _table(space):
            seed, rng = trial_rng(cfg.seed, name, kind, value)
            expected = closed_form_curvature(space, kind, value)
            moved = cycle.transformed(random_isometry(space, rng, 1.0))
            report.trials_run += 1
            if abs(cycle.curvature() - expected) > 1e-12:
                report.fail(seed, f"{space} {kind} {value}: table gives {cycle.curvature()}", expected=expected)
            try:
                measured = finite_difference_curvature(moved, FD_STEP, at=rng.uniform(-1.0, 1.0))
            except GeometryError as exc:
                report.fail(seed, f"{space} {kind} {value}: finite difference failed: {exc}")
                continue
            error = abs(measured - expected)
            report.worst(f"{space}.max_error", error)
            if error > FD_TOL:
                report.fail(seed, f"{space} {kind} {value}: measured {measured:.9g}, expected {expected:.9g}",
                            error=error)

    # circles flatten toward horocycles, distance lines bend toward them
    circles = [closed_form_curvature(H2, "circle", r) for r in GRID]
    hypers = [closed_form_curvature(H2, "hypercycle", l) for l in GRID]
    if not all(a > b > 1.0 for a, b in zip(circles, circles[1:])):
        report.fail(cfg.seed, "H2 circle curvature is not strictly decreasing to 1", values=circles)
    if not all(a < b < 1.0 for a, b in zip(hypers, hypers[1:])):
        report.fail(cfg.seed, "hypercycle curvature is not strictly increasing to 1", values=hypers)
    report.trials_run += 1
    return report


def lambert_quadrangle(space: SpaceKind, a: float, b: float):
    """Quadrangle ABCD with right angles at A, B and C, |AB| = a and |BC| = b.

    Returns the four vertices, or None when the last two sides do not meet
    (in H^2 this happens once sinh a * sinh b >= 1).
    """
    pa = base_point(space)
    pb = point_at_polar(space, a, 0.0)
    ab = geodesic_through(pa, pb)
    perp_a, perp_b = perpendicular_through(ab, pa), perpendicular_through(ab, pb)
    pc = perp_b.point_at(perp_b.param_of(pb) + b)
    pd = intersect_geodesics(perpendicular_through(perp_b, pc), perp_a)
    if pd is None:
        return None
    return pa, pb, pc, pd


def exp_lambert(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("lambert")
    worst_margin = math.inf
    for i in range(cfg.scaled_trials(1000)):
        seed, rng = trial_rng(cfg.seed, i)
        a = rng.uniform(0.01, 1.5)
        b = rng.uniform(0.01, 0.95 * math.asinh(1.0 / math.sinh(a)))
        report.trials_run += 1
        quad = lambert_quadrangle(H2, a, b)
        if quad is None:
            report.fail(seed, "fourth vertex missing inside the existence range", a=a, b=b)
            continue
        pa, pb, pc, pd = quad
        ab, cd = distance(H2, pa, pb), distance(H2, pc, pd)
        margin = cd - ab
        worst_margin = min(worst_margin, margin)
        if margin <= 1e-10:
            report.fail(seed, "|AB| < |CD| violated", a=a, b=b, ab=ab, cd=cd)
        if not math.isclose(math.tanh(cd), math.cosh(b) * math.tanh(a), rel_tol=1e-8):
            report.fail(seed, "tanh|CD| differs from cosh|BC| tanh|AB|", a=a, b=b, cd=cd)
        if tangent_angle(H2, pd, pa, pc) >= math.pi / 2:
            report.fail(seed, "fourth angle is not acute", a=a, b=b)
    report.record("min_margin", worst_margin)

    # the excess vanishes as the quadrangle collapses onto AB
    excess = []
    for k in range(12):
        quad = lambert_quadrangle(H2, 1.0, 0.5 * 2.0 ** -k)
        excess.append(distance(H2, quad[2], quad[3]) - distance(H2, quad[0], quad[1]))
    report.trials_run += 1
    if not all(x > y > 0 for x, y in zip(excess, excess[1:])) or excess[-1] > 1e-6:
        report.fail(cfg.seed, "excess of |CD| over |AB| does not shrink monotonically to 0", excess=excess)

    seed, rng = trial_rng(cfg.seed, "flat")
    worst_flat = 0.0
    for _ in range(cfg.scaled_trials(100)):
        a, b = rng.uniform(0.01, 3.0), rng.uniform(0.01, 3.0)
        pa, pb, pc, pd = lambert_quadrangle(E2, a, b)
        worst_flat = max(worst_flat, abs(distance(E2, pc, pd) - distance(E2, pa, pb)))
    report.trials_run += 1
    report.record("flat_max_difference", worst_flat)
    if worst_flat > 1e-12:
        report.fail(seed, "Euclidean rectangle sides differ", difference=worst_flat)
    logger.debug("lambert: min margin %.3g, flat difference %.3g", worst_margin, worst_flat)
    return report
