"""Hypercycle regions: small intersections, tangent base lines and the lemmas on two components."""
import logging
import math

import numpy as np

from ..config import ExperimentConfig
from ..errors import GeometryError, HypothesisViolated
from ..geometry.regions import (
    CoreSet,
    Padded,
    ResultKind,
    construct_two_component_region,
    intersect_regions,
    lemma12_reduce,
    lemma31_inclusion,
)
from ..geometry.space_core import (
    H2,
    Point,
    base_point,
    common_perpendicular,
    distance,
    geodesic_from_ideal,
    point_at_polar,
    random_isometry,
    rotation_about_base,
    transvection,
)
from ..geometry.symmetry import (
    CenterKind,
    Verdict,
    candidate_center_two_hypercycles,
    is_centrally_symmetric_polygon,
    is_centrally_symmetric_region,
    is_centrally_symmetric_result,
    meb_cross_check,
)
from .construction import build_construction_c
from .report import ExperimentReport, trial_rng

logger = logging.getLogger(__name__)

EXACT = 1e-8


def padded_levels(region: Padded, points: np.ndarray) -> np.ndarray:
    """Level function of a padded region at each row of an (N, 3) array of hyperboloid points."""
    depth = np.max([-np.arcsinh(points @ g.covector) for g in region.core.lines], axis=0)
    return depth - region.lam


def sample_ball(center: Point, radius: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """`count` hyperboloid points within `radius` of `center`, as rows."""
    d = rng.uniform(0.0, radius, count)
    theta = rng.uniform(0.0, 2 * math.pi, count)
    at_base = np.column_stack([np.cosh(d), np.sinh(d) * np.cos(theta), np.sinh(d) * np.sin(theta)])
    return at_base @ transvection(H2, center).matrix.T


def _facing_pair(rng: np.random.Generator, lam: float) -> tuple[Padded, Padded]:
    """Two two-component regions whose facing hypercycles overlap in a thin lens."""
    w_k, w_l = rng.uniform(0.5, 1.2, 2)
    overlap = rng.uniform(0.02, 0.15) * lam
    reach_k = math.acosh(1.0 / math.sin(w_k)) + lam - overlap
    reach_l = math.acosh(1.0 / math.sin(w_l)) + lam - overlap
    pose = random_isometry(H2, rng, 1.0)
    k_pose = pose @ transvection(H2, point_at_polar(H2, reach_k, math.pi))
    l_pose = pose @ transvection(H2, point_at_polar(H2, reach_l, 0.0)) @ rotation_about_base(H2, rng.uniform(-0.2, 0.2))
    return (construct_two_component_region(2 * w_k, lam, k_pose),
            construct_two_component_region(2 * w_l, lam, l_pose))


def exp_small_hypercycle_intersections(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("small_hypercycle_intersections")
    tol = cfg.tolerances
    lam = cfg.lam
    report.notes.append("small means diameter below 2*lambda, the separation bound proved for the reduction")
    for i in range(cfg.scaled_trials(50)):
        seed, rng = trial_rng(cfg.seed, i)
        a, b = _facing_pair(rng, lam)
        try:
            result = intersect_regions(a, b, tol=tol)
        except GeometryError as exc:
            report.fail(seed, f"intersection failed: {exc}")
            continue
        if not result.is_compact:
            report.fail(seed, f"facing components gave {result.describe()}")
            continue
        polygon = result.polygon
        diameter = polygon.diameter()
        if diameter >= 2 * lam:
            logger.debug("trial %d skipped: diameter %.3f >= 2 lambda", i, diameter)
            report.skipped += 1
            continue
        try:
            a1, b1 = lemma12_reduce(a, b, 0, 1, tol)
        except HypothesisViolated as exc:
            logger.debug("trial %d skipped: %s", i, exc)
            report.skipped += 1
            continue
        report.trials_run += 1
        report.worst("max_diameter", diameter)

        expected = common_perpendicular(a1.core.lines[0], b1.core.lines[0], tol).midpoint
        points = sample_ball(expected, diameter + 0.5, cfg.samples, rng)
        levels = np.array([padded_levels(r, points) for r in (a, b, a1, b1)])
        clear = np.all(np.abs(levels) > tol.geometry, axis=0)
        full = (levels[0] <= 0) & (levels[1] <= 0)
        reduced = (levels[2] <= 0) & (levels[3] <= 0)
        disagreements = int(np.count_nonzero(clear & (full != reduced)))
        if disagreements:
            report.fail(seed, "reduced regions disagree with the originals", disagreements=disagreements)

        verdict = is_centrally_symmetric_polygon(polygon, EXACT, tol)
        report.worst("max_residual", verdict.residual)
        if not verdict.symmetric or distance(H2, verdict.center, expected) > tol.geometry:
            report.fail(seed, "small intersection not symmetric about the common perpendicular midpoint",
                        residual=verdict.residual, expected=expected)
    return report


def tangent_base_regions(spread: float, lam: float, u0: float = -math.pi / 2) -> tuple[Padded, Padded]:
    """Single-component regions whose base lines meet at the ideal point u0, mirror images of each other."""
    k1 = Padded(CoreSet((geodesic_from_ideal(u0, u0 - spread),)), lam)
    l1 = Padded(CoreSet((geodesic_from_ideal(u0 + spread, u0),)), lam)
    return k1, l1


def exp_lemma21(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("lemma21")
    tol = cfg.tolerances
    u0 = -math.pi / 2
    u0_vec = np.array([math.cos(u0), math.sin(u0)])
    for i in range(cfg.scaled_trials(20)):
        seed, rng = trial_rng(cfg.seed, i)
        spread = rng.uniform(0.6, 2.0)
        lam = rng.uniform(0.3, 1.5)
        k1, l1 = tangent_base_regions(spread, lam, u0)
        fk = k1.boundary_components()[0].footprint()
        fl = l1.boundary_components()[0].footprint()
        report.trials_run += 1

        gap = abs(fk.radius - fl.radius)
        report.worst("max_radius_difference", gap)
        if gap > 1e-10:
            report.fail(seed, "footprints are not congruent", rk=fk.radius, rl=fl.radius)
        if abs(fk.evaluate(u0_vec)) > 1e-9 or abs(fl.evaluate(u0_vec)) > 1e-9:
            report.fail(seed, "u0 is not on both footprints")

        # the lens of the two footprint disks is bounded by the arc of each circle inside the other
        escape = -1.0
        for inner_fp, outer_fp in ((fk, fl), (fl, fk)):
            t = np.linspace(0.0, 2 * math.pi, 2000, endpoint=False)
            ring = inner_fp.center + inner_fp.radius * np.column_stack([np.cos(t), np.sin(t)])
            inside = ring[[outer_fp.evaluate(u) <= 0 for u in ring]]
            far = np.linalg.norm(inside - u0_vec, axis=1) > 1e-3
            if np.any(far):
                escape = max(escape, float(np.max(np.linalg.norm(inside[far], axis=1))) - 1.0)
        report.worst("max_escape", escape)
        if escape > -1e-9:
            report.fail(seed, "footprint intersection reaches the model circle away from u0", escape=escape)

        try:
            result = intersect_regions(k1, l1, tol=tol)
        except GeometryError as exc:
            report.fail(seed, f"intersection failed: {exc}")
            continue
        points = result.ideal.isolated_points(tol.ideal)
        if result.kind is not ResultKind.NONCOMPACT or result.ideal.component_count != 1 or len(points) != 1:
            report.fail(seed, f"expected exactly one ideal point, got {result.describe()}")
            continue
        if abs(math.remainder(points[0] - u0, 2 * math.pi)) > tol.ideal:
            report.fail(seed, "the ideal point is not u0", ideal=points[0])
        verdict = is_centrally_symmetric_result(result, tolerances=tol)
        if verdict.verdict is not Verdict.NOT_SYMMETRIC:
            report.fail(seed, f"intersection reported {verdict.verdict.value}")
    return report


def _inclusion_trials(report: ExperimentReport, cfg: ExperimentConfig):
    tol = cfg.tolerances
    for i in range(cfg.scaled_trials(50)):
        seed, rng = trial_rng(cfg.seed, "inclusion", i)
        a = rng.uniform(0.0, 2 * math.pi)
        cap = rng.uniform(1.0, 2.5)
        gk = geodesic_from_ideal(a, a + cap)
        gl = geodesic_from_ideal(a + rng.uniform(0.1, 0.4) * cap, a + cap - rng.uniform(0.1, 0.4) * cap)
        k_star = Padded(CoreSet((gk,)), cfg.lam)
        l_star = Padded(CoreSet((gl,)), cfg.lam)
        report.trials_run += 1
        if not lemma31_inclusion(k_star, l_star, tol):
            report.fail(seed, "K* not inside the interior of L*", a=a, cap=cap)
            continue
        outside = [p for p in k_star.sample_interior(rng, 50) if l_star.level(p) >= 0]
        if outside:
            report.fail(seed, "sampled point of K* outside L*", point=outside[0])
        try:
            lemma31_inclusion(k_star, Padded(CoreSet((gl.reversed(),)), cfg.lam), tol)
            report.fail(seed, "reversed L* passed the hypotheses")
        except HypothesisViolated as exc:
            if exc.clause != 3:
                report.fail(seed, f"reversed L* violated clause {exc.clause}, expected 3")


def _trichotomy_trials(report: ExperimentReport, cfg: ExperimentConfig):
    tol = cfg.tolerances
    lam = cfg.lam
    for i in range(cfg.scaled_trials(50)):
        seed, rng = trial_rng(cfg.seed, "trichotomy", i)
        pose = random_isometry(H2, rng, 1.0)
        report.trials_run += 1

        region = construct_two_component_region(rng.uniform(0.6, 2.6), lam, pose)
        h1, h2 = region.boundary_components()
        candidate = candidate_center_two_hypercycles(h1, h2, tol)
        centre = pose.apply(base_point(H2))
        if candidate.kind is not CenterKind.UNIQUE_POINT or distance(H2, candidate.point, centre) > tol.geometry:
            report.fail(seed, f"four ideal points gave {candidate.kind.value}", expected=centre)

        a = rng.uniform(0.0, 2 * math.pi)
        g = geodesic_from_ideal(a, a + rng.uniform(0.5, 3.0))
        strip = Padded(CoreSet((g, g.reversed())), lam)
        verdict = is_centrally_symmetric_region(strip, tolerances=tol)
        if not verdict.symmetric or verdict.locus is None or not verdict.locus.is_same_line(g):
            report.fail(seed, "strip did not report its base line as the centre locus")

        first = rng.uniform(0.5, 2.0)
        second = rng.uniform(0.5, 2.0)
        wedge = Padded(CoreSet((geodesic_from_ideal(a, a + first),
                                geodesic_from_ideal(a + first, a + first + second))), lam)
        try:
            verdict = is_centrally_symmetric_region(wedge, tolerances=tol)
        except GeometryError as exc:
            report.fail(seed, f"three ideal points: {exc}")
            continue
        if verdict.verdict is not Verdict.NOT_SYMMETRIC:
            report.fail(seed, f"three ideal points gave {verdict.verdict.value}")


def _uniqueness_trials(report: ExperimentReport, cfg: ExperimentConfig):
    tol = cfg.tolerances
    for i in range(cfg.scaled_trials(20)):
        seed, rng = trial_rng(cfg.seed, "uniqueness", i)
        alpha_k = rng.uniform(0.55, 0.9) * math.pi
        alpha_l = rng.uniform(math.pi - alpha_k + 0.3, 0.95 * math.pi)
        k, l = build_construction_c(alpha_k, alpha_l, cfg.lam, random_isometry(H2, rng, 1.0))
        result = intersect_regions(k, l, tol=tol)
        report.trials_run += 1
        if not result.is_compact:
            report.fail(seed, f"construction gave {result.describe()}")
            continue
        verdict = is_centrally_symmetric_polygon(result.polygon, EXACT, tol)
        if not verdict.symmetric:
            report.fail(seed, "constructed polygon not symmetric", residual=verdict.residual)
        elif not meb_cross_check(result.polygon, verdict):
            report.fail(seed, "centre of symmetry differs from the minimal enclosing ball centre",
                        center=verdict.center)


def exp_hypercycle_lemmas(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("hypercycle_lemmas")
    _inclusion_trials(report, cfg)
    _trichotomy_trials(report, cfg)
    _uniqueness_trials(report, cfg)
    return report
