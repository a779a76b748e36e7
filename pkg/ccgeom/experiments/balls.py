"""Congruent balls, paraballs and hulls of two disks."""
import logging
import math

from ..config import ExperimentConfig
from ..errors import GeometryError
from ..geometry.regions import Disk, Paraball, ResultKind, hull_union_disks, intersect_regions
from ..geometry.space_core import (
    SpaceKind,
    distance,
    midpoint,
    point_at_polar,
    point_reflection,
    random_point,
    transvection,
)
from ..geometry.symmetry import (
    Verdict,
    is_centrally_symmetric_hull,
    is_centrally_symmetric_polygon,
    is_centrally_symmetric_region,
    is_centrally_symmetric_result,
    paracycle_axis_points,
)
from .report import ExperimentReport, trial_rng

logger = logging.getLogger(__name__)

# residual threshold for constructed symmetries
EXACT = 1e-8


def _disk_radius(space: SpaceKind, cfg: ExperimentConfig) -> float:
    if space.is_spherical:
        return min(cfg.radius, math.pi / 2 - 1e-3)
    return cfg.radius


def _check_lens(report: ExperimentReport, seed: int, space: SpaceKind, d1: Disk, d2: Disk, cfg: ExperimentConfig):
    try:
        result = intersect_regions(d1, d2, tol=cfg.tolerances)
    except GeometryError as exc:
        report.fail(seed, f"{space}: intersection failed: {exc}", c1=d1.center, c2=d2.center)
        return
    if not result.is_compact:
        report.fail(seed, f"{space}: expected a compact lens, got {result.describe()}",
                    c1=d1.center, c2=d2.center)
        return
    verdict = is_centrally_symmetric_polygon(result.polygon, EXACT, cfg.tolerances)
    expected = midpoint(space, d1.center, d2.center)
    report.worst(f"{space}.max_residual", verdict.residual)
    if not verdict.symmetric:
        report.fail(seed, f"{space}: lens not symmetric ({verdict.certificate})",
                    c1=d1.center, c2=d2.center, residual=verdict.residual)
        return
    error = distance(space, verdict.center, expected)
    report.worst(f"{space}.max_center_error", error)
    if error > cfg.tolerances.geometry:
        report.fail(seed, f"{space}: centre misses the midpoint of the centres",
                    center=verdict.center, expected=expected, error=error)


def _round_balls(report: ExperimentReport, cfg: ExperimentConfig, name: str, trials: int):
    """Reflect sampled lens points of two congruent 3-balls through the midpoint of their centres."""
    space = SpaceKind(SpaceKind.from_name(name).curvature_sign, 3)
    r = _disk_radius(space, cfg)
    for i in range(trials):
        seed, rng = trial_rng(cfg.seed, name, "d3", i)
        c1 = random_point(space, rng, 1.0)
        c2 = transvection(space, c1).apply(random_point(space, rng, 1.9 * r))
        m = midpoint(space, c1, c2)
        sigma = point_reflection(space, m)
        around_m = transvection(space, m)
        worst = 0.0
        for _ in range(64):
            p = around_m.apply(random_point(space, rng, r))
            if distance(space, p, c1) > r or distance(space, p, c2) > r:
                continue
            q = sigma.apply(p)
            worst = max(worst,
                        abs(distance(space, q, c1) - distance(space, p, c2)),
                        abs(distance(space, q, c2) - distance(space, p, c1)))
        report.worst(f"{space}.max_residual", worst)
        if worst > EXACT:
            report.fail(seed, f"{space}: reflected lens point leaves the lens", residual=worst)
        report.trials_run += 1


def exp_balls_intersection(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("balls_intersection")
    trials = cfg.scaled_trials(200)
    for name in cfg.spaces:
        space = SpaceKind.from_name(name)
        r = _disk_radius(space, cfg)
        for i in range(trials):
            seed, rng = trial_rng(cfg.seed, name, i)
            c1 = random_point(space, rng, 1.0)
            gap = rng.uniform(0.05, 1.95) * r
            c2 = transvection(space, c1).apply(point_at_polar(space, gap, rng.uniform(0.0, 2 * math.pi)))
            _check_lens(report, seed, space, Disk(space, c1, r), Disk(space, c2, r), cfg)
            report.trials_run += 1

        # identical placement: the intersection is the disk itself
        seed, rng = trial_rng(cfg.seed, name, "identical")
        c = random_point(space, rng, 1.0)
        result = intersect_regions(Disk(space, c, r), Disk(space, c, r), tol=cfg.tolerances)
        verdict = is_centrally_symmetric_polygon(result.polygon, EXACT, cfg.tolerances) if result.is_compact else None
        if verdict is None or not verdict.symmetric or distance(space, verdict.center, c) > cfg.tolerances.geometry:
            report.fail(seed, f"{space}: identical disks not symmetric about their centre", center=c)
        report.trials_run += 1

        if space.is_spherical:
            # hemispheres overlapping in a lune
            h1 = Disk(space, point_at_polar(space, 0.3, 0.0), math.pi / 2)
            h2 = Disk(space, point_at_polar(space, 0.3, math.pi), math.pi / 2)
            _check_lens(report, seed, space, h1, h2, cfg)
            report.trials_run += 1

        _round_balls(report, cfg, name, cfg.scaled_trials(50))
    return report


def exp_paraball_cases(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("paraball_cases")
    tol = cfg.tolerances
    for i in range(cfg.scaled_trials(100)):
        seed, rng = trial_rng(cfg.seed, "pair", i)
        k_angle = rng.uniform(0.0, 2 * math.pi)
        l_angle = k_angle + math.pi + rng.uniform(-1.0, 1.0)
        k = Paraball(k_angle, rng.uniform(-0.6, -0.1))
        l = Paraball(l_angle, rng.uniform(-0.6, -0.1))
        k_prime, l_prime = paracycle_axis_points(k.paracycle, l.paracycle)
        line_params = [k.paracycle.level(l_prime), l.paracycle.level(k_prime)]
        # the order k, l', k', l means l' lies in K and k' lies in L
        if max(line_params) >= 0:
            logger.debug("paraball trial %d skipped: horoballs do not overlap on their axis", i)
            report.skipped += 1
            continue
        result = intersect_regions(k, l, tol=tol)
        report.trials_run += 1
        if not result.is_compact:
            report.fail(seed, f"paraball pair gave {result.describe()}", k=k_angle, l=l_angle)
            continue
        verdict = is_centrally_symmetric_polygon(result.polygon, EXACT, tol)
        expected = midpoint(k.space, k_prime, l_prime)
        report.worst("pair.max_residual", verdict.residual)
        if not verdict.symmetric or distance(k.space, verdict.center, expected) > tol.geometry:
            report.fail(seed, "paraball pair not symmetric about the midpoint of k'l'",
                        residual=verdict.residual, expected=expected)

    seed, rng = trial_rng(cfg.seed, "self")
    p = Paraball(rng.uniform(0.0, 2 * math.pi), rng.uniform(-0.5, 0.5))
    result = intersect_regions(p, p, tol=tol)
    verdict = is_centrally_symmetric_result(result, tolerances=tol)
    region_verdict = is_centrally_symmetric_region(p, tolerances=tol)
    report.trials_run += 1
    if verdict.verdict is not Verdict.NOT_SYMMETRIC or "one ideal point" not in verdict.certificate:
        report.fail(seed, f"paraball with itself: {verdict.verdict.value} ({verdict.certificate})")
    if region_verdict.verdict is not Verdict.NOT_SYMMETRIC:
        report.fail(seed, "a paraball was reported symmetric")

    seed, rng = trial_rng(cfg.seed, "shared")
    a = rng.uniform(0.0, 2 * math.pi)
    result = intersect_regions(Paraball(a, -0.2), Paraball(a, 0.3), tol=tol)
    report.trials_run += 1
    if result.kind is not ResultKind.NONCOMPACT:
        report.fail(seed, f"shared ideal point gave {result.describe()}", ideal=a)
    report.notes.append("paraballs with a shared ideal point meet in a noncompact set; no symmetry claim")
    return report


def exp_theorem4_disks(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("theorem4_disks")
    tol = cfg.tolerances
    trials = cfg.scaled_trials(100)
    for name in cfg.spaces:
        space = SpaceKind.from_name(name)
        for i in range(trials):
            seed, rng = trial_rng(cfg.seed, name, i)
            c1 = random_point(space, rng, 1.0)
            angle = rng.uniform(0.0, 2 * math.pi)
            shift = transvection(space, c1)

            r = rng.uniform(0.2, 0.8)
            c2 = shift.apply(point_at_polar(space, rng.uniform(0.2, 1.5), angle))
            hull = hull_union_disks(Disk(space, c1, r), Disk(space, c2, r), tol)
            verdict = is_centrally_symmetric_hull(hull, EXACT, tol)
            expected = midpoint(space, c1, c2)
            report.worst(f"{space}.congruent_residual", verdict.residual)
            if not verdict.symmetric or distance(space, verdict.center, expected) > tol.geometry:
                report.fail(seed, f"{space}: congruent hull not symmetric about the midpoint",
                            residual=verdict.residual, c1=c1, c2=c2, r=r)

            c3 = shift.apply(point_at_polar(space, rng.uniform(0.5, 1.5), angle))
            hull = hull_union_disks(Disk(space, c1, 0.4), Disk(space, c3, 0.7), tol)
            verdict = is_centrally_symmetric_hull(hull, tolerances=tol)
            if verdict.verdict is not Verdict.NOT_SYMMETRIC:
                report.fail(seed, f"{space}: radii 0.4 and 0.7 gave {verdict.verdict.value}",
                            residual=verdict.residual, c1=c1, c2=c3)
            report.trials_run += 2

        seed, rng = trial_rng(cfg.seed, name, "coincident")
        c = random_point(space, rng, 1.0)
        verdict = is_centrally_symmetric_hull(hull_union_disks(Disk(space, c, 0.5), Disk(space, c, 0.5), tol))
        if not verdict.symmetric or distance(space, verdict.center, c) > tol.geometry:
            report.fail(seed, f"{space}: coincident disks not symmetric about their centre")
        report.trials_run += 1
    return report
