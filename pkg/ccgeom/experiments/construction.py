"""Covering construction of two-component regions, its perturbation, and detector soundness."""
import logging
import math
from typing import Optional

from ..config import ExperimentConfig
from ..errors import AnglesTooSmall, GeometryError, InvalidParameter, LinesIntersect
from ..geometry.regions import (
    Disk,
    Padded,
    check_interleaving,
    construct_rosette_region,
    construct_two_component_region,
    intersect_regions,
    membership_disagreements,
)
from ..geometry.space_core import (
    H2,
    Geodesic,
    Isometry,
    Point,
    SpaceKind,
    angle_between,
    base_point,
    distance,
    ideal_vector,
    intersect_geodesics,
    perturbation,
    point_at_polar,
    point_reflection,
    random_isometry,
    random_point,
    rotation_about_base,
    tangent_toward,
    translation_along_geodesic,
    transvection,
)
from ..geometry.symmetry import (
    Verdict,
    is_centrally_symmetric_polygon,
    is_centrally_symmetric_result,
    meb_cross_check,
)
from .report import ExperimentReport, trial_rng

logger = logging.getLogger(__name__)

EXACT = 1e-8

# sampled points per construction for the traced-membership check
MEMBERSHIP_SAMPLES = 400


def build_construction_c(alpha_k: float, alpha_l: float, lam: float,
                         pose: Optional[Isometry] = None) -> tuple[Padded, Padded]:
    """Two two-component regions about one centre, L turned a quarter turn against K.

    The open angular domains cut off by the caps cover the circle of directions
    exactly when alpha_k + alpha_l > pi, and then the intersection is compact.
    """
    for alpha in (alpha_k, alpha_l):
        if not 0 < alpha < math.pi:
            raise InvalidParameter("opening angles must lie in (0, pi)")
    if alpha_k + alpha_l <= math.pi:
        raise AnglesTooSmall(f"alpha_K + alpha_L = {alpha_k + alpha_l:.6g} <= pi")
    k = construct_two_component_region(alpha_k, lam)
    l = construct_two_component_region(alpha_l, lam, rotation_about_base(H2, math.pi / 2))
    if pose is not None:
        k, l = k.transformed(pose), l.transformed(pose)
    return k, l


def build_six_arc_rosette(half_width: float, lam: float, pose: Optional[Isometry] = None) -> tuple[Padded, Padded]:
    """Three-component regions with caps at 0, 120, 240 and 60, 180, 300 degrees.

    Each is the half-turn image of the other, so opposite arcs of the
    intersection belong to different regions.
    """
    if not math.pi / 6 < half_width < math.pi / 3:
        raise InvalidParameter("half_width must lie in (pi/6, pi/3) for a compact six-arc intersection")
    k = construct_rosette_region(3, half_width, lam, pose)
    l = construct_rosette_region(3, half_width, lam, pose, phase=math.pi / 3)
    return k, l


def inner_angle(first: Geodesic, second: Geodesic) -> float:
    """Angle at the crossing of two H^2 lines, between first's start ray and second's end ray."""
    x = intersect_geodesics(first, second)
    if x is None:
        raise LinesIntersect("the lines do not cross")
    u = tangent_toward(H2, x, ideal_vector(first.ideal_angles[0]))
    v = tangent_toward(H2, x, ideal_vector(second.ideal_angles[1]))
    return angle_between(H2, u, v)


def exp_construction_C(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("construction_C")
    tol = cfg.tolerances
    grid = [f * math.pi for f in (0.4, 0.55, 0.7, 0.85)]
    pairs = [(cfg.alpha_k, cfg.alpha_l)] + [(a, b) for a in grid for b in grid if a + b > math.pi + 1e-9]
    for i, (alpha_k, alpha_l) in enumerate(pairs[:cfg.scaled_trials(len(pairs))]):
        seed, rng = trial_rng(cfg.seed, i)
        pose = random_isometry(H2, rng, 1.0) if i else None
        report.trials_run += 1
        try:
            k, l = build_construction_c(alpha_k, alpha_l, cfg.lam, pose)
            result = intersect_regions(k, l, tol=tol)
        except GeometryError as exc:
            report.fail(seed, f"construction failed: {exc}", alpha_k=alpha_k, alpha_l=alpha_l)
            continue
        if not result.is_compact or result.polygon.arc_count != 4:
            report.fail(seed, f"expected Compact(4), got {result.describe()}", alpha_k=alpha_k, alpha_l=alpha_l)
            continue
        if not check_interleaving(result.polygon, tol.ideal):
            report.fail(seed, "adjacent arcs violate the cyclic order of ideal points",
                        alpha_k=alpha_k, alpha_l=alpha_l)

        # the traced boundary encloses exactly the common points of K and L
        shift = transvection(H2, pose.apply(base_point(H2)) if pose is not None else base_point(H2))
        reach = result.polygon.diameter() + 0.5
        points = [shift.apply(random_point(H2, rng, reach)) for _ in range(min(cfg.samples, MEMBERSHIP_SAMPLES))]
        disagreements = membership_disagreements(result.polygon, k, l, points, tol.geometry)
        report.worst("max_membership_disagreements", disagreements)
        if disagreements:
            report.fail(seed, "traced polygon disagrees with membership in K and L",
                        alpha_k=alpha_k, alpha_l=alpha_l, disagreements=disagreements)

    try:
        build_construction_c(cfg.alpha_k, math.pi - cfg.alpha_k - 0.1, cfg.lam)
        report.fail(cfg.seed, "construction accepted alpha_K + alpha_L < pi")
    except AnglesTooSmall:
        pass
    except InvalidParameter as exc:
        report.fail(cfg.seed, f"small angles raised the wrong error: {exc}")
    report.trials_run += 1
    return report


def _perturbed_angle(k: Padded, l: Padded, step: float) -> tuple[float, Padded]:
    moved = l
    if step:
        moved = l.transformed(translation_along_geodesic(H2, k.core.lines[0].reversed(), step))
    return inner_angle(moved.core.lines[1], k.core.lines[2]), moved


def exp_perturbation_asymmetry(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("perturbation_asymmetry")
    tol = cfg.tolerances
    step = cfg.step
    if not 1e-4 < step < 1e-1:
        report.fail(cfg.seed, f"translation step {step} outside (1e-4, 1e-1)")
        return report
    for i in range(cfg.scaled_trials(10)):
        seed, rng = trial_rng(cfg.seed, i)
        if i:
            half_width, pose = rng.uniform(0.6, 0.95), random_isometry(H2, rng, 1.0)
        else:
            half_width, pose = 0.8, None
        k, l = build_six_arc_rosette(half_width, cfg.lam, pose)
        centre = pose.apply(base_point(H2)) if pose is not None else base_point(H2)
        report.trials_run += 1
        try:
            alpha, _ = _perturbed_angle(k, l, 0.0)
            forward, moved = _perturbed_angle(k, l, step)
            backward, _ = _perturbed_angle(k, l, -step)
            unmoved = is_centrally_symmetric_result(intersect_regions(k, l, tol=tol), EXACT, tol)
            result = intersect_regions(k, moved, tol=tol)
            perturbed = is_centrally_symmetric_result(result, tolerances=tol)
        except GeometryError as exc:
            report.fail(seed, f"rosette trial failed: {exc}", half_width=half_width)
            continue
        report.record(f"trial{i}.angle_gain", forward - alpha)
        if not unmoved.symmetric or distance(H2, unmoved.center, centre) > tol.geometry:
            report.fail(seed, "unperturbed rosette not symmetric about its centre", residual=unmoved.residual)
        if forward - alpha <= 1e-8:
            report.fail(seed, "forward translation did not widen the inner angle", gain=forward - alpha)
        if backward - alpha >= 0:
            report.fail(seed, "reverse translation did not narrow the inner angle", gain=backward - alpha)
        if perturbed.verdict is not Verdict.NOT_SYMMETRIC:
            report.fail(seed, f"translated rosette reported {perturbed.verdict.value}",
                        residual=perturbed.residual, kind=result.describe())
    return report


def _symmetric_lens(space: SpaceKind, rng) -> tuple[Disk, Disk, Point]:
    centre = random_point(space, rng, 1.0)
    r = min(1.0, math.pi / 2 - 1e-3)
    gap = rng.uniform(0.1, 1.8) * r
    disk = Disk(space, transvection(space, centre).apply(point_at_polar(space, gap / 2, rng.uniform(0, 2 * math.pi))), r)
    return disk, disk.transformed(point_reflection(space, centre)), centre


def _random_angles(rng) -> tuple[float, float]:
    alpha_k = rng.uniform(0.55, 0.9) * math.pi
    return alpha_k, rng.uniform(math.pi - alpha_k + 0.3, 0.95 * math.pi)


def exp_symmetry_detector(cfg: ExperimentConfig) -> ExperimentReport:
    report = ExperimentReport("symmetry_detector")
    tol = cfg.tolerances
    spaces = [SpaceKind.from_name(n) for n in cfg.spaces]
    trials = cfg.scaled_trials(100)

    detected = meb_agreements = 0
    for i in range(trials):
        seed, rng = trial_rng(cfg.seed, "symmetric", i)
        if i % 2 == 0:
            space = spaces[(i // 2) % len(spaces)]
            a, b, centre = _symmetric_lens(space, rng)
        else:
            space = H2
            pose = random_isometry(H2, rng, 1.0)
            a, b = build_construction_c(*_random_angles(rng), cfg.lam, pose)
            centre = pose.apply(base_point(H2))
        report.trials_run += 1
        result = intersect_regions(a, b, tol=tol)
        if not result.is_compact:
            report.fail(seed, f"{space}: symmetric construction gave {result.describe()}")
            continue
        verdict = is_centrally_symmetric_polygon(result.polygon, EXACT, tol)
        error = distance(space, verdict.center, centre) if verdict.center is not None else math.inf
        if not verdict.symmetric or error > EXACT:
            report.fail(seed, f"{space}: missed a constructed symmetry", residual=verdict.residual, error=error)
            continue
        detected += 1
        report.worst("max_center_error", error)
        if meb_cross_check(result.polygon, verdict):
            meb_agreements += 1
        else:
            report.fail(seed, f"{space}: minimal enclosing ball centre disagrees", center=verdict.center)

    asymmetric = 0
    for i in range(trials):
        seed, rng = trial_rng(cfg.seed, "perturbed", i)
        pose = random_isometry(H2, rng, 1.0)
        k, l = build_construction_c(*_random_angles(rng), cfg.lam, pose)
        nudge = perturbation(H2, rng, 1e-2, about=pose.apply(base_point(H2)))
        report.trials_run += 1
        verdict = is_centrally_symmetric_result(intersect_regions(k, l.transformed(nudge), tol=tol), tolerances=tol)
        if verdict.verdict is Verdict.NOT_SYMMETRIC:
            asymmetric += 1
        else:
            logger.info("perturbed trial %d reported %s (residual %.3g)", i, verdict.verdict.value, verdict.residual)

    report.record("symmetric_detected", detected)
    report.record("meb_agreements", meb_agreements)
    report.record("perturbed_not_symmetric", asymmetric)
    required = math.ceil(0.99 * trials)
    if asymmetric < required:
        report.fail(cfg.seed, f"only {asymmetric} of {trials} perturbed polygons reported NotSymmetric",
                    required=required)
    return report
