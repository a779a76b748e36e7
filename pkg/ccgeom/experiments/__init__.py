# Verification experiments, one module per family
from .balls import exp_balls_intersection, exp_paraball_cases, exp_theorem4_disks
from .construction import exp_construction_C, exp_perturbation_asymmetry, exp_symmetry_detector
from .curvature import exp_curvature, exp_lambert
from .hypercycles import exp_hypercycle_lemmas, exp_lemma21, exp_small_hypercycle_intersections
from .report import ExperimentReport, Failure

__all__ = [
    "ExperimentReport",
    "Failure",
    "exp_balls_intersection",
    "exp_construction_C",
    "exp_curvature",
    "exp_hypercycle_lemmas",
    "exp_lambert",
    "exp_lemma21",
    "exp_paraball_cases",
    "exp_perturbation_asymmetry",
    "exp_small_hypercycle_intersections",
    "exp_symmetry_detector",
    "exp_theorem4_disks",
]
