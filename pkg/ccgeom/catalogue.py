"""Experiment catalogue - what the harness can run.

Each experiment instantiates one configuration from a proof (or one of its
counterexamples), runs the geometric pipeline on it and checks the
conclusion. The catalogue is the single registry: the harness resolves
functions from EXPERIMENT_SPECS and the CLI lists EXPERIMENT_CATALOGUE.
"""

# Minimal catalogue - name + one-line description, in run order
EXPERIMENT_CATALOGUE = {
    # Cycles
    "curvature": "Finite-difference curvature against the closed forms",
    "lambert": "Lambert quadrangles: |AB| < |CD| in H2, equality in E2",

    # Balls and paraballs
    "balls_intersection": "Congruent disks meet symmetrically about the midpoint",
    "paraball_cases": "Paraball pairs: symmetric, or one ideal point",
    "theorem4_disks": "Hull of two disks is symmetric iff they are congruent",

    # Hypercycles
    "small_hypercycle_intersections": "Small intersections reduce to single components",
    "lemma21": "Tangent base lines: congruent footprints, asymmetric meet",
    "hypercycle_lemmas": "Inclusion, centre trichotomy and enclosing-ball uniqueness",

    # Constructions
    "construction_C": "Two-component regions with covering caps meet in 4 arcs",
    "perturbation_asymmetry": "Translating a symmetric rosette widens the inner angle",
    "symmetry_detector": "Detector finds built symmetries and rejects perturbed ones",
}


def get_catalogue_text() -> str:
    """Format catalogue as an aligned listing."""
    width = max(len(name) for name in EXPERIMENT_CATALOGUE)
    lines = ["Available experiments:"]
    for name, desc in EXPERIMENT_CATALOGUE.items():
        lines.append(f"  {name:<{width}}  {desc}")
    return "\n".join(lines)


# Execution specs - used by the harness
EXPERIMENT_SPECS = {
    "curvature": {
        "function": "experiments.curvature.exp_curvature",
        "spaces": ["S2", "E2", "H2"],
    },
    "lambert": {
        "function": "experiments.curvature.exp_lambert",
        "spaces": ["H2", "E2"],
    },
    "balls_intersection": {
        "function": "experiments.balls.exp_balls_intersection",
        "spaces": ["S2", "E2", "H2"],
    },
    "paraball_cases": {
        "function": "experiments.balls.exp_paraball_cases",
        "spaces": ["H2"],
    },
    "theorem4_disks": {
        "function": "experiments.balls.exp_theorem4_disks",
        "spaces": ["S2", "E2", "H2"],
    },
    "small_hypercycle_intersections": {
        "function": "experiments.hypercycles.exp_small_hypercycle_intersections",
        "spaces": ["H2"],
    },
    "lemma21": {
        "function": "experiments.hypercycles.exp_lemma21",
        "spaces": ["H2"],
    },
    "hypercycle_lemmas": {
        "function": "experiments.hypercycles.exp_hypercycle_lemmas",
        "spaces": ["H2"],
    },
    "construction_C": {
        "function": "experiments.construction.exp_construction_C",
        "spaces": ["H2"],
    },
    "perturbation_asymmetry": {
        "function": "experiments.construction.exp_perturbation_asymmetry",
        "spaces": ["H2"],
    },
    "symmetry_detector": {
        "function": "experiments.construction.exp_symmetry_detector",
        "spaces": ["S2", "E2", "H2"],
    },
}
