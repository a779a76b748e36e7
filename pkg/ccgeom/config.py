"""ccgeom configuration - tolerances and experiment settings."""
import hashlib
import math
from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class Tolerances:
    """Every numeric threshold used by the library, in one place."""

    form: float = 1e-10           # bilinear form preservation of isometries
    geometry: float = 1e-8        # point-on-object and centre agreement
    symmetry: float = 1e-6        # reflection residual for a symmetric verdict
    boundary_band: float = 1e-9   # width of the Boundary band in contains()
    tangency: float = 1e-12       # discriminant treated as a double root
    chart: float = 1e-12          # margin kept from the edge of a chart domain
    ideal: float = 1e-9           # equality of ideal points (radians)

    def with_symmetry(self, tol: float) -> "Tolerances":
        return replace(self, symmetry=tol)


DEFAULT_TOLERANCES = Tolerances()


@dataclass
class ExperimentConfig:
    """Configuration shared by every verification experiment."""

    # Spaces the space-generic experiments run in
    spaces: tuple = ("S2", "E2", "H2")

    # Trial control
    trials: int = 1000               # cap on each experiment's own trial count
    seed: int = 42
    samples: int = 10_000            # membership-sampling oracle size

    tolerances: Tolerances = field(default_factory=Tolerances)

    # Construction parameters
    alpha_k: float = 2 * math.pi / 3  # opening angle of K's two-component region
    alpha_l: float = 2 * math.pi / 3
    lam: float = 1.0                  # parallel-domain distance
    radius: float = 1.0               # congruent-disk radius
    step: float = 1e-2                # translation step along a base line

    verbose: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.lam <= 0 or self.radius <= 0:
            raise ValueError("lam and radius must be positive")

    def derive(self, name: str) -> "ExperimentConfig":
        """Copy with the per-experiment seed hash(master seed, name)."""
        return replace(self, seed=derive_seed(self.seed, name))

    def scaled_trials(self, full: int) -> int:
        """Trial count for an experiment whose full-size run uses `full` trials."""
        return max(1, min(full, self.trials))


def derive_seed(master: int, name: str) -> int:
    digest = hashlib.sha256(f"{master}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# Named suites, selectable with --preset
SUITE_PRESETS = {
    "smoke": {
        "trials": 1,
        "samples": 500,
        "description": "One trial per experiment, quick sanity run",
    },
    "default": {
        "trials": 1000,
        "samples": 10_000,
        "description": "Acceptance-sized run",
    },
    "thorough": {
        "trials": 1000,
        "samples": 20_000,
        "description": "Acceptance trial counts with a denser sampling oracle",
    },
}
