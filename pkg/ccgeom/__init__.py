# ccgeom - cycles, regions and central symmetry in S^2, E^2 and H^2
from .config import DEFAULT_TOLERANCES, ExperimentConfig, Tolerances
from .harness import VerificationHarness, run_all

__all__ = ["VerificationHarness", "ExperimentConfig", "Tolerances", "DEFAULT_TOLERANCES", "run_all"]
__version__ = "0.1.0"
