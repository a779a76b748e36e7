"""Verification harness.

Runs catalogue experiments one after another. Every experiment receives a
copy of the configuration whose seed is derived from the master seed and the
experiment name, so any single experiment can be rerun in isolation and
reproduces the numbers it produced inside the full suite.
"""
import importlib
import logging
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

from .catalogue import EXPERIMENT_CATALOGUE, EXPERIMENT_SPECS
from .config import ExperimentConfig
from .errors import UnknownExperiment
from .experiments.report import ExperimentReport

logger = logging.getLogger(__name__)


@dataclass
class HarnessMetrics:
    """Track suite performance."""
    timings: dict = field(default_factory=dict)  # experiment -> seconds
    trials: dict = field(default_factory=dict)   # experiment -> trials run
    total_time: float = 0.0
    failed: list = field(default_factory=list)


class VerificationHarness:
    """Resolves experiments from the catalogue and runs them in catalogue order."""

    def __init__(self, config: Optional[ExperimentConfig] = None):
        self.config = config or ExperimentConfig()
        self.metrics = HarnessMetrics()
        self.experiments = self._load_experiments()

    def _load_experiments(self) -> dict[str, Callable[[ExperimentConfig], ExperimentReport]]:
        """Import experiment functions named in EXPERIMENT_SPECS."""
        loaded = {}
        for name, spec in EXPERIMENT_SPECS.items():
            module_path, func_name = spec["function"].rsplit(".", 1)
            module = importlib.import_module(f"{__package__}.{module_path}")
            loaded[name] = getattr(module, func_name)
        return loaded

    def resolve(self, names: Sequence[str]) -> list[str]:
        """Expand "all" and validate names, keeping catalogue order."""
        if not names or list(names) == ["all"]:
            return list(EXPERIMENT_CATALOGUE)
        unknown = [n for n in names if n not in self.experiments]
        if unknown:
            raise UnknownExperiment(f"unknown experiment(s): {', '.join(unknown)}")
        return [n for n in EXPERIMENT_CATALOGUE if n in names]

    def _config_for(self, name: str) -> ExperimentConfig:
        cfg = self.config.derive(name)
        wanted = EXPERIMENT_SPECS[name]["spaces"]
        spaces = tuple(s for s in cfg.spaces if s in wanted)
        return replace(cfg, spaces=spaces or tuple(wanted))

    def run(self, names: Sequence[str] = ("all",)) -> list[ExperimentReport]:
        selected = self.resolve(names)
        self.metrics = HarnessMetrics()
        reports = []
        total_start = time.perf_counter()

        if self.config.verbose:
            print(f"\n{'=' * 60}")
            print(f"Verifying {len(selected)} experiment(s), master seed {self.config.seed}")
            print(f"{'=' * 60}")

        for name in selected:
            start = time.perf_counter()
            logger.debug("running %s", name)
            report = self.experiments[name](self._config_for(name))
            elapsed = time.perf_counter() - start

            self.metrics.timings[name] = elapsed
            self.metrics.trials[name] = report.trials_run
            if not report.passed:
                self.metrics.failed.append(name)
                logger.warning("%s: %d failure(s)", name, len(report.failures))
            if self.config.verbose:
                mark = "PASS" if report.passed else "FAIL"
                print(f"  [{mark}] {name:<32} {report.trials_run:>6} trials  {elapsed:.2f}s")
            reports.append(report)

        self.metrics.total_time = time.perf_counter() - total_start
        if self.config.verbose:
            self._print_metrics()
        return reports

    def _print_metrics(self):
        """Print suite metrics."""
        print("\nHarness Metrics:")
        print(f"   Experiments:  {len(self.metrics.timings)}")
        print(f"   Trials:       {sum(self.metrics.trials.values())}")
        print(f"   Failed:       {', '.join(self.metrics.failed) or 'none'}")
        print(f"   Total:        {self.metrics.total_time:.1f}s")

    def get_metrics(self) -> dict:
        """Get suite metrics."""
        return {
            "timings": dict(self.metrics.timings),
            "trials": dict(self.metrics.trials),
            "total_time": self.metrics.total_time,
            "failed": list(self.metrics.failed),
        }


def run_all(cfg: Optional[ExperimentConfig] = None) -> list[ExperimentReport]:
    """Run every catalogue experiment with per-experiment derived seeds."""
    return VerificationHarness(cfg).run(["all"])
