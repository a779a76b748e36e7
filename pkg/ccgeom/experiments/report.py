"""Experiment reports and per-trial seeding."""
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ..config import derive_seed
from ..geometry.space_core import Point


@dataclass
class Failure:
    """One failed assertion with the data needed to replay it."""
    seed: int
    description: str
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"seed": self.seed, "description": self.description, "witness": self.witness}


@dataclass
class ExperimentReport:
    name: str
    trials_run: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, seed: int, description: str, **witness: Any):
        self.failures.append(Failure(seed, description, {k: _plain(v) for k, v in witness.items()}))

    def record(self, name: str, value: float):
        self.metrics[name] = _plain(value)

    def worst(self, name: str, value: float):
        """Keep the maximum seen so far under `name`."""
        value = float(value)
        self.metrics[name] = max(self.metrics.get(name, value), value)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "trials_run": self.trials_run,
            "skipped": self.skipped,
            "failures": [f.to_dict() for f in self.failures],
            "metrics": dict(sorted(self.metrics.items())),
            "notes": list(self.notes),
        }


def trial_seed(seed: int, *parts) -> int:
    return derive_seed(seed, "/".join(str(p) for p in parts))


def trial_rng(seed: int, *parts) -> tuple[int, np.random.Generator]:
    s = trial_seed(seed, *parts)
    return s, np.random.default_rng(s)


def _plain(value: Any) -> Any:
    """JSON-friendly copy of witness data."""
    if isinstance(value, Point):
        return [float(c) for c in value.coords]
    if isinstance(value, np.ndarray):
        return [float(c) for c in value.ravel()]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value
