"""Tests for the experiment suite, the catalogue and the harness."""
import math
from dataclasses import replace

import numpy as np
import pytest

import ccgeom.experiments as experiments
from ccgeom.catalogue import EXPERIMENT_CATALOGUE, EXPERIMENT_SPECS, get_catalogue_text
from ccgeom.config import ExperimentConfig, derive_seed
from ccgeom.errors import AnglesTooSmall, InvalidParameter, UnknownExperiment
from ccgeom.experiments.construction import build_construction_c, build_six_arc_rosette, inner_angle
from ccgeom.experiments.curvature import closed_form_curvature, lambert_quadrangle
from ccgeom.experiments.report import ExperimentReport, trial_rng
from ccgeom.geometry.space_core import E2, H2, S2, Point, distance
from ccgeom.harness import VerificationHarness


@pytest.fixture
def smoke_config():
    return ExperimentConfig(trials=2, samples=200)


class TestReports:
    def test_failures_mark_report(self):
        report = ExperimentReport("demo")
        assert report.passed
        report.fail(7, "broken", point=Point(E2, [1.0, 2.0]), value=np.float64(0.5))
        assert not report.passed
        entry = report.to_dict()["failures"][0]
        assert entry["witness"] == {"point": [1.0, 2.0], "value": 0.5}

    def test_worst_keeps_maximum(self):
        report = ExperimentReport("demo")
        report.worst("error", 1e-9)
        report.worst("error", 1e-12)
        assert report.metrics["error"] == 1e-9

    def test_trial_rng_is_reproducible(self):
        s1, r1 = trial_rng(42, 3)
        s2, r2 = trial_rng(42, 3)
        assert s1 == s2
        assert r1.uniform() == r2.uniform()
        assert trial_rng(42, 4)[0] != s1


class TestConfig:
    def test_derived_seeds_differ_per_experiment(self):
        cfg = ExperimentConfig(seed=5)
        assert cfg.derive("curvature").seed == derive_seed(5, "curvature")
        assert cfg.derive("curvature").seed != cfg.derive("lambert").seed

    def test_scaled_trials(self):
        cfg = ExperimentConfig(trials=3)
        assert cfg.scaled_trials(1000) == 3
        assert cfg.scaled_trials(1) == 1

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            ExperimentConfig(trials=0)


class TestHelpers:
    def test_closed_forms(self):
        assert closed_form_curvature(H2, "circle", 1.0) == pytest.approx(1.0 / math.tanh(1.0))
        assert closed_form_curvature(S2, "circle", 3.0) == pytest.approx(math.cos(math.pi - 3.0) / math.sin(math.pi - 3.0))
        assert closed_form_curvature(E2, "circle", 0.25) == 4.0
        assert closed_form_curvature(H2, "hypercycle", 2.0) == pytest.approx(math.tanh(2.0))

    def test_lambert_top_side_is_longer(self):
        pa, pb, pc, pd = lambert_quadrangle(H2, 0.7, 0.5)
        assert distance(H2, pc, pd) > distance(H2, pa, pb)
        # tanh |CD| = cosh |BC| tanh |AB|
        assert math.tanh(distance(H2, pc, pd)) == pytest.approx(math.cosh(0.5) * math.tanh(0.7), rel=1e-9)

    def test_flat_lambert_is_a_rectangle(self):
        pa, pb, pc, pd = lambert_quadrangle(E2, 0.7, 0.5)
        assert distance(E2, pc, pd) == pytest.approx(0.7, abs=1e-12)

    def test_lambert_sides_miss(self):
        # sinh a * sinh b >= 1 leaves the last two sides without a common point
        assert lambert_quadrangle(H2, 1.2, 1.2) is None

    def test_construction_angles(self):
        with pytest.raises(AnglesTooSmall):
            build_construction_c(1.0, 1.0, 0.5)
        with pytest.raises(InvalidParameter):
            build_construction_c(math.pi, 1.0, 0.5)
        with pytest.raises(InvalidParameter):
            build_six_arc_rosette(0.3, 0.5)

    def test_inner_angle_of_rosette(self):
        k, l = build_six_arc_rosette(0.8, 0.5)
        alpha = inner_angle(l.core.lines[1], k.core.lines[2])
        assert 0.0 < alpha < math.pi


class TestExperiments:
    @pytest.mark.parametrize("name", list(EXPERIMENT_SPECS))
    def test_smoke_run_passes(self, name, smoke_config):
        func = getattr(experiments, EXPERIMENT_SPECS[name]["function"].rsplit(".", 1)[1])
        report = func(smoke_config.derive(name))
        assert report.name == name
        assert report.trials_run >= 1
        assert report.passed, [f.description for f in report.failures]

    def test_bad_step_fails(self, smoke_config):
        report = experiments.exp_perturbation_asymmetry(replace(smoke_config, step=0.5))
        assert not report.passed

    @pytest.mark.parametrize("seed", range(10))
    def test_curvature_independent_of_pose(self, seed):
        report = experiments.exp_curvature(ExperimentConfig(seed=seed, spaces=("H2", "S2")))
        assert report.passed, [f.description for f in report.failures]

    def test_same_seed_same_metrics(self, smoke_config):
        first = experiments.exp_curvature(smoke_config)
        second = experiments.exp_curvature(smoke_config)
        assert first.to_dict() == second.to_dict()


class TestCatalogue:
    def test_specs_match_catalogue(self):
        assert list(EXPERIMENT_SPECS) == list(EXPERIMENT_CATALOGUE)
        assert len(EXPERIMENT_CATALOGUE) == 11

    def test_catalogue_text(self):
        text = get_catalogue_text()
        assert text.startswith("Available experiments:")
        for name in EXPERIMENT_CATALOGUE:
            assert name in text


class TestHarness:
    def test_loads_every_experiment(self):
        harness = VerificationHarness(ExperimentConfig(trials=1))
        assert list(harness.experiments) == list(EXPERIMENT_SPECS)

    def test_resolve_keeps_catalogue_order(self):
        harness = VerificationHarness()
        assert harness.resolve(["lambert", "curvature"]) == ["curvature", "lambert"]
        assert harness.resolve(["all"]) == list(EXPERIMENT_CATALOGUE)

    def test_unknown_experiment(self):
        with pytest.raises(UnknownExperiment) as info:
            VerificationHarness().resolve(["nosuch"])
        assert info.value.exit_code == 2

    def test_space_filter(self):
        harness = VerificationHarness(ExperimentConfig(spaces=("E2",)))
        assert harness._config_for("lambert").spaces == ("E2",)
        # no overlap falls back to the experiment's own spaces
        assert harness._config_for("paraball_cases").spaces == ("H2",)

    def test_run_records_metrics(self, smoke_config):
        harness = VerificationHarness(smoke_config)
        reports = harness.run(["curvature", "construction_C"])
        assert [r.name for r in reports] == ["curvature", "construction_C"]
        metrics = harness.get_metrics()
        assert set(metrics["timings"]) == {"curvature", "construction_C"}
        assert metrics["failed"] == []
