# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

import math

import numpy as np
import pytest

from aris.channels import rng_for
from aris.core import ReflectionMode
from aris.errors import ArisError
from aris.harness import ExperimentConfig, run_experiment, run_trial
from aris.harness import runner

SMALL_DINKELBACH = dict(
    sdp_max_iters=500,
    dinkelbach_max_iters=5,
    scp_max_iters=5,
    randomization_trials=20,
)


def _radar_comm(**settings):
    values = dict(num_tx=2, num_rx=2, num_elements=3, trials=3, sweep=(0.0, 10.0))
    values.update(settings)
    return ExperimentConfig("radar_comm_sigma_d", **values)


def _rows(result):
    return [
        (row.sweep_value, row.label, row.means, row.stds, row.mean_modulus, row.trials_ok)
        for row in result
    ]


class TestInstances:
    def test_radar_comm_draw_uses_the_config(self):
        cfg = _radar_comm(num_tx=3, num_rx=4, num_elements=5)
        inst = runner.radar_comm_instance(cfg, rng_for(1, 0, 0))
        assert inst.direct.shape == (4, 3)
        assert inst.incident.shape == (5, 3)
        assert inst.reflected.shape == (4, 5)

    def test_mmwave_draw(self):
        cfg = _radar_comm(channel_model="mmwave", clusters=1, subpaths=1)
        inst = runner.radar_comm_instance(cfg, rng_for(1, 0, 0))
        assert np.linalg.matrix_rank(inst.direct, tol=1e-9) == 1

    def test_pls_draw_has_the_jammer(self):
        cfg = ExperimentConfig("pls_sigma_de", num_elements=3)
        inst = runner.pls_instance(cfg, rng_for(1, 0, 0))
        assert inst.jammer_enabled
        assert inst.num_elements == 3
        assert inst.noise_b > cfg.noise_b

    def test_d2d_draw(self):
        cfg = ExperimentConfig("d2d_power", num_links=3, num_elements=2, power=5.0)
        inst = runner.d2d_instance(cfg, rng_for(1, 0, 0))
        np.testing.assert_array_equal(inst.powers, [5.0, 5.0, 5.0])


class TestRunTrial:
    def test_labels_share_one_draw(self):
        cfg = _radar_comm(trials=1, num_elements=6).at(10.0)
        for trial in range(5):
            aris, conventional = run_trial(cfg, 0, trial)
            assert aris.metrics[0] <= conventional.metrics[0]

    def test_trial_is_reproducible(self):
        cfg = _radar_comm().at(0.0)
        first = run_trial(cfg, 1, 2)
        second = run_trial(cfg, 1, 2)
        assert [o.metrics for o in first] == [o.metrics for o in second]

    def test_failures_are_isolated(self, monkeypatch):
        make_instance, solve = runner._FAMILIES["radarcomm"]

        def flaky(cfg, inst, mode, jammer, seed, reference=None):
            if mode is ReflectionMode.CONVENTIONAL:
                raise ArisError("no luck")
            return solve(cfg, inst, mode, jammer, seed, reference)

        monkeypatch.setitem(runner._FAMILIES, "radarcomm", (make_instance, flaky))
        outcomes = run_trial(_radar_comm().at(0.0), 0, 0)
        assert outcomes[0] is not None
        assert outcomes[1] is None


class TestRunExperiment:
    def test_rows_cover_every_point_and_label(self):
        result = run_experiment(_radar_comm())
        assert [(row.sweep_value, row.label) for row in result] == [
            (0.0, "aris"),
            (0.0, "conventional"),
            (10.0, "aris"),
            (10.0, "conventional"),
        ]
        for row in result:
            assert row.trials_ok == 3
            assert row.trials_failed == 0
            assert math.isfinite(row.means["residual_db"])

    def test_absorptive_mean_is_never_worse(self):
        result = run_experiment(_radar_comm(trials=5))
        for value in (0.0, 10.0):
            assert (
                result.row(value, "aris").means["residual"]
                <= result.row(value, "conventional").means["residual"] + 1e-7
            )

    def test_same_seed_same_result(self):
        assert _rows(run_experiment(_radar_comm())) == _rows(run_experiment(_radar_comm()))

    def test_other_seed_other_result(self):
        assert _rows(run_experiment(_radar_comm())) != _rows(run_experiment(_radar_comm(seed=1)))

    def test_workers_do_not_change_the_result(self):
        serial = run_experiment(_radar_comm(trials=4))
        parallel = run_experiment(_radar_comm(trials=4, workers=2))
        assert _rows(serial) == _rows(parallel)

    def test_failed_trials_are_counted(self, monkeypatch, log_messages):
        make_instance, solve = runner._FAMILIES["radarcomm"]

        def broken(cfg, inst, mode, jammer, seed, reference=None):
            if mode is ReflectionMode.CONVENTIONAL:
                raise np.linalg.LinAlgError("singular")
            return solve(cfg, inst, mode, jammer, seed, reference)

        monkeypatch.setitem(runner._FAMILIES, "radarcomm", (make_instance, broken))
        result = run_experiment(_radar_comm(sweep=(0.0,)))
        failed = result.row(0.0, "conventional")
        assert failed.trials_ok == 0
        assert failed.trials_failed == 3
        assert math.isnan(failed.means["residual"])
        assert math.isnan(failed.mean_modulus)
        assert result.row(0.0, "aris").trials_ok == 3
        assert any("3 of 3 trials failed" in message for _, _, message in log_messages)

    def test_d2d_metrics(self):
        cfg = ExperimentConfig(
            "d2d_power",
            num_links=2,
            num_elements=2,
            trials=2,
            sweep=(10.0,),
            modes=("aris",),
            **SMALL_DINKELBACH
        )
        row = run_experiment(cfg).row(10.0, "aris")
        assert row.trials_ok == 2
        assert math.isfinite(row.means["worst_sinr_db"])
        assert row.means["offdiag_ratio"] >= 0.0
        assert 0.0 <= row.mean_modulus <= 1.0

    def test_pls_jammer_variants(self):
        cfg = ExperimentConfig(
            "pls_sigma_de",
            num_elements=2,
            trials=2,
            sweep=(0.0,),
            modes=("aris",),
            jammer="both",
            **SMALL_DINKELBACH
        )
        result = run_experiment(cfg)
        assert result.labels == ["aris", "aris+jammer"]
        for row in result:
            assert row.means["secrecy_rate"] >= 0.0

    def test_convergence_trajectory(self):
        cfg = ExperimentConfig(
            "pls_convergence",
            num_elements=2,
            trials=2,
            sweep=(0.0, 1.0, 2.0, 3.0),
            **SMALL_DINKELBACH
        )
        result = run_experiment(cfg)
        xs, costs = result.series("cost", "aris")
        assert xs == [0.0, 1.0, 2.0, 3.0]
        assert np.all(np.diff(costs) >= -1e-12)
        assert all(row.trials_ok == 2 for row in result)

    def test_convergence_inner_objective(self):
        cfg = ExperimentConfig(
            "pls_convergence",
            num_elements=2,
            trials=2,
            sweep=(0.0, 1.0, 2.0),
            **SMALL_DINKELBACH
        )
        result = run_experiment(cfg)
        xs, inner = result.series("inner_objective", "aris")
        assert xs == [0.0, 1.0, 2.0]
        assert np.all(np.isfinite(inner))
        assert np.all(np.diff(inner) >= -1e-12)

    def test_d2d_rows_carry_channel_moduli(self):
        cfg = ExperimentConfig(
            "d2d_power",
            num_links=3,
            num_elements=2,
            trials=2,
            sweep=(0.0, 10.0),
            **SMALL_DINKELBACH
        )
        result = run_experiment(cfg)
        assert result.has_channel_moduli
        for row in result:
            assert row.channel_moduli.shape == (3, 3)
            assert np.all(row.channel_moduli >= 0.0)

    def test_radar_comm_rows_have_no_channel_moduli(self):
        result = run_experiment(_radar_comm(sweep=(0.0,)))
        assert not result.has_channel_moduli
        assert all(row.channel_moduli is None for row in result)


class TestModeOrderingPerTrial:
    def test_d2d_absorptive_never_trails(self):
        cfg = ExperimentConfig(
            "d2d_power", num_links=2, num_elements=3, trials=1, **SMALL_DINKELBACH
        ).at(10.0)
        for trial in range(6):
            aris, conventional = run_trial(cfg, 0, trial)
            assert aris.metrics[0] >= conventional.metrics[0]

    def test_pls_absorptive_never_trails_per_jammer_state(self):
        cfg = ExperimentConfig(
            "pls_sigma_de", num_elements=3, trials=1, jammer="both", **SMALL_DINKELBACH
        ).at(0.0)
        for trial in range(4):
            aris, aris_jammer, conventional, conventional_jammer = run_trial(cfg, 0, trial)
            assert aris.metrics[0] >= conventional.metrics[0]
            assert aris_jammer.metrics[0] >= conventional_jammer.metrics[0]

    def test_reference_goes_to_the_absorptive_label_only(self, monkeypatch):
        make_instance, solve = runner._FAMILIES["radarcomm"]
        seen = []

        def recording(cfg, inst, mode, jammer, seed, reference=None):
            seen.append((mode, reference is not None))
            return solve(cfg, inst, mode, jammer, seed, reference)

        monkeypatch.setitem(runner._FAMILIES, "radarcomm", (make_instance, recording))
        run_trial(_radar_comm().at(0.0), 0, 0)
        assert seen == [(ReflectionMode.CONVENTIONAL, False), (ReflectionMode.ABSORPTIVE, True)]
