# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

import numpy as np
import pytest

from aris.core import ReflectionMode
from aris.errors import ArisError
from aris.solvers import randomize_rank_one

from conftest import random_psd


def _quadratic(C):
    def objective(phi):
        x = phi.augmented()
        return float(np.real(np.vdot(x, C @ x)))

    return objective


class TestRandomizeRankOne:
    @pytest.mark.parametrize("mode", list(ReflectionMode))
    def test_rank_one_input_is_recovered(self, rng, mode):
        phi = np.exp(1j * rng.uniform(-np.pi, np.pi, 4))
        x = 1.7 * np.exp(0.4j) * np.append(phi, 1.0)
        recovered, _ = randomize_rank_one(np.outer(x, x.conj()), _quadratic(np.eye(5)), mode, seed=1)
        np.testing.assert_allclose(recovered.coeffs, phi, atol=1e-9)

    @pytest.mark.parametrize("mode", list(ReflectionMode))
    def test_output_is_feasible(self, rng, mode):
        recovered, value = randomize_rank_one(
            random_psd(rng, 6), _quadratic(random_psd(rng, 6)), mode, trials=30, seed=5
        )
        assert recovered.mode is mode
        assert len(recovered) == 5
        assert np.isfinite(value)

    def test_more_trials_never_hurt(self, rng):
        X = random_psd(rng, 5)
        objective = _quadratic(random_psd(rng, 5))
        values = [
            randomize_rank_one(X, objective, ReflectionMode.ABSORPTIVE, trials=n, seed=9)[1]
            for n in (1, 10, 100)
        ]
        assert values[0] <= values[1] <= values[2]

    def test_same_seed_same_answer(self, rng):
        X = random_psd(rng, 4)
        objective = _quadratic(random_psd(rng, 4))
        first = randomize_rank_one(X, objective, ReflectionMode.CONVENTIONAL, trials=20, seed=3)
        second = randomize_rank_one(X, objective, ReflectionMode.CONVENTIONAL, trials=20, seed=3)
        assert first[0] == second[0]

    def test_returned_value_is_the_objective(self, rng):
        C = random_psd(rng, 4)
        recovered, value = randomize_rank_one(
            random_psd(rng, 4), _quadratic(C), ReflectionMode.ABSORPTIVE, trials=10, seed=0
        )
        assert value == pytest.approx(_quadratic(C)(recovered))

    def test_rejects_zero_trials(self, rng):
        with pytest.raises(ArisError):
            randomize_rank_one(random_psd(rng, 3), _quadratic(np.eye(3)), ReflectionMode.ABSORPTIVE, trials=0)
