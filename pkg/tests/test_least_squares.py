# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

import numpy as np
import pytest

from aris.core import ReflectionMode, project_coefficients
from aris.errors import ConvergenceError, DimensionError
from aris.solvers import (
    SolverOptions,
    StepRule,
    ls_gradient,
    ls_objective,
    solve_disk_ls,
    solve_unit_modulus_gp,
)


def _system(rng, rows=8, cols=3, scale=1.0):
    A = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    d = scale * (rng.standard_normal(rows) + 1j * rng.standard_normal(rows))
    return A, d


def _assert_non_increasing(history):
    steps = np.diff(history)
    assert np.all(steps <= 1e-12 * max(1.0, history[0]))


class TestObjective:
    def test_gradient_matches_finite_differences(self, rng):
        A, d = _system(rng)
        phi = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        grad = ls_gradient(A, d, phi)
        eps = 1e-6
        for k in range(3):
            e = np.zeros(3)
            e[k] = eps
            d_re = (ls_objective(A, d, phi + e) - ls_objective(A, d, phi - e)) / (2 * eps)
            d_im = (ls_objective(A, d, phi + 1j * e) - ls_objective(A, d, phi - 1j * e)) / (2 * eps)
            assert grad[k].real == pytest.approx(d_re, rel=1e-5)
            assert grad[k].imag == pytest.approx(d_im, rel=1e-5)


class TestDiskLeastSquares:
    def test_recovers_an_interior_solution(self, rng):
        A, _ = _system(rng)
        target = np.array([0.3 + 0.2j, -0.5j, 0.1])
        result = solve_disk_ls(A, -A @ target)
        assert result.converged
        assert result.residual == pytest.approx(0.0, abs=1e-8)
        np.testing.assert_allclose(result.phi.coeffs, target, atol=1e-7)

    def test_single_element_closed_form(self, rng):
        A, d = _system(rng, rows=5, cols=1, scale=4.0)
        a = A[:, 0]
        expected = project_coefficients([-np.vdot(a, d) / np.vdot(a, a)], ReflectionMode.ABSORPTIVE)
        result = solve_disk_ls(A, d)
        np.testing.assert_allclose(result.phi.coeffs, expected, atol=1e-7)

    def test_no_feasible_point_does_better(self, rng):
        A, d = _system(rng, scale=5.0)
        result = solve_disk_ls(A, d)
        best = result.residual**2
        for _ in range(2000):
            candidate = project_coefficients(
                rng.uniform(0, 1, 3) * np.exp(1j * rng.uniform(-np.pi, np.pi, 3)),
                ReflectionMode.ABSORPTIVE,
            )
            assert ls_objective(A, d, candidate) >= best - 1e-9

    @pytest.mark.parametrize("rule", list(StepRule))
    def test_history_never_increases(self, rng, rule):
        A, d = _system(rng, rows=12, cols=5, scale=3.0)
        result = solve_disk_ls(A, d, SolverOptions(50000, 1e-8, rule))
        assert result.history[-1] == pytest.approx(result.residual)
        _assert_non_increasing(result.history)

    def test_step_rules_agree(self, rng):
        A, d = _system(rng, rows=12, cols=5, scale=3.0)
        fixed = solve_disk_ls(A, d, SolverOptions(50000, 1e-9, StepRule.FIXED_SAFE_STEP))
        backtracking = solve_disk_ls(A, d, SolverOptions(50000, 1e-9, StepRule.BACKTRACKING))
        assert fixed.residual == pytest.approx(backtracking.residual, rel=1e-6)

    def test_zero_system_switches_the_surface_off(self):
        result = solve_disk_ls(np.zeros((4, 2)), np.array([3.0, 4.0, 0.0, 0.0]))
        assert result.iterations == 0
        assert result.residual == pytest.approx(5.0)
        assert np.all(result.phi.coeffs == 0)

    def test_budget_exhaustion_raises(self, rng):
        A, d = _system(rng, rows=20, cols=6, scale=10.0)
        with pytest.raises(ConvergenceError) as excinfo:
            solve_disk_ls(A, d, SolverOptions(1, 1e-14))
        assert excinfo.value.last_iterate is not None
        assert excinfo.value.residual > 0

    def test_dimension_mismatch(self, rng):
        A, d = _system(rng)
        with pytest.raises(DimensionError):
            solve_disk_ls(A, d[:-1])


class TestUnitModulus:
    def test_solution_has_unit_modulus(self, rng):
        A, d = _system(rng, rows=12, cols=5, scale=3.0)
        result = solve_unit_modulus_gp(A, d)
        np.testing.assert_allclose(result.phi.moduli, 1.0, atol=1e-12)
        assert result.phi.mode is ReflectionMode.CONVENTIONAL
        _assert_non_increasing(result.history)

    def test_single_element_closed_form(self, rng):
        A, d = _system(rng, rows=5, cols=1, scale=4.0)
        expected = np.exp(1j * np.angle(-np.vdot(A[:, 0], d)))
        result = solve_unit_modulus_gp(A, d)
        assert result.phi.coeffs[0] == pytest.approx(expected)

    def test_disk_never_loses_to_the_circle(self, rng):
        for _ in range(10):
            A, d = _system(rng, rows=8, cols=4, scale=2.0)
            disk = solve_disk_ls(A, d)
            circle = solve_unit_modulus_gp(A, d)
            assert disk.residual <= circle.residual + 1e-7

    def test_rank_deficient_start(self, rng):
        column = rng.standard_normal(6) + 1j * rng.standard_normal(6)
        A = np.stack([column, column], axis=1)
        d = rng.standard_normal(6) + 0j
        result = solve_unit_modulus_gp(A, d)
        np.testing.assert_allclose(result.phi.moduli, 1.0, atol=1e-12)

    def test_budget_exhaustion_keeps_the_best_iterate(self, rng):
        A, d = _system(rng, rows=12, cols=5, scale=3.0)
        result = solve_unit_modulus_gp(A, d, SolverOptions(1, 1e-15))
        assert result.iterations == 1
        assert result.residual == pytest.approx(min(result.history))
