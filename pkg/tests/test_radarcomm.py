# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

import numpy as np
import pytest

from aris.core import ReflectionMode, ReflectionVector, vectorize
from aris.errors import DimensionError
from aris.radarcomm import (
    RadarCommDesign,
    RadarCommInstance,
    build_ls_system,
    design_aris,
    design_conventional,
    mean_modulus,
)

from conftest import make_radar_comm, polar_grid


def _grid_minimum(inst, points):
    """Smallest residual over every pair of grid coefficients of a two element surface."""
    A, d = build_ls_system(inst)
    best = np.inf
    for start in range(0, points.size, 256):
        first = points[start : start + 256]
        # rows: first element, columns: second element
        stacked = (
            d[:, np.newaxis, np.newaxis]
            + A[:, 0, np.newaxis, np.newaxis] * first[np.newaxis, :, np.newaxis]
            + A[:, 1, np.newaxis, np.newaxis] * points[np.newaxis, np.newaxis, :]
        )
        best = min(best, float(np.min(np.sum(np.abs(stacked) ** 2, axis=0))))
    return np.sqrt(best)


class TestInstance:
    def test_dimensions_are_checked(self, rng):
        with pytest.raises(DimensionError):
            RadarCommInstance(np.ones((2, 3)), np.ones((4, 2)), np.ones((2, 4)))
        with pytest.raises(DimensionError):
            RadarCommInstance(np.ones((2, 3)), np.ones((4, 3)), np.ones((3, 4)))

    def test_ls_system_matches_the_channel(self, rng):
        inst = make_radar_comm(rng, num_tx=3, num_rx=4, num_elements=5)
        A, d = build_ls_system(inst)
        assert A.shape == (12, 5)
        phi = ReflectionVector.from_polar(rng.uniform(0, 1, 5), rng.uniform(-np.pi, np.pi, 5))
        np.testing.assert_allclose(
            d + A @ phi.coeffs, vectorize(inst.interference_channel(phi)), atol=1e-12
        )
        assert inst.residual(phi) == pytest.approx(np.linalg.norm(d + A @ phi.coeffs))


class TestDesign:
    def test_absorptive_beats_phase_only(self, rng):
        for _ in range(5):
            inst = make_radar_comm(rng, num_tx=3, num_rx=3, num_elements=8)
            aris = design_aris(inst)
            conventional = design_conventional(inst)
            assert aris.phi.mode is ReflectionMode.ABSORPTIVE
            assert conventional.phi.mode is ReflectionMode.CONVENTIONAL
            assert aris.residual <= conventional.residual

    def test_absorptive_design_matches_a_grid_search(self, rng):
        inst = make_radar_comm(rng)
        aris = design_aris(inst)
        grid = _grid_minimum(inst, polar_grid(modulus_step=0.05, phase_step_deg=3.0))
        assert aris.residual <= grid + 1e-9

    def test_phase_only_design_is_near_a_grid_search(self, rng):
        inst = make_radar_comm(rng)
        conventional = design_conventional(inst)
        grid = _grid_minimum(inst, polar_grid(phase_step_deg=1.0, include_inner=False))
        # grid points lie on the feasible set, so no design can beat them by more than rounding
        assert conventional.residual >= grid - 1e-3
        np.testing.assert_allclose(conventional.phi.moduli, 1.0, atol=1e-12)

    def test_switching_off_is_optimal_without_a_direct_path(self, rng):
        inst = make_radar_comm(rng)
        silent = RadarCommInstance(np.zeros_like(inst.direct), inst.incident, inst.reflected)
        design = design_aris(silent)
        assert design.residual == pytest.approx(0.0, abs=1e-9)
        assert np.isfinite(design.residual_db)
        assert mean_modulus(design.phi) == pytest.approx(0.0, abs=1e-6)

    def test_design_unpacks(self, rng):
        phi, residual = design_aris(make_radar_comm(rng))
        assert isinstance(phi, ReflectionVector)
        assert residual >= 0.0

    def test_residual_db(self, rng):
        design = design_aris(make_radar_comm(rng))
        assert design.residual_db == pytest.approx(20.0 * np.log10(design.residual))

    def test_mean_modulus(self):
        assert mean_modulus(ReflectionVector([0.5, 1.0, 0.0])) == pytest.approx(0.5)


class TestSingleElement:
    def test_absorption_cancels_a_weaker_direct_path(self, rng):
        for _ in range(1000):
            d, g, h = rng.standard_normal(3) + 1j * rng.standard_normal(3)
            inst = RadarCommInstance([[d]], [[g]], [[h]])
            design = design_aris(inst)
            assert design.residual == pytest.approx(max(0.0, abs(d) - abs(g * h)), abs=1e-6)
            if abs(d) < abs(g * h):
                assert design.phi.moduli[0] == pytest.approx(abs(d) / abs(g * h), abs=1e-6)


def _prefix(inst, num_elements):
    """The same channels with only the first ``num_elements`` surface elements."""
    return RadarCommInstance(
        inst.direct, inst.incident[:num_elements], inst.reflected[:, :num_elements]
    )


class TestModeOrdering:
    @pytest.mark.slow
    def test_absorptive_never_trails_over_many_instances(self, rng):
        for _ in range(500):
            elements = int(rng.integers(1, 9))
            inst = make_radar_comm(
                rng, num_tx=2, num_rx=2, num_elements=elements, direct_variance=rng.uniform(0.1, 10)
            )
            assert design_aris(inst).residual <= design_conventional(inst).residual

    def test_reference_is_kept_when_it_is_better(self, rng):
        inst = make_radar_comm(rng)
        conventional = design_conventional(inst)
        # a reference claiming a perfect fit must win
        reference = RadarCommDesign(conventional.phi, 0.0, 1, True)
        design = design_aris(inst, reference=reference)
        assert design.phi.mode is ReflectionMode.ABSORPTIVE
        np.testing.assert_array_equal(design.phi.coeffs, conventional.phi.coeffs)
        assert design.residual == 0.0

    def test_reference_matches_the_internal_run(self, rng):
        inst = make_radar_comm(rng, num_elements=4)
        external = design_aris(inst, reference=design_conventional(inst))
        assert external.residual == design_aris(inst).residual


class TestElementCount:
    def test_residual_is_monotone_over_nested_surfaces(self, rng):
        for _ in range(5):
            inst = make_radar_comm(rng, num_tx=3, num_rx=3, num_elements=8)
            residuals = [design_aris(_prefix(inst, k)).residual for k in range(1, 9)]
            for smaller, larger in zip(residuals, residuals[1:]):
                assert larger <= smaller * (1.0 + 1e-4) + 1e-6
