# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

import math

import numpy as np
import pytest

from aris import constants
from aris.channels import (
    MmwParams,
    complex_gaussian,
    mmw_matrix,
    rayleigh_matrix,
    rayleigh_vector,
    rng_for,
)
from aris.errors import ArisError, DimensionError


class TestRayleigh:
    @pytest.mark.parametrize("variance, tolerance", [(1.0, 0.02), (4.0, 0.08)])
    def test_second_moment(self, variance, tolerance):
        samples = rayleigh_matrix(1000, 100, variance, 7)
        assert np.mean(np.abs(samples) ** 2) == pytest.approx(variance, abs=tolerance)

    def test_real_and_imaginary_parts_share_the_variance(self):
        samples = rayleigh_vector(100000, 2.0, 11)
        assert np.var(samples.real) == pytest.approx(1.0, abs=0.02)
        assert np.var(samples.imag) == pytest.approx(1.0, abs=0.02)

    def test_real_part_is_gaussian(self):
        samples = rayleigh_vector(1000000, 1.0, 3).real
        kurtosis = np.mean(samples**4) / np.mean(samples**2) ** 2
        assert kurtosis == pytest.approx(3.0, abs=0.1)

    def test_same_seed_same_draw(self):
        np.testing.assert_array_equal(rayleigh_matrix(3, 4, 1.0, 5), rayleigh_matrix(3, 4, 1.0, 5))
        assert not np.array_equal(rayleigh_matrix(3, 4, 1.0, 5), rayleigh_matrix(3, 4, 1.0, 6))

    def test_generator_streams_continue(self):
        rng = np.random.default_rng(1)
        first = rayleigh_vector(3, 1.0, rng)
        second = rayleigh_vector(3, 1.0, rng)
        assert not np.array_equal(first, second)

    def test_invalid_arguments(self):
        with pytest.raises(DimensionError):
            rayleigh_matrix(0, 3, 1.0, 0)
        with pytest.raises(ArisError):
            rayleigh_matrix(2, 2, 0.0, 0)

    def test_scalar_draw(self):
        value = complex_gaussian((), 1.0, 0)
        assert np.shape(value) == ()


class TestRngFor:
    def test_streams_are_reproducible_and_distinct(self):
        a = rng_for(2023, 1, 2).standard_normal(4)
        np.testing.assert_array_equal(a, rng_for(2023, 1, 2).standard_normal(4))
        assert not np.array_equal(a, rng_for(2023, 2, 1).standard_normal(4))
        assert not np.array_equal(a, rng_for(2024, 1, 2).standard_normal(4))

    def test_negative_indices_are_rejected(self):
        with pytest.raises(ArisError):
            rng_for(1, -1)


class TestMmWave:
    def test_single_path_has_rank_one(self):
        params = MmwParams(1, 1, 1.0)
        singular = np.linalg.svd(mmw_matrix(6, 5, params, 4), compute_uv=False)
        assert singular[1] < 1e-10 * singular[0]

    def test_broadside_single_path_is_constant(self):
        params = MmwParams(1, 1, 1.0, cluster_spread=0.0, subpath_spread=0.0)
        matrix = mmw_matrix(4, 3, params, 9)
        np.testing.assert_allclose(matrix, np.full((4, 3), matrix[0, 0]), atol=1e-12)

    def test_rank_is_bounded_by_dimensions(self):
        params = MmwParams(4, 4, 1.0)
        assert np.linalg.matrix_rank(mmw_matrix(6, 6, params, 2)) <= 6

    def test_rank_is_bounded_by_paths(self):
        params = MmwParams(1, 2, 1.0)
        assert np.linalg.matrix_rank(mmw_matrix(8, 8, params, 2), tol=1e-9) <= 2

    def test_frobenius_second_moment(self):
        rx, tx, clusters, subpaths, variance = 4, 3, 2, 2, 0.5
        params = MmwParams(clusters, subpaths, variance)
        rng = np.random.default_rng(17)
        energy = np.mean(
            [np.linalg.norm(mmw_matrix(rx, tx, params, rng)) ** 2 for _ in range(10000)]
        )
        expected = rx * tx * clusters * subpaths * variance
        assert energy == pytest.approx(expected, rel=0.03)

    def test_link_defaults(self):
        params = MmwParams.with_link_defaults("ris_tx", 3, 4, 2.0)
        assert params.aod_center == pytest.approx(math.radians(30.0))
        assert params.aoa_center == pytest.approx(math.radians(30.0) + math.pi)
        assert params.cluster_spread == constants.DEFAULT_CLUSTER_SPREAD
        with pytest.raises(ArisError):
            MmwParams.with_link_defaults("uplink", 1, 1, 1.0)

    def test_invalid_parameters(self):
        with pytest.raises(ArisError):
            MmwParams(0, 1, 1.0)
        with pytest.raises(ArisError):
            MmwParams(1, 1, 1.0, cluster_spread=-0.1)
        with pytest.raises(ArisError):
            MmwParams(1, 1, 0.0)
