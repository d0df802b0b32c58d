# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

import logging

import numpy as np
import pytest

from aris import LogManager
from aris.channels import rayleigh_matrix, rayleigh_vector
from aris.d2d import D2DInstance
from aris.pls import PlsInstance
from aris.radarcomm import RadarCommInstance


class ListHandler(logging.Handler):
    """
    Collects formatted records so tests can inspect what was logged.
    """

    def __init__(self):
        super(ListHandler, self).__init__()
        self.messages = []

    def emit(self, record):
        self.messages.append((record.levelno, record.name, record.getMessage()))


@pytest.fixture
def rng():
    return np.random.default_rng(20230517)


@pytest.fixture
def log_messages():
    """
    Attaches a collecting handler to the package root logger for one test.
    """
    manager = LogManager()
    handler = manager.initialize_custom_handler(ListHandler())
    previous = manager.global_debug
    manager.global_debug = True
    try:
        yield handler.messages
    finally:
        manager.global_debug = previous
        manager.root_logger.removeHandler(handler)


def random_psd(rng, size, rank=None):
    """Random Hermitian positive semidefinite matrix."""
    rank = size if rank is None else rank
    root = rng.standard_normal((size, rank)) + 1j * rng.standard_normal((size, rank))
    return root @ root.conj().T / rank


def random_hermitian(rng, size):
    matrix = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    return 0.5 * (matrix + matrix.conj().T)


def make_radar_comm(rng, num_tx=2, num_rx=2, num_elements=2, direct_variance=1.0):
    return RadarCommInstance(
        rayleigh_matrix(num_rx, num_tx, direct_variance, rng),
        rayleigh_matrix(num_elements, num_tx, 1.0, rng),
        rayleigh_matrix(num_rx, num_elements, 1.0, rng),
    )


def make_d2d(rng, num_links=2, num_elements=2, power=1.0, noise_var=1.0):
    return D2DInstance(
        rayleigh_matrix(num_links, num_links, 1.0, rng),
        rayleigh_matrix(num_elements, num_links, 1.0, rng),
        rayleigh_matrix(num_links, num_elements, 1.0, rng),
        np.full(num_links, power),
        noise_var,
    )


def make_pls(rng, num_elements=2, jammer=True):
    def scalar():
        return complex(rayleigh_vector(1, 1.0, rng)[0])

    return PlsInstance(
        scalar(),
        scalar(),
        rayleigh_vector(num_elements, 1.0, rng),
        rayleigh_vector(num_elements, 1.0, rng),
        rayleigh_vector(num_elements, 1.0, rng),
        noise_b_raw=1.0,
        noise_e=1.0,
        d_j=scalar(),
        g_j=rayleigh_vector(num_elements, 1.0, rng),
        d_jb=0.3 * scalar(),
        jammer_enabled=jammer,
    )


def polar_grid(modulus_step=0.05, phase_step_deg=3.0, include_inner=True):
    """
    Complex grid covering the unit disk, or only the unit circle when
    ``include_inner`` is False.
    """
    phases = np.deg2rad(np.arange(0.0, 360.0, phase_step_deg))
    if include_inner:
        moduli = np.arange(0.0, 1.0 + 1e-12, modulus_step)
    else:
        moduli = np.array([1.0])
    return (moduli[:, np.newaxis] * np.exp(1j * phases)[np.newaxis, :]).reshape(-1)
