# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Stochastic channel synthesis.

Two models are provided: i.i.d. Rayleigh fading and a clustered mmWave model
whose paths arrive in ``T`` angular clusters of ``J`` closely spaced subpaths.

Every generator takes either an integer seed or a ``numpy.random.Generator``.
Passing a generator lets a caller draw several channels from one per-trial
stream, see :func:`rng_for`.
"""

import math

import numpy as np

from . import constants
from .core import steering_vector
from .errors import ArisError, DimensionError


def rng_for(base_seed, *indices):
    """
    Derives an independent generator from a base seed and a tuple of indices.

    The stream is identified by the entropy tuple ``(base_seed, *indices)``
    of a ``numpy.random.SeedSequence``, so ``rng_for(seed, s, t)`` is the
    same on every run no matter in which order trials are executed.

    :param int base_seed: Non-negative base seed.
    :param indices: Non-negative integers, typically sweep and trial index.
    :returns: ``numpy.random.Generator`` (PCG64).
    """
    entropy = [int(base_seed)] + [int(i) for i in indices]
    if any(value < 0 for value in entropy):
        raise ArisError("Seeds and stream indices must be non-negative, got %s." % entropy)
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _as_generator(seed):
    # default_rng passes Generators through untouched
    return np.random.default_rng(seed)


def complex_gaussian(shape, variance, seed):
    """
    Circularly symmetric complex Gaussian samples ``CN(0, variance)``.

    :param shape: Output shape.
    :param float variance: Per-entry variance, real and imaginary parts each
        get half of it.
    :param seed: Integer seed or ``numpy.random.Generator``.
    """
    rng = _as_generator(seed)
    # draw real/imag pairs contiguously so prefixes of a stream stay stable
    pairs = rng.standard_normal(tuple(shape) + (2,))
    return math.sqrt(variance / 2.0) * (pairs[..., 0] + 1j * pairs[..., 1])


def rayleigh_matrix(rows, cols, variance, seed):
    """
    Matrix of i.i.d. Rayleigh fading coefficients.

    :param int rows: Number of rows, positive.
    :param int cols: Number of columns, positive.
    :param float variance: Linear per-entry power, positive.
    :param seed: Integer seed or ``numpy.random.Generator``.
    :returns: ``rows x cols`` complex matrix.
    """
    if rows < 1 or cols < 1:
        raise DimensionError("rayleigh_matrix", "shape", "positive dimensions", (rows, cols))
    if not variance > 0:
        raise ArisError("rayleigh_matrix: variance must be positive, got %r." % variance)
    return complex_gaussian((rows, cols), variance, seed)


def rayleigh_vector(length, variance, seed):
    """
    Vector of i.i.d. Rayleigh fading coefficients. See :func:`rayleigh_matrix`.
    """
    return rayleigh_matrix(length, 1, variance, seed)[:, 0]


class MmwParams(object):
    """
    Parameters of the clustered mmWave model of one link.

    :ivar int clusters: Number of angular clusters ``T``.
    :ivar int subpaths: Number of subpaths per cluster ``J``.
    :ivar float variance: Linear power of every path gain.
    :ivar float aoa_center: Center of the arrival angles, radians.
    :ivar float aod_center: Center of the departure angles, radians.
    :ivar float cluster_spread: Half width of the cluster center distribution, radians.
    :ivar float subpath_spread: Half width of the subpath distribution around
        its cluster center, radians.
    """

    def __init__(
        self,
        clusters,
        subpaths,
        variance,
        aoa_center=0.0,
        aod_center=0.0,
        cluster_spread=constants.DEFAULT_CLUSTER_SPREAD,
        subpath_spread=constants.DEFAULT_SUBPATH_SPREAD,
    ):
        if clusters < 1 or subpaths < 1:
            raise ArisError(
                "MmwParams: clusters and subpaths must be >= 1, got %d and %d."
                % (clusters, subpaths)
            )
        if cluster_spread < 0 or subpath_spread < 0:
            raise ArisError("MmwParams: angular spreads must be non-negative.")
        if not variance > 0:
            raise ArisError("MmwParams: variance must be positive, got %r." % variance)
        self.clusters = int(clusters)
        self.subpaths = int(subpaths)
        self.variance = float(variance)
        self.aoa_center = float(aoa_center)
        self.aod_center = float(aod_center)
        self.cluster_spread = float(cluster_spread)
        self.subpath_spread = float(subpath_spread)

    @classmethod
    def with_link_defaults(cls, link, clusters, subpaths, variance):
        """
        Parameters for one link of the default geometry.

        :param str link: One of ``rx_tx``, ``ris_tx`` or ``rx_ris``.
        """
        try:
            aod = constants.DEFAULT_AOD_CENTERS[link]
        except KeyError:
            raise ArisError(
                "Unknown link '%s'. Expected one of %s."
                % (link, ", ".join(sorted(constants.DEFAULT_AOD_CENTERS)))
            )
        return cls(clusters, subpaths, variance, aoa_center=aod + math.pi, aod_center=aod)

    def __repr__(self):
        return "<MmwParams T=%d J=%d variance=%g aoa=%.3f aod=%.3f>" % (
            self.clusters,
            self.subpaths,
            self.variance,
            self.aoa_center,
            self.aod_center,
        )


def _cluster_angles(rng, center, params):
    # one row per cluster, one column per subpath
    centers = rng.uniform(
        center - params.cluster_spread, center + params.cluster_spread, size=params.clusters
    )
    offsets = rng.uniform(
        -params.subpath_spread, params.subpath_spread, size=(params.clusters, params.subpaths)
    )
    return (centers[:, np.newaxis] + offsets).reshape(-1)


def mmw_matrix(rx_elems, tx_elems, params, seed):
    """
    Clustered mmWave channel matrix.

    The matrix is ``sqrt(rx tx)`` times the sum over ``T J`` paths of
    ``alpha a_rx(aoa) a_tx(aod)^T`` with path gains ``alpha ~ CN(0, variance)``.

    :param int rx_elems: Receive array size.
    :param int tx_elems: Transmit array size.
    :param params: :class:`MmwParams`
    :param seed: Integer seed or ``numpy.random.Generator``.
    :returns: ``rx_elems x tx_elems`` complex matrix.
    """
    if rx_elems < 1 or tx_elems < 1:
        raise DimensionError("mmw_matrix", "shape", "positive dimensions", (rx_elems, tx_elems))
    rng = _as_generator(seed)

    aoa = _cluster_angles(rng, params.aoa_center, params)
    aod = _cluster_angles(rng, params.aod_center, params)
    gains = complex_gaussian((aoa.size,), params.variance, rng)

    rx_steering = np.stack([steering_vector(rx_elems, angle) for angle in aoa], axis=1)
    tx_steering = np.stack([steering_vector(tx_elems, angle) for angle in aod], axis=1)

    return math.sqrt(rx_elems * tx_elems) * (rx_steering * gains[np.newaxis, :]) @ tx_steering.T
