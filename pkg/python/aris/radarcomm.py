# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Radar and communication coexistence.

A base station with ``M`` antennas interferes with an ``N`` antenna radar
through the direct channel ``D`` and through the surface, ``G`` into the
surface and ``H`` out of it. The surface is designed to minimize the
Frobenius norm of the total interference channel ``D + H diag(phi) G``.

The problem is vectorized into ``||d + A phi||`` where column ``k`` of ``A``
is ``vec(H[:, k] G[k, :])`` and ``d = vec(D)``.
"""

import numpy as np

from . import constants
from .core import ReflectionMode, as_complex_matrix, make_diag_channel, vectorize
from .errors import ArisError, DimensionError
from .log import LogManager
from .solvers import solve_disk_ls, solve_unit_modulus_gp

logger = LogManager.get_logger(__name__)


class RadarCommInstance(object):
    """
    Channels of one coexistence scenario.

    :ivar direct: ``N x M`` base station to radar channel ``D``.
    :ivar incident: ``K x M`` base station to surface channel ``G``.
    :ivar reflected: ``N x K`` surface to radar channel ``H``.
    """

    def __init__(self, direct, incident, reflected):
        self.direct = as_complex_matrix(direct, "RadarCommInstance", "D")
        self.incident = as_complex_matrix(incident, "RadarCommInstance", "G")
        self.reflected = as_complex_matrix(reflected, "RadarCommInstance", "H")

        rx, tx = self.direct.shape
        if self.incident.shape[1] != tx:
            raise DimensionError("RadarCommInstance", "G", "(K, %d)" % tx, self.incident.shape)
        if self.reflected.shape != (rx, self.incident.shape[0]):
            raise DimensionError(
                "RadarCommInstance",
                "H",
                (rx, self.incident.shape[0]),
                self.reflected.shape,
            )

    @property
    def num_elements(self):
        """Number of surface elements ``K``."""
        return self.incident.shape[0]

    def interference_channel(self, phi):
        """
        Total interference channel ``D + H diag(phi) G``.
        """
        return self.direct + make_diag_channel(phi, self.reflected, self.incident)

    def residual(self, phi):
        """
        Frobenius norm of :meth:`interference_channel`.
        """
        return float(np.linalg.norm(self.interference_channel(phi)))


class RadarCommDesign(object):
    """
    Outcome of :func:`design_aris` or :func:`design_conventional`.
    """

    def __init__(self, phi, residual, iterations, converged):
        self.phi = phi
        self.residual = residual
        self.iterations = iterations
        self.converged = converged

    @property
    def residual_db(self):
        """Residual as ``20 log10``, floored so an exact zero stays finite."""
        return 20.0 * np.log10(max(self.residual, constants.RESIDUAL_DB_FLOOR))

    def __iter__(self):
        # allows ``phi, residual = design_aris(inst)``
        return iter((self.phi, self.residual))

    def __repr__(self):
        return "<RadarCommDesign %s residual=%.6g>" % (self.phi.mode.value, self.residual)


def build_ls_system(inst):
    """
    Vectorized least-squares form of the interference channel.

    :param inst: :class:`RadarCommInstance`
    :returns: Tuple ``(A, d)`` with ``A`` of size ``MN x K``.
    """
    # column k is vec(H[:, k] G[k, :]), column-stacked
    A = np.einsum("nk,km->mnk", inst.reflected, inst.incident)
    rx, tx = inst.direct.shape
    A = A.reshape(rx * tx, inst.num_elements)
    return A, vectorize(inst.direct)


def _design(inst, opts, solve):
    A, d = build_ls_system(inst)
    result = solve(A, d, opts)
    residual = inst.residual(result.phi)
    if abs(residual - result.residual) > 1e-9 * max(1.0, residual):
        raise ArisError(
            "Residual mismatch between the vectorized system (%.12g) and the "
            "channel matrices (%.12g)." % (result.residual, residual)
        )
    return RadarCommDesign(result.phi, residual, result.iterations, result.converged)


@LogManager.log_timing
def design_aris(inst, opts=None, reference=None):
    """
    Minimizes the interference channel norm with an absorptive surface.

    Every phase-only surface is also absorptive, so the result is compared
    with a conventional design of the same instance and the better of the
    two is returned.

    :param inst: :class:`RadarCommInstance`
    :param opts: :class:`~aris.solvers.SolverOptions`
    :param reference: :class:`RadarCommDesign` from :func:`design_conventional`
        on ``inst``. Computed with ``opts`` when omitted.
    :returns: :class:`RadarCommDesign`
    :raises ConvergenceError: If the least-squares solver does not converge.
    """
    design = _design(inst, opts, solve_disk_ls)
    if reference is None:
        reference = design_conventional(inst, opts)
    if reference.residual < design.residual:
        logger.debug(
            "design_aris: phase-only residual %.12g beats %.12g",
            reference.residual,
            design.residual,
        )
        return RadarCommDesign(
            reference.phi.as_mode(ReflectionMode.ABSORPTIVE),
            reference.residual,
            design.iterations,
            design.converged,
        )
    return design


@LogManager.log_timing
def design_conventional(inst, opts=None):
    """
    Minimizes the interference channel norm with a phase-only surface.

    :param inst: :class:`RadarCommInstance`
    :param opts: :class:`~aris.solvers.SolverOptions`
    :returns: :class:`RadarCommDesign`
    """
    return _design(inst, opts, solve_unit_modulus_gp)


def mean_modulus(phi):
    """
    Average coefficient modulus, 0 for a fully absorbing surface and 1 for a lossless one.
    """
    return float(np.mean(phi.moduli))
