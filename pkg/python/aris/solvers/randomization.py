# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Gaussian randomization that turns a relaxed matrix into a reflection vector.
"""

import numpy as np
import scipy.linalg

from .. import constants
from ..channels import complex_gaussian
from ..core import ReflectionVector
from ..errors import ArisError
from ..log import LogManager
from .sdp import as_hermitian

logger = LogManager.get_logger(__name__)


def _candidate(xi, mode):
    # homogenize on the trailing entry, then project onto the feasible set
    return ReflectionVector.project(xi[:-1] / xi[-1], mode)


def randomize_rank_one(phi_hat, objective, mode, trials=constants.RANDOMIZATION_TRIALS, seed=None):
    """
    Recovers a feasible reflection vector from a relaxed ``(K+1) x (K+1)`` matrix.

    Draws ``xi ~ CN(0, phi_hat)``, divides by its last entry and projects
    every coordinate onto the feasible set of ``mode``. The principal
    eigenvector is always evaluated first. The candidate with the largest
    ``objective`` wins, earlier candidates winning ties.

    Draws are made one after another from the same stream, so a run with
    more trials evaluates a superset of the candidates of a run with fewer.

    :param phi_hat: Hermitian positive semidefinite matrix.
    :param objective: Callable mapping a :class:`~aris.core.ReflectionVector`
        to a float to maximize.
    :param mode: :class:`~aris.core.ReflectionMode` of the output.
    :param int trials: Number of Gaussian draws, at least 1.
    :param seed: Integer seed or ``numpy.random.Generator``.
    :returns: Tuple ``(phi, value)``.
    """
    if trials < 1:
        raise ArisError("randomize_rank_one: trials must be >= 1, got %r." % trials)
    phi_hat = as_hermitian(phi_hat, "randomize_rank_one", "phi_hat")
    size = phi_hat.shape[0]

    eigenvalues, eigenvectors = scipy.linalg.eigh(phi_hat)
    eigenvalues = np.maximum(eigenvalues, 0.0)
    root = eigenvectors * np.sqrt(eigenvalues)
    # numerically zero homogenizing entries are redrawn
    floor = 1e-12 * max(1.0, float(np.sqrt(eigenvalues[-1])))

    rng = np.random.default_rng(seed)

    best_phi = None
    best_value = -np.inf

    def consider(xi):
        phi = _candidate(xi, mode)
        value = float(objective(phi))
        return phi, value

    principal = root[:, -1]
    if abs(principal[-1]) > floor:
        best_phi, best_value = consider(principal)

    skipped = 0
    for _ in range(trials):
        for _ in range(constants.RANDOMIZATION_MAX_REDRAWS + 1):
            xi = root @ complex_gaussian((size,), 1.0, rng)
            if abs(xi[-1]) > floor:
                break
        else:
            skipped += 1
            continue

        phi, value = consider(xi)
        if value > best_value:
            best_phi, best_value = phi, value

    if skipped:
        logger.debug("randomize_rank_one: skipped %d degenerate draws", skipped)
    if best_phi is None:
        raise ArisError(
            "randomize_rank_one: every draw had a vanishing homogenizing entry."
        )
    return best_phi, best_value
