# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Iteration controls shared by the solvers.
"""

import enum

from .. import constants
from ..errors import ArisError


class StepRule(enum.Enum):
    """
    How gradient based solvers pick their step size.
    """

    #: constant step derived from the largest eigenvalue of ``A^H A``
    FIXED_SAFE_STEP = "fixed"
    #: start from twice the safe step and halve until the quadratic upper bound holds
    BACKTRACKING = "backtracking"


class SolverOptions(object):
    """
    Iteration budget and stopping tolerance of one solver call.

    :ivar int max_iters: Iteration budget, at least 1.
    :ivar float tol: Relative objective change that counts as converged.
    :ivar step_rule: :class:`StepRule` of gradient based solvers.
    """

    def __init__(self, max_iters, tol, step_rule=StepRule.FIXED_SAFE_STEP):
        if max_iters < 1:
            raise ArisError("SolverOptions: max_iters must be >= 1, got %r." % max_iters)
        if not tol > 0:
            raise ArisError("SolverOptions: tol must be positive, got %r." % tol)
        self.max_iters = int(max_iters)
        self.tol = float(tol)
        self.step_rule = step_rule

    @classmethod
    def least_squares(cls, max_iters=constants.LS_MAX_ITERATIONS, tol=constants.LS_TOLERANCE):
        """Defaults of the least-squares and gradient projection solvers."""
        return cls(max_iters, tol)

    @classmethod
    def sdp(cls, max_iters=constants.SDP_MAX_ITERATIONS, tol=constants.SDP_TOLERANCE):
        """Defaults of the semidefinite program solver."""
        return cls(max_iters, tol)

    def __repr__(self):
        return "<SolverOptions max_iters=%d tol=%g step=%s>" % (
            self.max_iters,
            self.tol,
            self.step_rule.value,
        )


class DinkelbachOptions(object):
    """
    Controls of the fractional programming drivers.

    :ivar sdp: :class:`SolverOptions` of every inner semidefinite program.
    :ivar float tol: Relative change of the ratio that ends the outer loop.
    :ivar int max_iters: Outer iteration budget.
    :ivar float inner_tol: Relative change that ends a sequential convex loop.
    :ivar int inner_max_iters: Sequential convex iteration budget.
    :ivar int randomization_trials: Gaussian draws of the rank-one recovery.
    :ivar seed: Integer seed or ``numpy.random.Generator`` of the recovery.
    """

    def __init__(
        self,
        sdp=None,
        tol=constants.DINKELBACH_TOLERANCE,
        max_iters=constants.DINKELBACH_MAX_ITERATIONS,
        inner_tol=constants.SCP_TOLERANCE,
        inner_max_iters=constants.SCP_MAX_ITERATIONS,
        randomization_trials=constants.RANDOMIZATION_TRIALS,
        seed=None,
    ):
        if max_iters < 1 or inner_max_iters < 1 or randomization_trials < 1:
            raise ArisError(
                "DinkelbachOptions: iteration budgets and randomization trials must be >= 1."
            )
        if not (tol > 0 and inner_tol > 0):
            raise ArisError("DinkelbachOptions: tolerances must be positive.")
        self.sdp = sdp or SolverOptions.sdp()
        self.tol = float(tol)
        self.max_iters = int(max_iters)
        self.inner_tol = float(inner_tol)
        self.inner_max_iters = int(inner_max_iters)
        self.randomization_trials = int(randomization_trials)
        self.seed = seed
