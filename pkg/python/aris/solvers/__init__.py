# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Optimization kernels shared by the applications.
"""

from .options import DinkelbachOptions, SolverOptions, StepRule
from .least_squares import (
    LeastSquaresResult,
    ls_gradient,
    ls_objective,
    solve_disk_ls,
    solve_unit_modulus_gp,
)
from .sdp import (
    ConstraintSense,
    LinearConstraint,
    SdpProblem,
    SdpResult,
    inner,
    solve_sdp,
)
from .randomization import randomize_rank_one
