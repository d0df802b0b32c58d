# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

# reflection design library version
__version__ = "1.0.0"

import sys

if sys.version_info < (3, 10):
    raise RuntimeError("This module requires Python version 3.10 or higher.")

# first import the log manager since a lot of modules require this.
from .log import LogManager

from .errors import (
    ArisError,
    ConfigurationError,
    ConvergenceError,
    DimensionError,
    InfeasibleProblemError,
    LinkIndexError,
    ReflectionBoundError,
)
from .core import ReflectionMode, ReflectionVector, make_diag_channel, steering_vector
from .channels import MmwParams, mmw_matrix, rayleigh_matrix, rayleigh_vector, rng_for
from .radarcomm import RadarCommInstance, design_aris, design_conventional
from .d2d import D2DInstance, build_F, maxmin_design, sinr, worst_sinr
from .pls import PlsInstance, PlsQuadratics, lambda_update, maximize_secrecy, secrecy_rate
