# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Constants shared by the reflection design library and the simulation harness.
"""

import math

# the name of the root logger that all package logging is parented under
ROOT_LOGGER_NAME = "aris"

# special logger used by the LogManager.log_timing decorator
PROFILING_LOG_CHANNEL = "%s.stopwatch" % ROOT_LOGGER_NAME

# environment variable that switches on global debug logging
DEBUG_LOGGING_ENV_VAR = "ARIS_DEBUG"

# bound checks on reflection coefficients
MODULUS_TOLERANCE = 1e-9

# solver defaults
LS_TOLERANCE = 1e-8
LS_MAX_ITERATIONS = 50000
SDP_TOLERANCE = 1e-6
SDP_MAX_ITERATIONS = 5000
SDP_FEASIBILITY_TOLERANCE = 1e-6
DINKELBACH_TOLERANCE = 1e-5
DINKELBACH_MAX_ITERATIONS = 50
SCP_TOLERANCE = 1e-6
SCP_MAX_ITERATIONS = 30
RANDOMIZATION_TRIALS = 200

# fraction of the Lipschitz step used by the phase-only gradient projection
UNIT_MODULUS_STEP_FRACTION = 0.9

# redraws allowed when a Gaussian candidate has a zero homogenizing entry
RANDOMIZATION_MAX_REDRAWS = 10

# clustered mmWave model
DEFAULT_CLUSTER_SPREAD = math.radians(60.0)
DEFAULT_SUBPATH_SPREAD = math.radians(2.0)

# angle of departure centers of the default geometry, keyed by link name.
# each angle of arrival center sits 180 degrees away from its departure center.
DEFAULT_AOD_CENTERS = {
    "rx_tx": math.radians(15.0),
    "ris_tx": math.radians(30.0),
    "rx_ris": math.radians(-15.0),
}

# harness
DEFAULT_TRIALS = 50
DEFAULT_SEED = 2023
DEFAULT_OUTPUT_FOLDER = "results"
FAILURE_WARNING_FRACTION = 0.1
RESIDUAL_DB_FLOOR = 1e-15
SINR_DB_FLOOR = 1e-30
CSV_HEADER = (
    "experiment",
    "sweep_param",
    "sweep_value",
    "mode",
    "metric_name",
    "metric_mean",
    "metric_std",
    "mean_modulus",
    "trials_ok",
    "trials_failed",
)
CHANNEL_CSV_HEADER = (
    "experiment",
    "sweep_param",
    "sweep_value",
    "mode",
    "row",
    "column",
    "mean_modulus",
)
