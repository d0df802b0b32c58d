# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Monte-Carlo experiment harness: configuration, sweeps, CSV and plots.
"""

from .config import (
    APPLICATION_DEFAULTS,
    Experiment,
    ExperimentConfig,
    load_config,
    parse_overrides,
    setting_names,
)
from .results import SweepResult, SweepRow, write_channel_csv, write_csv
from .runner import run_experiment, run_trial
from .plotting import plots_available, write_plots
