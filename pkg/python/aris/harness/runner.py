# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Monte-Carlo sweeps.

Every trial draws its channels from ``rng_for(seed, sweep_index, trial_index)``
and solves every result label on that one draw. Trials are independent, so
they can run on a process pool; results are reduced in submission order,
which keeps the output identical for any number of workers.
"""

import collections
import concurrent.futures
import math
import time

import numpy as np

from .. import constants
from ..channels import (
    MmwParams,
    complex_gaussian,
    mmw_matrix,
    rayleigh_matrix,
    rayleigh_vector,
    rng_for,
)
from ..core import ReflectionMode
from ..d2d import D2DInstance, effective_channel, maxmin_design, offdiagonal_ratio
from ..errors import ArisError
from ..log import LogManager
from ..pls import PlsInstance, maximize_secrecy, sinr_eve
from ..radarcomm import RadarCommInstance, design_aris, design_conventional, mean_modulus
from .results import SweepResult, SweepRow

logger = LogManager.get_logger(__name__)

# what a trial reports for one label, None when its solver failed
TrialOutcome = collections.namedtuple(
    "TrialOutcome", ["metrics", "modulus", "seconds", "channel"]
)

# exceptions that count as a failed trial instead of aborting the run
TRIAL_FAILURES = (ArisError, np.linalg.LinAlgError)


def _db(value, floor):
    return 10.0 * math.log10(max(value, floor))


def radar_comm_instance(cfg, rng):
    """
    Draws the channels of one radar and communication trial.

    :param cfg: :class:`~aris.harness.config.ExperimentConfig` of one sweep point.
    :param rng: ``numpy.random.Generator`` of the trial.
    """

    def draw(rows, cols, name, link):
        variance = cfg.variance(name)
        if cfg.channel_model == "mmwave":
            params = MmwParams.with_link_defaults(link, cfg.clusters, cfg.subpaths, variance)
            return mmw_matrix(rows, cols, params, rng)
        return rayleigh_matrix(rows, cols, variance, rng)

    direct = draw(cfg.num_rx, cfg.num_tx, "sigma_d", "rx_tx")
    incident = draw(cfg.num_elements, cfg.num_tx, "sigma_g", "ris_tx")
    reflected = draw(cfg.num_rx, cfg.num_elements, "sigma_h", "rx_ris")
    return RadarCommInstance(direct, incident, reflected)


def d2d_instance(cfg, rng):
    """
    Draws the channels of one device-to-device trial, every link at power ``cfg.power``.
    """
    links, elements = cfg.num_links, cfg.num_elements
    return D2DInstance(
        rayleigh_matrix(links, links, cfg.variance("sigma_d"), rng),
        rayleigh_matrix(elements, links, cfg.variance("sigma_g"), rng),
        rayleigh_matrix(links, elements, cfg.variance("sigma_h"), rng),
        np.full(links, cfg.power),
        cfg.noise_var,
    )


def pls_instance(cfg, rng):
    """
    Draws the channels of one secrecy trial with the jammer enabled.

    Callers derive the jammer-free variant through
    :meth:`~aris.pls.PlsInstance.without_jammer` so both see the same draw.
    """

    def scalar(name):
        return complex(complex_gaussian((), cfg.variance(name), rng))

    d_b = scalar("sigma_db")
    d_e = scalar("sigma_de")
    d_j = scalar("sigma_dj")
    d_jb = scalar("sigma_jb")
    elements = cfg.num_elements
    g = rayleigh_vector(elements, cfg.variance("sigma_g"), rng)
    g_j = rayleigh_vector(elements, cfg.variance("sigma_gj"), rng)
    h_b = rayleigh_vector(elements, cfg.variance("sigma_hb"), rng)
    h_e = rayleigh_vector(elements, cfg.variance("sigma_he"), rng)
    return PlsInstance(
        d_b,
        d_e,
        g,
        h_b,
        h_e,
        noise_b_raw=cfg.noise_b,
        noise_e=cfg.noise_e,
        d_j=d_j,
        g_j=g_j,
        d_jb=d_jb,
        jammer_enabled=True,
    )


# Each solver takes (cfg, inst, mode, jammer, seed, reference) and returns
# (metrics, design, channel moduli or None). ``reference`` is the conventional
# design of the same draw and jammer state, or None when it wasn't solved.


def _solve_radar_comm(cfg, inst, mode, jammer, seed, reference=None):
    if mode is ReflectionMode.ABSORPTIVE:
        design = design_aris(inst, cfg.ls_options(), reference)
    else:
        design = design_conventional(inst, cfg.ls_options())
    return (design.residual, design.residual_db), design, None


def _solve_d2d(cfg, inst, mode, jammer, seed, reference=None):
    design = maxmin_design(inst, mode, cfg.dinkelbach_options(seed), reference)
    metrics = (
        _db(design.worst_sinr, constants.SINR_DB_FLOOR),
        offdiagonal_ratio(inst, design.phi),
    )
    return metrics, design, np.abs(effective_channel(inst, design.phi))


def _solve_pls(cfg, inst, mode, jammer, seed, reference=None):
    if not jammer:
        inst = inst.without_jammer()
    design = maximize_secrecy(inst, mode, cfg.dinkelbach_options(seed), reference)
    metrics = (design.rate, _db(sinr_eve(inst, design.phi), constants.SINR_DB_FLOOR))
    return metrics, design, None


def _padded(values, sweep):
    # one value per swept iteration, the last value repeats past the end
    return tuple(values[min(int(i), len(values) - 1)] for i in sweep)


def _solve_pls_trajectory(cfg, inst, mode, jammer, seed, reference=None):
    if not jammer:
        inst = inst.without_jammer()
    design = maximize_secrecy(inst, mode, cfg.dinkelbach_options(seed), reference)
    costs = [value / inst.noise_b for value in design.lambda_history]
    # the sequential convex loop of the first outer iteration
    inner = [value / inst.noise_b for value in design.inner_histories[0]]
    return (_padded(costs, cfg.sweep), _padded(inner, cfg.sweep)), design, None


_FAMILIES = {
    "radarcomm": (radar_comm_instance, _solve_radar_comm),
    "d2d": (d2d_instance, _solve_d2d),
    "pls": (pls_instance, _solve_pls),
    "pls_convergence": (pls_instance, _solve_pls_trajectory),
}


def run_trial(cfg, sweep_index, trial_index):
    """
    Runs every label of one trial.

    :param cfg: :class:`~aris.harness.config.ExperimentConfig` of one sweep point.
    :param int sweep_index: Index of the sweep point, 0 for trajectory experiments.
    :param int trial_index: Index of the trial.
    :returns: List with one :class:`TrialOutcome` or ``None`` per label.
    """
    make_instance, solve = _FAMILIES[cfg.experiment.family]
    inst = make_instance(cfg, rng_for(cfg.seed, sweep_index, trial_index))
    labels = cfg.labels()

    outcomes = [None] * len(labels)
    references = {}
    # conventional labels first, their designs seed the absorptive ones
    order = sorted(
        range(len(labels)), key=lambda position: labels[position][1] is ReflectionMode.ABSORPTIVE
    )
    for position in order:
        label, mode, jammer = labels[position]
        seed = rng_for(cfg.seed, sweep_index, trial_index, position + 1)
        reference = references.get(jammer) if mode is ReflectionMode.ABSORPTIVE else None
        start = time.perf_counter()
        try:
            metrics, design, channel = solve(cfg, inst, mode, jammer, seed, reference)
        except TRIAL_FAILURES as e:
            logger.debug(
                "Trial %d of %s at sweep index %d failed for %s: %s",
                trial_index,
                cfg.experiment.value,
                sweep_index,
                label,
                e,
            )
            continue
        if mode is ReflectionMode.CONVENTIONAL:
            references[jammer] = design
        outcomes[position] = TrialOutcome(
            metrics, mean_modulus(design.phi), time.perf_counter() - start, channel
        )
    return outcomes


def _map_trials(jobs, workers):
    if workers <= 1:
        return [run_trial(*job) for job in jobs]
    with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(run_trial, *job) for job in jobs]
        return [future.result() for future in futures]


def _aggregate(cfg, sweep_value, label, outcomes, metric_offset=None):
    """
    Reduces the outcomes of one label at one sweep point to a :class:`SweepRow`.

    :param metric_offset: For trajectory experiments, the index of the swept
        iteration inside each metric's series.
    """
    ok = [outcome for outcome in outcomes if outcome is not None]
    failed = len(outcomes) - len(ok)

    means, stds = {}, {}
    for index, metric in enumerate(cfg.metrics):
        if metric_offset is None:
            values = [outcome.metrics[index] for outcome in ok]
        else:
            values = [outcome.metrics[index][metric_offset] for outcome in ok]
        values = np.array(values, dtype=float)
        means[metric] = float(np.mean(values)) if ok else math.nan
        stds[metric] = float(np.std(values)) if ok else math.nan
    modulus = float(np.mean([outcome.modulus for outcome in ok])) if ok else math.nan
    wall_time = float(sum(outcome.seconds for outcome in ok))
    channels = [outcome.channel for outcome in ok if outcome.channel is not None]
    channel_moduli = np.mean(channels, axis=0) if channels else None

    if failed > constants.FAILURE_WARNING_FRACTION * len(outcomes):
        logger.warning(
            "%s: %d of %d trials failed at %s = %g for %s.",
            cfg.experiment.value,
            failed,
            len(outcomes),
            cfg.sweep_param,
            sweep_value,
            label,
        )
    return SweepRow(
        sweep_value,
        label,
        means,
        stds,
        modulus,
        len(ok),
        failed,
        wall_time,
        channel_moduli=channel_moduli,
    )


@LogManager.log_timing
def run_experiment(cfg):
    """
    Runs every sweep point and trial of an experiment.

    :param cfg: :class:`~aris.harness.config.ExperimentConfig`
    :returns: :class:`~aris.harness.results.SweepResult` with one row per
        sweep point and label.
    """
    result = SweepResult(cfg.experiment.value, cfg.sweep_param, cfg.metrics)
    labels = [label for label, _, _ in cfg.labels()]
    logger.info(
        "Running %s: %d sweep points, %d trials, labels %s",
        cfg.experiment.value,
        len(cfg.sweep),
        cfg.trials,
        ", ".join(labels),
    )

    if cfg.is_trajectory:
        trials = _map_trials([(cfg, 0, t) for t in range(cfg.trials)], cfg.workers)
        for offset, sweep_value in enumerate(cfg.sweep):
            for position, label in enumerate(labels):
                outcomes = [trial[position] for trial in trials]
                result.add_row(_aggregate(cfg, sweep_value, label, outcomes, offset))
        return result

    jobs = [
        (cfg.at(sweep_value), sweep_index, trial_index)
        for sweep_index, sweep_value in enumerate(cfg.sweep)
        for trial_index in range(cfg.trials)
    ]
    trials = _map_trials(jobs, cfg.workers)
    for sweep_index, sweep_value in enumerate(cfg.sweep):
        block = trials[sweep_index * cfg.trials : (sweep_index + 1) * cfg.trials]
        point = cfg.at(sweep_value)
        for position, label in enumerate(labels):
            outcomes = [trial[position] for trial in block]
            result.add_row(_aggregate(point, sweep_value, label, outcomes))
        logger.debug("%s: finished %s = %g", cfg.experiment.value, cfg.sweep_param, sweep_value)
    return result
