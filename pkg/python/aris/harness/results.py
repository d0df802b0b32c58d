# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Aggregated sweep results and their CSV form.
"""

import csv
import os

import numpy as np

from .. import constants
from ..log import LogManager
from ..util import filesystem

logger = LogManager.get_logger(__name__)


class SweepRow(object):
    """
    Aggregates of one sweep point and one result label.

    :ivar float sweep_value: Value of the swept setting.
    :ivar str label: Mode label, e.g. ``aris`` or ``conventional+jammer``.
    :ivar dict means: Metric name to mean over successful trials.
    :ivar dict stds: Metric name to population standard deviation.
    :ivar float mean_modulus: Mean reflection modulus over successful trials.
    :ivar int trials_ok: Successful trials.
    :ivar int trials_failed: Trials whose solver raised.
    :ivar float wall_time: Seconds spent solving this label at this point.
    :ivar channel_moduli: Mean element-wise modulus of the effective channel
        matrix, for experiments that report one, otherwise ``None``.
    """

    def __init__(
        self,
        sweep_value,
        label,
        means,
        stds,
        mean_modulus,
        trials_ok,
        trials_failed,
        wall_time,
        channel_moduli=None,
    ):
        self.sweep_value = sweep_value
        self.label = label
        self.means = means
        self.stds = stds
        self.mean_modulus = mean_modulus
        self.trials_ok = trials_ok
        self.trials_failed = trials_failed
        self.wall_time = wall_time
        self.channel_moduli = channel_moduli

    @property
    def trials(self):
        return self.trials_ok + self.trials_failed

    def __repr__(self):
        return "<SweepRow value=%g %s ok=%d failed=%d>" % (
            self.sweep_value,
            self.label,
            self.trials_ok,
            self.trials_failed,
        )


class SweepResult(object):
    """
    Every :class:`SweepRow` of one experiment, in sweep then label order.
    """

    def __init__(self, experiment, sweep_param, metrics, rows=None):
        """
        :param str experiment: Experiment name.
        :param str sweep_param: Name of the swept setting.
        :param metrics: Metric names, in CSV order.
        :param rows: Optional initial list of :class:`SweepRow`.
        """
        self.experiment = experiment
        self.sweep_param = sweep_param
        self.metrics = tuple(metrics)
        self.rows = list(rows or [])

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def add_row(self, row):
        self.rows.append(row)

    @property
    def labels(self):
        """Result labels in first appearance order."""
        labels = []
        for row in self.rows:
            if row.label not in labels:
                labels.append(row.label)
        return labels

    def row(self, sweep_value, label):
        """
        :returns: The :class:`SweepRow` of a sweep point and label.
        :raises KeyError: If there is no such row.
        """
        for row in self.rows:
            if row.sweep_value == sweep_value and row.label == label:
                return row
        raise KeyError((sweep_value, label))

    def series(self, metric, label):
        """
        Sweep values and metric means of one label.

        :param str metric: A metric name or ``mean_modulus``.
        :returns: Tuple ``(xs, ys)`` of lists.
        """
        xs, ys = [], []
        for row in self.rows:
            if row.label != label:
                continue
            xs.append(row.sweep_value)
            ys.append(row.mean_modulus if metric == "mean_modulus" else row.means[metric])
        return xs, ys

    @property
    def has_channel_moduli(self):
        """True when any row carries an effective channel matrix."""
        return any(row.channel_moduli is not None for row in self.rows)


def _number(value):
    return "%.17g" % value


def csv_rows(result):
    """
    Flattens a result into CSV records, one per sweep point, label and metric.
    """
    for row in result.rows:
        for metric in result.metrics:
            yield (
                result.experiment,
                result.sweep_param,
                _number(row.sweep_value),
                row.label,
                metric,
                _number(row.means[metric]),
                _number(row.stds[metric]),
                _number(row.mean_modulus),
                str(row.trials_ok),
                str(row.trials_failed),
            )


def write_csv(result, path):
    """
    Writes a :class:`SweepResult` as UTF-8 CSV with LF line endings.

    Numbers keep 17 significant digits so they parse back to the same doubles.

    :param result: :class:`SweepResult`
    :param str path: Destination file. Its folder is created when missing.
    """
    filesystem.ensure_folder_exists(os.path.dirname(os.path.abspath(path)))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(constants.CSV_HEADER)
        writer.writerows(csv_rows(result))
    logger.debug("Wrote %d rows of %s to %s", len(result), result.experiment, path)


def channel_csv_rows(result):
    """
    Flattens the effective channel matrices, one record per sweep point, label and entry.
    """
    for row in result.rows:
        if row.channel_moduli is None:
            continue
        for (i, j), value in np.ndenumerate(row.channel_moduli):
            yield (
                result.experiment,
                result.sweep_param,
                _number(row.sweep_value),
                row.label,
                str(i),
                str(j),
                _number(value),
            )


def write_channel_csv(result, path):
    """
    Writes the mean effective channel moduli of a result in the layout of :func:`write_csv`.

    :param result: :class:`SweepResult` with :attr:`~SweepResult.has_channel_moduli`.
    :param str path: Destination file. Its folder is created when missing.
    """
    filesystem.ensure_folder_exists(os.path.dirname(os.path.abspath(path)))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(constants.CHANNEL_CSV_HEADER)
        writer.writerows(channel_csv_rows(result))
    logger.debug("Wrote the channel moduli of %s to %s", result.experiment, path)
