# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
SVG line charts of sweep results.

matplotlib is an optional dependency. When it can't be imported plots are
skipped and only the CSV is written.
"""

import os

from ..log import LogManager

logger = LogManager.get_logger(__name__)

# fixed salt so element ids in the SVG output do not change between runs
_SVG_HASH_SALT = "aris-opt"


def _pyplot():
    try:
        import matplotlib
    except ImportError:
        return None, None
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return matplotlib, plt


def plots_available():
    """True when matplotlib can be imported."""
    return _pyplot()[0] is not None


def write_plots(result, folder, stem):
    """
    Writes one chart per metric plus one of the mean modulus.

    Each chart has the sweep value on the x axis and one series per label.
    Files are named ``<stem>_<metric>.svg``. Results carrying effective
    channel matrices also get a ``<stem>_channel.svg`` heatmap.

    :param result: :class:`~aris.harness.results.SweepResult`
    :param str folder: Existing output folder.
    :param str stem: File name prefix.
    :returns: List of written paths, empty when matplotlib is missing.
    """
    matplotlib, plt = _pyplot()
    if matplotlib is None:
        logger.debug("matplotlib is not available, skipping plots of %s", result.experiment)
        return []

    paths = []
    with matplotlib.rc_context({"svg.hashsalt": _SVG_HASH_SALT}):
        for metric in result.metrics + ("mean_modulus",):
            fig, ax = plt.subplots(figsize=(6.4, 4.0), constrained_layout=True)
            for label in result.labels:
                xs, ys = result.series(metric, label)
                ax.plot(xs, ys, marker="o", label=label)
            ax.set_title(result.experiment)
            ax.set_xlabel(result.sweep_param)
            ax.set_ylabel(metric)
            ax.grid(True, alpha=0.3)
            ax.legend(loc="best", fontsize=8)

            path = os.path.join(folder, "%s_%s.svg" % (stem, metric))
            fig.savefig(path, format="svg", metadata={"Date": None})
            plt.close(fig)
            paths.append(path)

        if result.has_channel_moduli:
            paths.append(_write_channel_heatmap(plt, result, folder, stem))

    logger.debug("Wrote %d plots of %s", len(paths), result.experiment)
    return paths


def _write_channel_heatmap(plt, result, folder, stem):
    """
    Mean effective channel moduli at the last sweep point, one panel per label.
    """
    rows = [row for row in result.rows if row.channel_moduli is not None]
    last = rows[-1].sweep_value
    rows = [row for row in rows if row.sweep_value == last]
    top = max(float(row.channel_moduli.max()) for row in rows) or 1.0

    fig, axes = plt.subplots(
        1, len(rows), figsize=(3.6 * len(rows), 3.4), constrained_layout=True, squeeze=False
    )
    for ax, row in zip(axes[0], rows):
        image = ax.imshow(row.channel_moduli, vmin=0.0, vmax=top, cmap="viridis")
        ax.set_title("%s, %s = %g" % (row.label, result.sweep_param, last), fontsize=9)
        ax.set_xlabel("transmitter")
        ax.set_ylabel("receiver")
    fig.colorbar(image, ax=axes[0].tolist(), shrink=0.8)

    path = os.path.join(folder, "%s_channel.svg" % stem)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
