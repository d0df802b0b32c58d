# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Command line front end of the experiment harness.

Usage::

    aris-opt radar-comm --config configs/radar_comm_sigma_d.ini --trials 10
    aris-opt d2d --set num_elements=32 --mode aris
    aris-opt all --seed 7 --out-dir results

Exit codes are 0 on success, 1 when an experiment fails and 2 on usage or
configuration errors.
"""

import argparse
import os
import sys

from . import __version__, constants
from .errors import ArisError, ConfigurationError
from .harness import (
    APPLICATION_DEFAULTS,
    Experiment,
    load_config,
    run_experiment,
    write_channel_csv,
    write_csv,
    write_plots,
)
from .log import LogManager
from .util import filesystem

logger = LogManager.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

MODE_CHOICES = ("aris", "conventional", "both")


def build_parser():
    """
    :returns: The ``argparse.ArgumentParser`` of ``aris-opt``.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="ini file with experiment settings")
    common.add_argument("--trials", type=int, metavar="N", help="Monte-Carlo trials per point")
    common.add_argument("--seed", type=int, metavar="N", help="base seed of the channel draws")
    common.add_argument(
        "--out-dir",
        default=constants.DEFAULT_OUTPUT_FOLDER,
        metavar="DIR",
        help="output folder (default: %(default)s)",
    )
    common.add_argument("--mode", choices=MODE_CHOICES, help="surface model(s) to solve")
    common.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one setting, may be repeated",
    )
    common.add_argument("--workers", type=int, metavar="N", help="worker processes")
    common.add_argument("--no-plots", action="store_true", help="skip the SVG plots")
    common.add_argument("--debug", action="store_true", help="enable debug logging")
    common.add_argument("--log-file", metavar="PATH", help="also write logs to this file")

    parser = argparse.ArgumentParser(
        prog="aris-opt",
        description="Reflection coefficient design experiments for absorptive surfaces.",
    )
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for name, help_text in (
        ("radar-comm", "radar and communication coexistence"),
        ("d2d", "device-to-device max-min SINR"),
        ("pls", "physical-layer security with a friendly jammer"),
        ("all", "every shipped experiment in turn"),
    ):
        subparsers.add_parser(name, parents=[common], help=help_text)
    return parser


def _modes(args):
    if args.mode is None:
        return None
    if args.mode == "both":
        return ["aris", "conventional"]
    return [args.mode]


def _resolve(args):
    """
    Resolves the configurations an invocation will run, in order.

    :returns: List of ``(stem, ExperimentConfig)``.
    :raises ConfigurationError: If any layer is invalid.
    """
    overrides = list(args.set)
    if args.workers is not None:
        overrides.append("workers=%d" % args.workers)
    config_stem = None
    if args.config:
        config_stem = filesystem.create_valid_filename(
            os.path.splitext(os.path.basename(args.config))[0]
        )

    resolved = []
    if args.command == "all":
        for experiment in Experiment:
            cfg = load_config(
                args.config, overrides, args.trials, args.seed, _modes(args), experiment=experiment
            )
            stem = experiment.value
            if config_stem:
                stem = "%s_%s" % (config_stem, experiment.value)
            resolved.append((stem, cfg))
    else:
        cfg = load_config(
            args.config,
            overrides,
            args.trials,
            args.seed,
            _modes(args),
            default_experiment=APPLICATION_DEFAULTS[args.command],
            allowed=Experiment.for_application(args.command),
        )
        resolved.append((config_stem or cfg.experiment.value, cfg))
    return resolved


def _run(stem, cfg, out_dir, plots):
    sys.stdout.write("# %s\n%s\n" % (stem, cfg.to_ini()))
    sys.stdout.flush()

    with open(os.path.join(out_dir, "%s.ini" % stem), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(cfg.to_ini())

    result = run_experiment(cfg)
    csv_path = os.path.join(out_dir, "%s.csv" % stem)
    write_csv(result, csv_path)
    logger.info("Wrote %s", csv_path)
    if result.has_channel_moduli:
        channel_path = os.path.join(out_dir, "%s_channel.csv" % stem)
        write_channel_csv(result, channel_path)
        logger.info("Wrote %s", channel_path)
    if plots:
        write_plots(result, out_dir, stem)


def parse_and_dispatch(argv=None):
    """
    Runs ``aris-opt`` with the given arguments.

    :param argv: Argument list without the program name, ``sys.argv[1:]`` when ``None``.
    :returns: Exit code.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    manager = LogManager()
    handler = manager.initialize_custom_handler()
    previous_debug = manager.global_debug
    if args.debug:
        manager.global_debug = True
    if args.log_file:
        manager.initialize_base_file_handler_from_path(args.log_file)

    try:
        try:
            resolved = _resolve(args)
        except ConfigurationError as e:
            parser.print_usage(sys.stderr)
            sys.stderr.write("aris-opt: error: %s\n" % e)
            return EXIT_USAGE

        out_dir = args.out_dir
        try:
            filesystem.ensure_folder_exists(out_dir)
            for stem, cfg in resolved:
                _run(stem, cfg, out_dir, not args.no_plots)
        except (ArisError, OSError) as e:
            logger.error("%s", e)
            return EXIT_FAILURE
        return EXIT_OK
    finally:
        manager.root_logger.removeHandler(handler)
        manager.global_debug = previous_debug
        if args.log_file:
            manager.uninitialize_base_file_handler()


def main():
    """Console script entry point."""
    sys.exit(parse_and_dispatch(sys.argv[1:]))
