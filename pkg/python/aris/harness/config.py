# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Experiment configuration.

An experiment is resolved in layers, each one overriding the previous:

1. the built-in defaults of every setting,
2. the preset of the selected experiment,
3. an ``ini`` file with ``[run]``, ``[scenario]`` and ``[solver]`` sections,
4. ``key=value`` overrides,
5. the dedicated ``trials``, ``seed`` and ``modes`` arguments.
"""

import copy
import enum
import math

from .. import constants
from ..core import ReflectionMode, db_to_linear
from ..errors import ArisError, ConfigurationError
from ..log import LogManager
from ..solvers import DinkelbachOptions, SolverOptions
from ..util import IniSettings

logger = LogManager.get_logger(__name__)

RUN_SECTION = "run"
SCENARIO_SECTION = "scenario"
SOLVER_SECTION = "solver"

JAMMER_CHOICES = ("on", "off", "both")
CHANNEL_MODELS = ("rayleigh", "mmwave")

# label suffix of jammer enabled variants when both variants are run
JAMMER_SUFFIX = "+jammer"


class Experiment(enum.Enum):
    """
    Shipped experiments, named after what they sweep.
    """

    RADAR_COMM_SIGMA_D = "radar_comm_sigma_d"
    RADAR_COMM_K = "radar_comm_k"
    RADAR_COMM_CLUSTERS = "radar_comm_clusters"
    D2D_POWER = "d2d_power"
    D2D_SIGMA_D = "d2d_sigma_d"
    D2D_K = "d2d_k"
    PLS_CONVERGENCE = "pls_convergence"
    PLS_SIGMA_DE = "pls_sigma_de"
    PLS_SIGMA_DJ = "pls_sigma_dj"

    @classmethod
    def from_name(cls, name):
        """
        :raises ConfigurationError: If no experiment has this name.
        """
        for experiment in cls:
            if experiment.value == name:
                return experiment
        raise ConfigurationError(
            "Unknown experiment '%s'. Expected one of %s."
            % (name, ", ".join(e.value for e in cls))
        )

    @classmethod
    def for_application(cls, application):
        """
        Experiments of one application, in preset table order.

        :param str application: ``radar-comm``, ``d2d`` or ``pls``.
        """
        return [e for e in cls if e.application == application]

    @property
    def application(self):
        """Command line name of the application, ``radar-comm``, ``d2d`` or ``pls``."""
        if self.value.startswith("radar_comm"):
            return "radar-comm"
        return self.value.split("_", 1)[0]

    @property
    def family(self):
        """
        Trial family: ``radarcomm``, ``d2d``, ``pls`` or ``pls_convergence``.
        """
        if self is Experiment.PLS_CONVERGENCE:
            return "pls_convergence"
        return self.application.replace("-", "")

    @property
    def sweep_param(self):
        """Name of the setting the sweep values are assigned to."""
        return _PRESETS[self]["sweep_param"]

    @property
    def metrics(self):
        """Metric names, in CSV order."""
        return _METRICS[self.family]


APPLICATION_DEFAULTS = {
    "radar-comm": Experiment.RADAR_COMM_SIGMA_D,
    "d2d": Experiment.D2D_POWER,
    "pls": Experiment.PLS_SIGMA_DE,
}

_METRICS = {
    "radarcomm": ("residual", "residual_db"),
    "d2d": ("worst_sinr_db", "offdiag_ratio"),
    "pls": ("secrecy_rate", "sinr_eve_db"),
    "pls_convergence": ("cost", "inner_objective"),
}

# sweep parameters that are not settings
_TRAJECTORY_PARAMS = ("iteration",)


def _steps(start, stop, step):
    return tuple(float(v) for v in range(start, stop + 1, step))


_PRESETS = {
    Experiment.RADAR_COMM_SIGMA_D: {
        "sweep_param": "sigma_d_db",
        "sweep": _steps(-10, 30, 5),
        "settings": {"num_tx": 6, "num_rx": 6, "num_elements": 64},
    },
    Experiment.RADAR_COMM_K: {
        "sweep_param": "num_elements",
        "sweep": (4.0, 8.0, 16.0, 32.0, 48.0, 64.0, 96.0, 128.0),
        "settings": {"num_tx": 6, "num_rx": 6, "sigma_d_db": 5.0},
    },
    Experiment.RADAR_COMM_CLUSTERS: {
        "sweep_param": "clusters",
        "sweep": _steps(1, 6, 1),
        "settings": {
            "num_tx": 6,
            "num_rx": 6,
            "num_elements": 64,
            "subpaths": 4,
            "sigma_d_db": 10.0,
            "channel_model": "mmwave",
        },
    },
    Experiment.D2D_POWER: {
        "sweep_param": "power",
        "sweep": _steps(10, 100, 10),
        "settings": {"num_links": 6, "num_elements": 64},
    },
    Experiment.D2D_SIGMA_D: {
        "sweep_param": "sigma_d_db",
        "sweep": _steps(-10, 30, 10),
        "settings": {"num_links": 6, "num_elements": 64, "power": 50.0},
    },
    Experiment.D2D_K: {
        "sweep_param": "num_elements",
        "sweep": (8.0, 16.0, 32.0, 48.0, 64.0),
        "settings": {"num_links": 6, "power": 50.0, "sigma_d_db": 10.0},
    },
    Experiment.PLS_CONVERGENCE: {
        "sweep_param": "iteration",
        "sweep": _steps(0, 8, 1),
        "settings": {"num_elements": 16, "modes": ("aris",), "jammer": "on"},
    },
    Experiment.PLS_SIGMA_DE: {
        "sweep_param": "sigma_de_db",
        "sweep": _steps(-10, 20, 5),
        "settings": {
            "num_elements": 2,
            "sigma_db_db": 10.0,
            "sigma_g_db": 10.0,
            "jammer": "both",
        },
    },
    Experiment.PLS_SIGMA_DJ: {
        "sweep_param": "sigma_dj_db",
        "sweep": _steps(-10, 20, 5),
        "settings": {
            "num_elements": 2,
            "sigma_db_db": 10.0,
            "sigma_g_db": 10.0,
            "jammer": "on",
        },
    },
}


class _Field(object):
    """
    One setting of the schema.

    :ivar str section: Section the setting lives in.
    :ivar str kind: ``int``, ``float``, ``str``, ``list`` or ``floats``.
    :ivar default: Built-in default.
    :ivar check: Callable returning an error string for invalid values, or ``None``.
    """

    def __init__(self, section, kind, default, check=None):
        self.section = section
        self.kind = kind
        self.default = default
        self.check = check


def _at_least(bound):
    def check(value):
        if value < bound:
            return "must be >= %s" % bound
    return check


def _positive(value):
    if not (math.isfinite(value) and value > 0):
        return "must be a positive number"


def _finite(value):
    if not math.isfinite(value):
        return "must be finite"


def _one_of(choices):
    def check(value):
        if value not in choices:
            return "must be one of %s" % ", ".join(choices)
    return check


def _modes(value):
    if not value:
        return "must name at least one mode"
    for name in value:
        try:
            ReflectionMode.from_name(name)
        except ArisError as e:
            return str(e)
    if len(set(value)) != len(value):
        return "must not repeat a mode"


def _sweep(value):
    if any(not math.isfinite(v) for v in value):
        return "must only hold finite numbers"


_SCHEMA = {
    # run
    "experiment": _Field(RUN_SECTION, "str", Experiment.RADAR_COMM_SIGMA_D.value),
    "trials": _Field(RUN_SECTION, "int", constants.DEFAULT_TRIALS, _at_least(1)),
    "seed": _Field(RUN_SECTION, "int", constants.DEFAULT_SEED, _at_least(0)),
    "modes": _Field(RUN_SECTION, "list", ("aris", "conventional"), _modes),
    "sweep": _Field(RUN_SECTION, "floats", (), _sweep),
    "workers": _Field(RUN_SECTION, "int", 1, _at_least(1)),
    "jammer": _Field(RUN_SECTION, "str", "on", _one_of(JAMMER_CHOICES)),
    # scenario
    "num_tx": _Field(SCENARIO_SECTION, "int", 6, _at_least(1)),
    "num_rx": _Field(SCENARIO_SECTION, "int", 6, _at_least(1)),
    "num_elements": _Field(SCENARIO_SECTION, "int", 64, _at_least(1)),
    "num_links": _Field(SCENARIO_SECTION, "int", 6, _at_least(1)),
    "clusters": _Field(SCENARIO_SECTION, "int", 4, _at_least(1)),
    "subpaths": _Field(SCENARIO_SECTION, "int", 4, _at_least(1)),
    "channel_model": _Field(SCENARIO_SECTION, "str", "rayleigh", _one_of(CHANNEL_MODELS)),
    "sigma_d_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_g_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_h_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_db_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_hb_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_de_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_he_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_dj_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_gj_db": _Field(SCENARIO_SECTION, "float", 0.0, _finite),
    "sigma_jb_db": _Field(SCENARIO_SECTION, "float", -10.0, _finite),
    "power": _Field(SCENARIO_SECTION, "float", 1.0, _positive),
    "noise_var": _Field(SCENARIO_SECTION, "float", 1.0, _positive),
    "noise_b": _Field(SCENARIO_SECTION, "float", 1.0, _positive),
    "noise_e": _Field(SCENARIO_SECTION, "float", 1.0, _positive),
    # solver
    "ls_tol": _Field(SOLVER_SECTION, "float", constants.LS_TOLERANCE, _positive),
    "ls_max_iters": _Field(SOLVER_SECTION, "int", constants.LS_MAX_ITERATIONS, _at_least(1)),
    "sdp_tol": _Field(SOLVER_SECTION, "float", constants.SDP_TOLERANCE, _positive),
    "sdp_max_iters": _Field(SOLVER_SECTION, "int", constants.SDP_MAX_ITERATIONS, _at_least(1)),
    "dinkelbach_tol": _Field(SOLVER_SECTION, "float", constants.DINKELBACH_TOLERANCE, _positive),
    "dinkelbach_max_iters": _Field(
        SOLVER_SECTION, "int", constants.DINKELBACH_MAX_ITERATIONS, _at_least(1)
    ),
    "scp_tol": _Field(SOLVER_SECTION, "float", constants.SCP_TOLERANCE, _positive),
    "scp_max_iters": _Field(SOLVER_SECTION, "int", constants.SCP_MAX_ITERATIONS, _at_least(1)),
    "randomization_trials": _Field(
        SOLVER_SECTION, "int", constants.RANDOMIZATION_TRIALS, _at_least(1)
    ),
}

SECTIONS = (RUN_SECTION, SCENARIO_SECTION, SOLVER_SECTION)


def setting_names(section=None):
    """
    Names of the known settings, optionally restricted to one section.
    """
    return [
        name for name, field in _SCHEMA.items() if section is None or field.section == section
    ]


class ExperimentConfig(object):
    """
    Fully resolved settings of one experiment.

    Every setting of the schema is available as an attribute, for example
    ``cfg.num_elements`` or ``cfg.sigma_d_db``. Instances are validated on
    construction and treated as read-only afterwards, see :meth:`at`.
    """

    def __init__(self, experiment, **settings):
        """
        :param experiment: :class:`Experiment` or its name.
        :param settings: Setting overrides applied on top of the experiment preset.

        :raises ConfigurationError: If a setting is unknown or invalid.
        """
        if not isinstance(experiment, Experiment):
            experiment = Experiment.from_name(experiment)

        values = dict((name, field.default) for name, field in _SCHEMA.items())
        preset = _PRESETS[experiment]
        values.update(preset["settings"])
        values["sweep"] = preset["sweep"]
        for name, value in settings.items():
            if name not in _SCHEMA:
                raise ConfigurationError("Unknown setting '%s'." % name)
            values[name] = value
        values["experiment"] = experiment.value

        self._experiment = experiment
        self._values = {}
        for name, value in values.items():
            self._values[name] = _normalize(name, value)
        self._validate()

    def __getattr__(self, name):
        values = self.__dict__.get("_values")
        if values is not None and name in values:
            return values[name]
        raise AttributeError(name)

    def __getstate__(self):
        return {"experiment": self._experiment, "values": self._values}

    def __setstate__(self, state):
        self._experiment = state["experiment"]
        self._values = state["values"]

    def __eq__(self, other):
        return isinstance(other, ExperimentConfig) and self._values == other._values

    def __repr__(self):
        return "<ExperimentConfig %s trials=%d seed=%d>" % (
            self._experiment.value,
            self.trials,
            self.seed,
        )

    @property
    def experiment(self):
        """:class:`Experiment` being run."""
        return self._experiment

    @property
    def sweep_param(self):
        return self._experiment.sweep_param

    @property
    def metrics(self):
        return self._experiment.metrics

    @property
    def is_trajectory(self):
        """True when the sweep indexes iterations of one solve rather than settings."""
        return self.sweep_param in _TRAJECTORY_PARAMS

    def as_dict(self):
        """Copy of every setting, keyed by name."""
        return dict(self._values)

    def at(self, sweep_value):
        """
        Copy of this config with the sweep parameter set to ``sweep_value``.

        Trajectory experiments return themselves unchanged.
        """
        if self.is_trajectory:
            return self
        point = copy.copy(self)
        point._values = dict(self._values)
        point._values[self.sweep_param] = _normalize(self.sweep_param, sweep_value)
        point._validate_setting(self.sweep_param)
        return point

    def labels(self):
        """
        Result labels with the mode and the jammer state each one is solved with.

        :returns: List of ``(label, ReflectionMode, jammer_enabled)``.
        """
        labels = []
        for name in self.modes:
            mode = ReflectionMode.from_name(name)
            if self._experiment.application == "pls" and self.jammer == "both":
                labels.append((name, mode, False))
                labels.append((name + JAMMER_SUFFIX, mode, True))
            elif self._experiment.application == "pls":
                labels.append((name, mode, self.jammer == "on"))
            else:
                labels.append((name, mode, False))
        return labels

    def variance(self, name):
        """
        Linear value of a ``sigma_*_db`` setting.

        :param str name: Setting name without the ``_db`` suffix, e.g. ``sigma_d``.
        """
        return db_to_linear(self._values[name + "_db"])

    def ls_options(self):
        """:class:`~aris.solvers.SolverOptions` of the least-squares solvers."""
        return SolverOptions(self.ls_max_iters, self.ls_tol)

    def dinkelbach_options(self, seed=None):
        """
        :class:`~aris.solvers.DinkelbachOptions` of the fractional drivers.

        :param seed: Seed or generator of the rank-one recovery.
        """
        return DinkelbachOptions(
            sdp=SolverOptions(self.sdp_max_iters, self.sdp_tol),
            tol=self.dinkelbach_tol,
            max_iters=self.dinkelbach_max_iters,
            inner_tol=self.scp_tol,
            inner_max_iters=self.scp_max_iters,
            randomization_trials=self.randomization_trials,
            seed=seed,
        )

    def to_ini(self):
        """
        Renders every setting as an ``ini`` document that loads back to this config.
        """
        lines = []
        for section in SECTIONS:
            if lines:
                lines.append("")
            lines.append("[%s]" % section)
            for name in setting_names(section):
                lines.append("%s = %s" % (name, _format(self._values[name])))
        return "\n".join(lines) + "\n"

    def _validate(self):
        for name in _SCHEMA:
            self._validate_setting(name)

        if not self.sweep:
            raise ConfigurationError(
                "Experiment '%s' needs at least one sweep value." % self._experiment.value
            )
        if self.sweep_param in _TRAJECTORY_PARAMS or _SCHEMA[self.sweep_param].kind == "int":
            lower = 0 if self.is_trajectory else 1
            for value in self.sweep:
                if value != int(value) or value < lower:
                    raise ConfigurationError(
                        "Sweep value %r of '%s' must be an integer >= %d."
                        % (value, self.sweep_param, lower)
                    )
        elif _SCHEMA[self.sweep_param].check is not None:
            for value in self.sweep:
                error = _SCHEMA[self.sweep_param].check(value)
                if error:
                    raise ConfigurationError(
                        "Sweep value %r of '%s' %s." % (value, self.sweep_param, error)
                    )

        if self.channel_model == "mmwave" and self._experiment.family != "radarcomm":
            raise ConfigurationError(
                "The mmwave channel model is only available to radar-comm experiments."
            )

    def _validate_setting(self, name):
        check = _SCHEMA[name].check
        if check is None:
            return
        error = check(self._values[name])
        if error:
            raise ConfigurationError(
                "Invalid value %r for setting '%s': %s." % (self._values[name], name, error)
            )


def _normalize(name, value):
    kind = _SCHEMA[name].kind
    try:
        if kind == "int":
            if isinstance(value, float) and value != int(value):
                raise ValueError(value)
            return int(value)
        if kind == "float":
            return float(value)
        if kind == "str":
            return str(value)
        if isinstance(value, str):
            value = [item.strip() for item in value.split(",") if item.strip()]
        if kind == "floats":
            return tuple(float(v) for v in value)
        return tuple(str(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigurationError("Invalid value %r for setting '%s'." % (value, name))


def _format(value):
    if isinstance(value, tuple):
        return ", ".join(_format(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _read_settings(settings):
    """
    Typed values of every setting present in an :class:`~aris.util.IniSettings`.

    :raises ConfigurationError: On unknown sections or settings.
    """
    values = {}
    for section in settings.sections:
        if section not in SECTIONS:
            raise ConfigurationError(
                "Unknown section '[%s]' in '%s'. Expected %s."
                % (section, settings.path, ", ".join(SECTIONS))
            )
        for name in settings.get_section_settings(section):
            field = _SCHEMA.get(name)
            if field is None or field.section != section:
                raise ConfigurationError(
                    "Unknown setting '%s' in section '[%s]' of '%s'."
                    % (name, section, settings.path)
                )
            if field.kind == "int":
                values[name] = settings.get_integer_setting(section, name)
            elif field.kind == "float":
                values[name] = settings.get_float_setting(section, name)
            elif field.kind in ("list", "floats"):
                values[name] = settings.get_list_setting(section, name)
            else:
                values[name] = settings.get_setting(section, name)
    return values


def parse_overrides(overrides):
    """
    Converts ``key=value`` strings into typed setting values.

    :param overrides: Iterable of ``key=value`` strings with bare setting names.
    :returns: Dictionary of typed values.
    :raises ConfigurationError: On malformed pairs or unknown settings.
    """
    sections = {}
    for item in overrides:
        name, sep, value = item.partition("=")
        name = name.strip().lower()
        if not sep or not name:
            raise ConfigurationError("Override '%s' is not of the form key=value." % item)
        field = _SCHEMA.get(name)
        if field is None:
            raise ConfigurationError("Unknown setting '%s' in override '%s'." % (name, item))
        sections.setdefault(field.section, {})[name] = value.strip()
    return _read_settings(IniSettings.from_dict(sections, "--set"))


def load_config(
    config_path=None,
    overrides=(),
    trials=None,
    seed=None,
    modes=None,
    experiment=None,
    default_experiment=None,
    allowed=None,
):
    """
    Resolves an :class:`ExperimentConfig` from every configuration layer.

    :param str config_path: Optional ``ini`` file.
    :param overrides: ``key=value`` strings.
    :param int trials: Overrides the trial count when not ``None``.
    :param int seed: Overrides the base seed when not ``None``.
    :param modes: Overrides the mode list when not ``None``.
    :param experiment: :class:`Experiment` that takes precedence over every layer.
    :param default_experiment: :class:`Experiment` used when no layer names one.
    :param allowed: Optional collection of experiments that may be selected.
    :returns: :class:`ExperimentConfig`
    :raises ConfigurationError: On any invalid layer.
    """
    values = {}
    if config_path:
        values.update(_read_settings(IniSettings(config_path)))
    values.update(parse_overrides(overrides))
    if trials is not None:
        values["trials"] = trials
    if seed is not None:
        values["seed"] = seed
    if modes is not None:
        values["modes"] = modes

    name = values.pop("experiment", None)
    if experiment is None and name is not None:
        experiment = Experiment.from_name(name)
    if experiment is None:
        experiment = default_experiment
    if experiment is None:
        raise ConfigurationError("No experiment selected.")

    if allowed is not None and experiment not in allowed:
        raise ConfigurationError(
            "Experiment '%s' can't be run from here. Expected one of %s."
            % (experiment.value, ", ".join(e.value for e in allowed))
        )

    config = ExperimentConfig(experiment, **values)
    logger.debug("Resolved %r from %s", config, config_path or "built-in presets")
    return config
