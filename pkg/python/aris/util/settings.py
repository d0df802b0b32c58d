# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
INI settings access.
"""

import configparser
import os

from ..errors import ConfigurationError
from ..log import LogManager

logger = LogManager.get_logger(__name__)


class IniSettings(object):
    """
    Handles loading an ``ini`` file and reading typed settings from it.

    All the settings are returned as strings by :meth:`get_setting`. If a
    setting is missing from the file, ``None`` will be returned. If the
    setting is present but has no value, an empty string will be returned.
    Environment variables and ``~`` are expanded in every value.
    """

    def __init__(self, path):
        """
        :param str path: Path to the ``ini`` file.

        :raises ConfigurationError: Raised if the file is missing or can't be parsed.
        """
        self._path = path
        logger.debug("Reading settings from %s", self._path)
        self._config = self._load_config(self._path)

    @classmethod
    def from_dict(cls, values, origin):
        """
        Builds settings from a mapping of sections to ``{name: value}`` mappings.

        :param dict values: Section mappings, values are strings.
        :param str origin: Label used in place of a file path in error messages.
        """
        settings = cls.__new__(cls)
        settings._path = origin
        settings._config = configparser.ConfigParser(interpolation=None)
        settings._config.read_dict(values)
        return settings

    @property
    def path(self):
        """Path of the file the settings were read from."""
        return self._path

    @property
    def sections(self):
        """List of section names, in file order."""
        return self._config.sections()

    def get_section_settings(self, section):
        """
        Retrieves the name of the settings in a given section.

        :param str section: Name of the section of the settings to retrieve.

        :returns: A list of setting's name. If the section is missing, returns
            ``None``.
        """
        if not self._config.has_section(section):
            return None
        return self._config.options(section)

    def get_setting(self, section, name):
        """
        Provides access to any setting.

        :param str section: Name of the section to retrieve the setting from. Do not include the brackets.
        :param str name: Name of the setting under the provided section.

        :returns: The setting's value if found, ``None`` if the setting is missing from the file or
            an empty string if the setting is present but has no value associated.
        :rtype: str
        """
        if not self._config.has_section(section) or not self._config.has_option(
            section, name
        ):
            return None

        value = os.path.expanduser(os.path.expandvars(self._config.get(section, name)))
        return value.strip()

    def get_integer_setting(self, section, name):
        """
        Provides access to any setting and casts it into an integer.

        :returns: Integer if the value is valid, None if not set.
        :raises ConfigurationError: Raised if the value is not an integer.
        """
        value = self.get_setting(section, name)
        if value is None:
            return None

        try:
            return int(value)
        except ValueError:
            raise ConfigurationError(
                "Invalid value '%s' in '%s' for setting '%s' in section '%s': expecting integer."
                % (value, self._path, name, section)
            )

    def get_float_setting(self, section, name):
        """
        Provides access to any setting and casts it into a float.

        :returns: Float if the value is valid, None if not set.
        :raises ConfigurationError: Raised if the value is not a number.
        """
        value = self.get_setting(section, name)
        if value is None:
            return None

        try:
            return float(value)
        except ValueError:
            raise ConfigurationError(
                "Invalid value '%s' in '%s' for setting '%s' in section '%s': expecting number."
                % (value, self._path, name, section)
            )

    def get_list_setting(self, section, name):
        """
        Provides access to a comma separated setting.

        :returns: List of stripped, non-empty strings, None if not set.
        """
        value = self.get_setting(section, name)
        if value is None:
            return None
        return [item.strip() for item in value.split(",") if item.strip()]

    def _load_config(self, path):
        """
        Loads the configuration at a given location and returns it.

        :param str path: Path to the configuration to load.

        :returns: A ConfigParser instance with the contents from the configuration file.
        :raises ConfigurationError: Raised if the file doesn't exist or is malformed.
        """
        if not os.path.isfile(path):
            raise ConfigurationError("Configuration file '%s' does not exist." % path)

        config = configparser.ConfigParser(interpolation=None)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                config.read_file(fh)
        except configparser.Error as e:
            raise ConfigurationError(
                "Configuration file '%s' could not be parsed: %s" % (path, e)
            )
        return config
