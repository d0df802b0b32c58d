# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Logging for the library and the ``aris-opt`` command.

Every logger lives under the ``aris`` namespace, which does not propagate to
the python root logger and carries only a null handler until a caller
attaches one:

.. code-block:: text

    aris.core.<module>        library modules, e.g. aris.core.solvers.sdp
    aris.stopwatch.<module>   timings of functions wrapped in LogManager.log_timing
    aris.ext.<name>           scripts and other callers

Modules get their logger with::

    from aris.log import LogManager
    logger = LogManager.get_logger(__name__)

Handlers attached through :class:`LogManager` log at info level, or at debug
level while :attr:`LogManager.global_debug` is set. The ``ARIS_DEBUG``
environment variable sets it at import.
"""

import logging
from logging.handlers import RotatingFileHandler
import os
import time
import weakref
from functools import wraps

from . import constants

# size of one log file before it rotates, one backup is kept
_LOG_FILE_BYTES = 5 * 1024 * 1024

_CONSOLE_FORMAT = "[%(levelname)s %(name)s] %(message)s"
_FILE_FORMAT = "%(asctime)s [%(process)d %(levelname)s %(name)s] %(message)s"


class LogManager(object):
    """
    Owns the ``aris`` root logger and the handlers attached to it.

    Instantiating it always returns the same object.
    """

    __instance = None

    def __new__(cls):
        if cls.__instance is None:
            instance = super(LogManager, cls).__new__(cls)
            instance._root_logger = logging.getLogger(constants.ROOT_LOGGER_NAME)
            instance._handlers = []
            instance._file_handler = None
            instance._log_file = None
            instance._global_debug = constants.DEBUG_LOGGING_ENV_VAR in os.environ
            cls.__instance = instance
        return cls.__instance

    @staticmethod
    def get_logger(log_name):
        """
        Logger for a module or an external caller.

        ``aris.solvers.sdp`` maps to ``aris.core.solvers.sdp``; names outside
        the package map to ``aris.ext.<name>``.

        :param str log_name: Typically ``__name__``.
        :returns: Standard python logger.
        """
        prefix = constants.ROOT_LOGGER_NAME + "."
        if log_name.startswith(prefix):
            branch, log_name = "core", log_name[len(prefix) :]
        else:
            branch = "ext"
        return logging.getLogger("%s.%s.%s" % (constants.ROOT_LOGGER_NAME, branch, log_name))

    @staticmethod
    def log_timing(func):
        """
        Decorator logging the wall time of every call at debug level::

            [DEBUG aris.stopwatch.aris.d2d] maxmin_design: 0.633000s
        """
        timing_logger = logging.getLogger(
            "%s.%s" % (constants.PROFILING_LOG_CHANNEL, func.__module__)
        )

        @wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                timing_logger.debug("%s: %fs", func.__name__, time.perf_counter() - start)

        return wrapper

    @property
    def root_logger(self):
        """The sealed ``aris`` logger. Adjust handler levels, not its level."""
        return self._root_logger

    @property
    def global_debug(self):
        """
        Debug level for every handler attached through this manager.
        """
        return self._global_debug

    @global_debug.setter
    def global_debug(self, state):
        self._global_debug = bool(state)
        live = [ref() for ref in self._handlers]
        self._handlers = [weakref.ref(handler) for handler in live if handler is not None]
        for handler in live + [self._file_handler]:
            if handler is not None:
                handler.setLevel(self._level())
        log.debug("Debug logging %s.", "enabled" if self._global_debug else "disabled")

    @property
    def log_file(self):
        """Path of the active log file, or None."""
        return self._log_file

    @property
    def base_file_handler(self):
        """The rotating file handler, or None."""
        return self._file_handler

    def _level(self):
        return logging.DEBUG if self._global_debug else logging.INFO

    def initialize_custom_handler(self, handler=None):
        """
        Attaches a handler to the ``aris`` logger.

        :param handler: Handler to attach. A stderr stream handler when omitted.
        :returns: The attached handler.
        """
        if handler is None:
            handler = logging.StreamHandler()
            handler.setFormatter(logging.Formatter(_CONSOLE_FORMAT))
        handler.setLevel(self._level())
        self._root_logger.addHandler(handler)
        self._handlers.append(weakref.ref(handler))
        return handler

    def initialize_base_file_handler_from_path(self, log_file):
        """
        Writes the log to a rotating file, replacing any previous one.

        :param str log_file: Destination file. Its folder is created when missing.
        :returns: Path of the previous log file, or None.
        """
        # imported here, util imports this module
        from .util import filesystem

        filesystem.ensure_folder_exists(os.path.dirname(os.path.abspath(log_file)))
        previous = self.uninitialize_base_file_handler()

        handler = RotatingFileHandler(
            log_file, maxBytes=_LOG_FILE_BYTES, backupCount=1, encoding="utf8"
        )
        handler.setFormatter(logging.Formatter(_FILE_FORMAT))
        handler.setLevel(self._level())
        self._root_logger.addHandler(handler)
        self._file_handler, self._log_file = handler, log_file
        log.debug("Writing log to '%s'", log_file)
        return previous

    def uninitialize_base_file_handler(self):
        """
        Detaches and closes the rotating file handler.

        :returns: Path of the log file it wrote to, or None if there was none.
        """
        if self._file_handler is None:
            return None
        log.debug("Closing log file '%s'", self._log_file)
        self._root_logger.removeHandler(self._file_handler)
        self._file_handler.close()
        previous = self._log_file
        self._file_handler, self._log_file = None, None
        return previous


log = LogManager.get_logger(__name__)

LogManager().root_logger.propagate = False
LogManager().root_logger.setLevel(logging.DEBUG)
LogManager().root_logger.addHandler(logging.NullHandler())
