# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Utility methods for manipulating files and folders.
"""

import os
import re
import errno
import functools

from ..log import LogManager

log = LogManager.get_logger(__name__)


def with_cleared_umask(func):
    """
    Decorator which clears the umask for a method.

    The umask would otherwise alter the permissions passed to I/O methods
    that take a permissions parameter, for example::

        @with_cleared_umask
        def create_folders(path, permissions=0o777):
            os.makedirs(path, permissions)
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        old_umask = os.umask(0)
        try:
            return func(*args, **kwargs)
        finally:
            os.umask(old_umask)

    return wrapper


@with_cleared_umask
def ensure_folder_exists(path, permissions=0o775):
    """
    Creates a folder and parent folders if such do not already exist.

    :param str path: path to create
    :param int permissions: Permissions to use when folder is created

    :raises: OSError - if there was a problem creating the folder
    """
    if not os.path.exists(path):
        log.debug("Creating folder '%s'", path)
        try:
            os.makedirs(path, permissions)
        except OSError as e:
            # another worker may have created it in the meantime
            if e.errno != errno.EEXIST:
                raise


def create_valid_filename(value):
    """
    Create a sanitized file name given a string.
    Replaces spaces and other characters with underscores

    'radar comm / sigma d ' -> 'radar_comm___sigma_d'

    :param str value: String value to sanitize
    :returns: sanitized string
    """
    exp = re.compile(r"[^\w\.-]", re.UNICODE)
    return exp.sub("_", value.strip())
