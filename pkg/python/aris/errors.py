# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
All custom exceptions that the package emits are defined here.
"""


class ArisError(Exception):
    """
    Top level exception for all runtime errors raised by the package.
    """


class DimensionError(ArisError):
    """
    Exception raised when an operand does not have the shape an operation requires.
    """

    def __init__(self, operation, operand, expected, actual):
        """
        :param str operation: Name of the operation that rejected the operand.
        :param str operand: Name of the offending operand.
        :param expected: Human readable description of the expected shape.
        :param actual: Shape that was received.
        """
        super(DimensionError, self).__init__(
            "%s: operand '%s' has shape %s, expected %s."
            % (operation, operand, actual, expected)
        )
        self.operation = operation
        self.operand = operand


class ReflectionBoundError(ArisError):
    """
    Exception raised when a reflection coefficient violates the modulus bound of its mode.
    """

    def __init__(self, mode, index, modulus):
        """
        :param mode: :class:`~aris.core.ReflectionMode` being enforced.
        :param int index: Index of the offending coefficient.
        :param float modulus: Modulus of the offending coefficient.
        """
        super(ReflectionBoundError, self).__init__(
            "Coefficient %d has modulus %.12g which is not allowed in %s mode."
            % (index, modulus, mode.value)
        )
        self.index = index
        self.modulus = modulus


class LinkIndexError(ArisError, IndexError):
    """
    Exception raised when a device-to-device link index is out of range.
    """


class ConvergenceError(ArisError):
    """
    Exception raised when an iterative solver exhausts its iteration budget.

    The last iterate and its residual are kept on the exception so callers
    can still inspect how far the solver got.
    """

    def __init__(self, message, last_iterate=None, residual=None):
        super(ConvergenceError, self).__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class InfeasibleProblemError(ArisError):
    """
    Exception raised when a semidefinite program has no feasible point.
    """


class ConfigurationError(ArisError):
    """
    Exception raised when an experiment configuration is invalid.
    """
