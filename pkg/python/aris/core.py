# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Complex value types and elementary constructions shared by every application.

The reflection coefficients of a surface with ``K`` elements are held by a
:class:`ReflectionVector`. Its :class:`ReflectionMode` decides which bound the
coefficients obey: an absorptive surface allows any modulus in ``[0, 1]``, a
conventional surface only allows unit modulus.

Matrices and vectors are plain ``numpy`` arrays of ``complex128``. The
:func:`as_complex_matrix` and :func:`as_complex_vector` helpers validate them
at the public entry points.
"""

import enum

import numpy as np

from . import constants
from .errors import ArisError, DimensionError, ReflectionBoundError


class ReflectionMode(enum.Enum):
    """
    Constraint set of the reflection coefficients.
    """

    #: ``|phi_k| <= 1``, partial absorption allowed
    ABSORPTIVE = "aris"
    #: ``|phi_k| == 1``, phase-only surface
    CONVENTIONAL = "conventional"

    @classmethod
    def from_name(cls, name):
        """
        Looks up a mode from its command line spelling.

        :param str name: ``aris`` or ``conventional``.
        :returns: :class:`ReflectionMode`
        :raises ArisError: If the name is unknown.
        """
        for mode in cls:
            if mode.value == name:
                return mode
        raise ArisError(
            "Unknown reflection mode '%s'. Expected one of %s."
            % (name, ", ".join(m.value for m in cls))
        )


class ReflectionVector(object):
    """
    Immutable vector of ``K`` complex reflection coefficients.

    The coefficients are copied into a read-only array on construction and
    checked against the bound of the given mode.
    """

    __slots__ = ("_coeffs", "_mode")

    def __init__(self, coeffs, mode=ReflectionMode.ABSORPTIVE):
        """
        :param coeffs: Sequence of complex coefficients.
        :param mode: :class:`ReflectionMode` the coefficients must satisfy.
        :raises ReflectionBoundError: If a coefficient violates the bound of the mode.
        """
        values = np.array(coeffs, dtype=np.complex128).reshape(-1)
        if values.size == 0:
            raise DimensionError("ReflectionVector", "coeffs", "at least one element", values.shape)
        if not np.all(np.isfinite(values)):
            raise ArisError("Reflection coefficients must be finite.")

        moduli = np.abs(values)
        if mode is ReflectionMode.ABSORPTIVE:
            bad = np.flatnonzero(moduli > 1.0 + constants.MODULUS_TOLERANCE)
        else:
            bad = np.flatnonzero(np.abs(moduli - 1.0) > constants.MODULUS_TOLERANCE)
        if bad.size:
            raise ReflectionBoundError(mode, int(bad[0]), float(moduli[bad[0]]))

        values.setflags(write=False)
        self._coeffs = values
        self._mode = mode

    @classmethod
    def project(cls, values, mode=ReflectionMode.ABSORPTIVE):
        """
        Builds a vector by projecting arbitrary complex values onto the feasible set.

        Absorptive projection shrinks coefficients outside the unit disk onto
        its boundary. Conventional projection keeps only the phase, with the
        phase of a zero taken as zero.

        :param values: Sequence of complex values.
        :param mode: :class:`ReflectionMode` to project onto.
        :returns: :class:`ReflectionVector`
        """
        return cls(project_coefficients(values, mode), mode)

    @classmethod
    def from_polar(cls, rho, theta, mode=ReflectionMode.ABSORPTIVE):
        """
        Builds a vector from per-element moduli and phases.

        :param rho: Moduli, one per element.
        :param theta: Phases in radians, one per element.
        """
        rho = np.asarray(rho, dtype=np.float64)
        theta = np.asarray(theta, dtype=np.float64)
        return cls(rho * np.exp(1j * theta), mode)

    @classmethod
    def zeros(cls, num_elements):
        """
        Fully absorbing surface, equivalent to switching it off.
        """
        return cls(np.zeros(num_elements, dtype=np.complex128), ReflectionMode.ABSORPTIVE)

    @classmethod
    def ones(cls, num_elements, mode=ReflectionMode.ABSORPTIVE):
        """
        Lossless surface with every phase at zero.
        """
        return cls(np.ones(num_elements, dtype=np.complex128), mode)

    @property
    def coeffs(self):
        """Read-only array of the complex coefficients."""
        return self._coeffs

    @property
    def mode(self):
        """:class:`ReflectionMode` of the vector."""
        return self._mode

    @property
    def moduli(self):
        """Per-element modulus ``rho_k``."""
        return np.abs(self._coeffs)

    @property
    def phases(self):
        """Per-element phase ``theta_k`` in radians."""
        return np.angle(self._coeffs)

    def as_diagonal(self):
        """
        :returns: ``K x K`` diagonal reflection matrix.
        """
        return np.diag(self._coeffs)

    def augmented(self):
        """
        :returns: Length ``K+1`` vector with a trailing unit entry.
        """
        return np.append(self._coeffs, 1.0 + 0.0j)

    def as_mode(self, mode):
        """
        The same coefficients tagged with another mode.

        Unit modulus coefficients are always valid absorptive ones.

        :raises ReflectionBoundError: If a coefficient violates the bound of ``mode``.
        """
        if mode is self._mode:
            return self
        return ReflectionVector(self._coeffs, mode)

    def __len__(self):
        return self._coeffs.size

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, ReflectionVector):
            return NotImplemented
        return self._mode is other._mode and np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash((self._mode, self._coeffs.tobytes()))

    def __repr__(self):
        return "<ReflectionVector %s K=%d mean modulus=%.4f>" % (
            self._mode.value,
            len(self),
            float(np.mean(self.moduli)),
        )


def project_coefficients(values, mode):
    """
    Projects complex values onto the feasible set of a reflection mode.

    :param values: Array of complex values.
    :param mode: :class:`ReflectionMode`
    :returns: New ``complex128`` array.
    """
    values = np.asarray(values, dtype=np.complex128)
    if mode is ReflectionMode.ABSORPTIVE:
        return values / np.maximum(1.0, np.abs(values))
    return np.exp(1j * np.angle(values))


def as_complex_matrix(value, operation, operand):
    """
    Validates a dense complex matrix.

    :param value: Array-like input.
    :param str operation: Name of the calling operation, used in errors.
    :param str operand: Name of the operand, used in errors.
    :returns: Two dimensional ``complex128`` array.
    :raises DimensionError: If the input is not a non-empty matrix.
    :raises ArisError: If an entry is not finite.
    """
    matrix = np.asarray(value, dtype=np.complex128)
    if matrix.ndim != 2 or 0 in matrix.shape:
        raise DimensionError(operation, operand, "a non-empty matrix", matrix.shape)
    if not np.all(np.isfinite(matrix)):
        raise ArisError("%s: operand '%s' has non-finite entries." % (operation, operand))
    return matrix


def as_complex_vector(value, operation, operand):
    """
    Validates a dense complex vector. See :func:`as_complex_matrix`.

    :returns: One dimensional ``complex128`` array.
    """
    vector = np.asarray(value, dtype=np.complex128)
    if vector.ndim != 1 or vector.size == 0:
        raise DimensionError(operation, operand, "a non-empty vector", vector.shape)
    if not np.all(np.isfinite(vector)):
        raise ArisError("%s: operand '%s' has non-finite entries." % (operation, operand))
    return vector


def coefficients_of(phi):
    """
    Returns the coefficient array of a :class:`ReflectionVector` or array-like.
    """
    if isinstance(phi, ReflectionVector):
        return phi.coeffs
    return as_complex_vector(phi, "coefficients_of", "phi")


def make_diag_channel(phi, H, G):
    """
    Cascade channel through the surface, ``H diag(phi) G``.

    :param phi: :class:`ReflectionVector` with ``K`` coefficients.
    :param H: ``rows x K`` matrix from the surface to the receiver.
    :param G: ``K x cols`` matrix from the transmitter to the surface.
    :returns: ``rows x cols`` complex matrix.
    :raises DimensionError: If ``H`` or ``G`` don't match ``K``.
    """
    coeffs = coefficients_of(phi)
    H = as_complex_matrix(H, "make_diag_channel", "H")
    G = as_complex_matrix(G, "make_diag_channel", "G")
    num_elements = coeffs.size
    if H.shape[1] != num_elements:
        raise DimensionError("make_diag_channel", "H", "(rows, %d)" % num_elements, H.shape)
    if G.shape[0] != num_elements:
        raise DimensionError("make_diag_channel", "G", "(%d, cols)" % num_elements, G.shape)
    return (H * coeffs[np.newaxis, :]) @ G


def steering_vector(num_elements, angle):
    """
    Response of a half-wavelength uniform linear array.

    :param int num_elements: Number of array elements, at least 1.
    :param float angle: Angle in radians.
    :returns: Unit norm vector ``exp(j k pi sin(angle)) / sqrt(num_elements)``.
    """
    if num_elements < 1:
        raise DimensionError("steering_vector", "num_elements", ">= 1", num_elements)
    if not np.isfinite(angle):
        raise ArisError("steering_vector: angle must be finite.")
    k = np.arange(num_elements)
    return np.exp(1j * np.pi * k * np.sin(angle)) / np.sqrt(num_elements)


def vectorize(matrix):
    """
    Stacks the columns of a matrix into one vector.
    """
    matrix = np.asarray(matrix, dtype=np.complex128)
    return matrix.reshape(-1, order="F")


def unvectorize(vector, rows, cols):
    """
    Inverse of :func:`vectorize`.
    """
    vector = np.asarray(vector, dtype=np.complex128)
    if vector.size != rows * cols:
        raise DimensionError("unvectorize", "vector", "length %d" % (rows * cols), vector.shape)
    return vector.reshape((rows, cols), order="F")


def hadamard(a, b):
    """
    Elementwise product of two equally shaped arrays.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise DimensionError("hadamard", "b", a.shape, b.shape)
    return a * b


def db_to_linear(value_db):
    """
    Converts a power in dB to linear scale, ``10^(dB/10)``.
    """
    return 10.0 ** (np.asarray(value_db, dtype=np.float64) / 10.0)


def linear_to_db(value):
    """
    Converts a linear power to dB, ``10 log10(value)``.
    """
    return 10.0 * np.log10(value)
