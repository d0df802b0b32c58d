# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Complex least squares over reflection coefficient sets.

Both solvers minimize ``||d + A phi||`` with ``A`` of size ``MN x K``:

- :func:`solve_disk_ls` over the product of unit disks (absorptive surface),
  a convex problem solved by monotone accelerated projected gradient.
- :func:`solve_unit_modulus_gp` over the unit circles (conventional surface),
  by gradient projection onto the phases.
"""

import numpy as np

from .. import constants
from ..core import (
    ReflectionMode,
    ReflectionVector,
    as_complex_matrix,
    as_complex_vector,
    project_coefficients,
)
from ..errors import ConvergenceError, DimensionError
from ..log import LogManager
from .options import SolverOptions, StepRule

logger = LogManager.get_logger(__name__)


class LeastSquaresResult(object):
    """
    Outcome of a least-squares solve.

    :ivar phi: :class:`~aris.core.ReflectionVector` solution.
    :ivar float residual: ``||d + A phi||`` at the solution.
    :ivar int iterations: Iterations performed.
    :ivar bool converged: False when the iteration budget ran out first.
    :ivar list history: Residual after every iteration, starting with the
        initial point. Never increases.
    """

    def __init__(self, phi, residual, iterations, converged, history):
        self.phi = phi
        self.residual = residual
        self.iterations = iterations
        self.converged = converged
        self.history = history

    def __repr__(self):
        return "<LeastSquaresResult residual=%.6g iterations=%d converged=%s>" % (
            self.residual,
            self.iterations,
            self.converged,
        )


def _validate_system(A, d, operation):
    A = as_complex_matrix(A, operation, "A")
    d = as_complex_vector(d, operation, "d")
    if A.shape[0] != d.size:
        raise DimensionError(operation, "d", "length %d" % A.shape[0], d.shape)
    return A, d


def ls_objective(A, d, phi):
    """
    Squared residual ``||d + A phi||^2``.
    """
    r = d + A @ phi
    return float(np.real(np.vdot(r, r)))


def ls_gradient(A, d, phi):
    """
    Gradient ``2 A^H (d + A phi)`` of :func:`ls_objective`, seen as a
    function of the real and imaginary parts of ``phi``.
    """
    return 2.0 * (A.conj().T @ (d + A @ phi))


def _lipschitz(A):
    # largest eigenvalue of A^H A
    return float(np.linalg.norm(A, 2) ** 2)


def _step(A, d, y, f_y, step, rule, mode):
    """
    One projected gradient step from ``y``.

    :returns: Tuple ``(new point, its objective, step used)``.
    """
    grad = A.conj().T @ (d + A @ y)
    while True:
        z = project_coefficients(y - step * grad, mode)
        f_z = ls_objective(A, d, z)
        if rule is StepRule.FIXED_SAFE_STEP:
            return z, f_z, step
        delta = z - y
        bound = f_y + 2.0 * np.real(np.vdot(grad, delta)) + np.real(np.vdot(delta, delta)) / step
        if f_z <= bound + 1e-12 * max(1.0, abs(f_y)):
            return z, f_z, step
        step *= 0.5


def solve_disk_ls(A, d, opts=None):
    """
    Minimizes ``||d + A phi||`` subject to ``|phi_k| <= 1``.

    The iteration starts from the projected least-norm solution and runs
    monotone FISTA. It stops once the gradient mapping is below
    ``100 tol max(1, ||2 A^H d||_inf)`` in every coordinate, or once the
    residual vanishes to rounding.

    :param A: ``MN x K`` complex matrix.
    :param d: Length ``MN`` complex vector.
    :param opts: :class:`SolverOptions`, defaults to :meth:`SolverOptions.least_squares`.
    :returns: :class:`LeastSquaresResult` with an absorptive solution.
    :raises ConvergenceError: If the iteration budget runs out.
    """
    opts = opts or SolverOptions.least_squares()
    A, d = _validate_system(A, d, "solve_disk_ls")
    mode = ReflectionMode.ABSORPTIVE

    lipschitz = _lipschitz(A)
    if lipschitz == 0.0:
        phi = ReflectionVector.zeros(A.shape[1])
        residual = float(np.linalg.norm(d))
        return LeastSquaresResult(phi, residual, 0, True, [residual])

    safe_step = 1.0 / lipschitz
    step = safe_step if opts.step_rule is StepRule.FIXED_SAFE_STEP else 2.0 * safe_step

    x = project_coefficients(np.linalg.lstsq(A, -d, rcond=None)[0], mode)
    f_x = ls_objective(A, d, x)
    residual_floor = 1e-14 * (1.0 + float(np.linalg.norm(d)))
    kkt_threshold = 100.0 * opts.tol * max(1.0, float(np.max(np.abs(ls_gradient(A, d, np.zeros_like(x))))))

    y = x.copy()
    f_y = f_x
    t = 1.0
    history = [np.sqrt(f_x)]
    converged = False
    iteration = 0

    for iteration in range(1, opts.max_iters + 1):
        if np.sqrt(f_x) <= residual_floor:
            converged = True
            iteration -= 1
            break

        z, f_z, step = _step(A, d, y, f_y, step, opts.step_rule, mode)

        x_prev = x
        if f_z <= f_x:
            x, f_x = z, f_z
        t_next = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * t * t))
        y = x + (t / t_next) * (z - x) + ((t - 1.0) / t_next) * (x - x_prev)
        f_y = ls_objective(A, d, y)
        t = t_next
        history.append(np.sqrt(f_x))

        # gradient mapping at the incumbent, in units of the objective gradient
        mapping = x - project_coefficients(x - safe_step * (A.conj().T @ (d + A @ x)), mode)
        if 2.0 * np.max(np.abs(mapping)) / safe_step <= kkt_threshold:
            converged = True
            break

    residual = float(np.sqrt(f_x))
    if not converged:
        raise ConvergenceError(
            "solve_disk_ls did not converge in %d iterations (residual %.6g)."
            % (opts.max_iters, residual),
            last_iterate=ReflectionVector(x, mode),
            residual=residual,
        )

    logger.debug("solve_disk_ls: residual %.6g after %d iterations", residual, iteration)
    return LeastSquaresResult(ReflectionVector(x, mode), residual, iteration, True, history)


def solve_unit_modulus_gp(A, d, opts=None):
    """
    Minimizes ``||d + A phi||`` subject to ``|phi_k| = 1`` by gradient projection.

    Starts from the phases of ``-A^+ d``, or of ``-A^H d`` when ``A`` lacks
    full column rank, and iterates ``phi <- exp(j angle(phi - beta A^H (d + A phi)))``
    with ``beta = 0.9 / lambda_max(A^H A)``. Stops when the relative change of
    the objective drops below ``opts.tol``.

    :param A: ``MN x K`` complex matrix.
    :param d: Length ``MN`` complex vector.
    :param opts: :class:`SolverOptions`, defaults to :meth:`SolverOptions.least_squares`.
    :returns: :class:`LeastSquaresResult` with a conventional solution. The
        ``converged`` flag is False when the budget ran out; the best iterate
        is returned regardless.
    """
    opts = opts or SolverOptions.least_squares()
    A, d = _validate_system(A, d, "solve_unit_modulus_gp")
    mode = ReflectionMode.CONVENTIONAL
    num_elements = A.shape[1]

    if np.linalg.matrix_rank(A) == num_elements:
        start = -np.linalg.lstsq(A, d, rcond=None)[0]
    else:
        start = -(A.conj().T @ d)
    phi = project_coefficients(start, mode)
    f_phi = ls_objective(A, d, phi)
    history = [np.sqrt(f_phi)]

    lipschitz = _lipschitz(A)
    if lipschitz == 0.0:
        return LeastSquaresResult(ReflectionVector(phi, mode), history[0], 0, True, history)

    step = constants.UNIT_MODULUS_STEP_FRACTION / lipschitz
    if opts.step_rule is StepRule.BACKTRACKING:
        step *= 2.0

    converged = False
    iteration = 0
    for iteration in range(1, opts.max_iters + 1):
        candidate, f_candidate, step = _step(A, d, phi, f_phi, step, opts.step_rule, mode)
        change = f_phi - f_candidate
        if f_candidate <= f_phi:
            phi, f_phi = candidate, f_candidate
        history.append(np.sqrt(f_phi))
        if abs(change) <= opts.tol * max(f_phi + change, np.finfo(float).tiny):
            converged = True
            break

    if not converged:
        logger.warning(
            "solve_unit_modulus_gp stopped after %d iterations without converging "
            "(residual %.6g).",
            opts.max_iters,
            np.sqrt(f_phi),
        )
    else:
        logger.debug(
            "solve_unit_modulus_gp: residual %.6g after %d iterations",
            np.sqrt(f_phi),
            iteration,
        )
    return LeastSquaresResult(
        ReflectionVector(phi, mode), float(np.sqrt(f_phi)), iteration, converged, history
    )
