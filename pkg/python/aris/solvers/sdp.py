# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Small complex semidefinite programs over homogenized reflection matrices.

The decision variable is a Hermitian ``(K+1) x (K+1)`` matrix ``X`` with

- ``X`` positive semidefinite,
- ``X[k, k] <= 1`` for ``k < K`` (absorptive) or ``X[k, k] == 1`` (conventional),
- ``X[K, K] == 1``,
- any number of extra linear constraints ``Re tr(A_i X) (>=, <=, ==) b_i``.

The objective ``Re tr(X C) + min_l (Re tr(X B_l) + c_l)`` is maximized, the
second term being present only when epigraph rows are given. Max-min
problems are handled through a free epigraph variable.

The solver is an alternating direction augmented Lagrangian method applied
to the dual of the standard form conic program

.. code-block:: text

    minimize    <c, x>
    subject to  A(x) = b,  x in PSD x R_+^p x R^q

with one eigendecomposition per iteration. Every iterate is repaired to
exact diagonal feasibility by a congruence ``D X D`` and the best repaired
point is kept, so the reported objective history never decreases.
"""

import enum

import numpy as np
import scipy.linalg

from .. import constants
from ..core import ReflectionMode, as_complex_matrix
from ..errors import ArisError, DimensionError, InfeasibleProblemError
from ..log import LogManager
from .options import SolverOptions

logger = LogManager.get_logger(__name__)


class ConstraintSense(enum.Enum):
    """
    Direction of an extra linear constraint.
    """

    GREATER_EQUAL = ">="
    LESS_EQUAL = "<="
    EQUAL = "=="


def as_hermitian(matrix, operation, operand, size=None):
    """
    Validates a square Hermitian matrix and returns its exact Hermitian part.
    """
    matrix = as_complex_matrix(matrix, operation, operand)
    if matrix.shape[0] != matrix.shape[1] or (size is not None and matrix.shape[0] != size):
        expected = "square" if size is None else "(%d, %d)" % (size, size)
        raise DimensionError(operation, operand, expected, matrix.shape)
    scale = max(1.0, float(np.linalg.norm(matrix)))
    if np.linalg.norm(matrix - matrix.conj().T) > 1e-9 * scale:
        raise ArisError("%s: operand '%s' is not Hermitian." % (operation, operand))
    return 0.5 * (matrix + matrix.conj().T)


def inner(A, X):
    """
    Real inner product ``Re tr(A^H X)``, equal to ``Re tr(A X)`` for Hermitian ``A``.
    """
    return float(np.real(np.vdot(A, X)))


class LinearConstraint(object):
    """
    Extra constraint ``Re tr(matrix X) (sense) bound``.
    """

    def __init__(self, matrix, bound, sense=ConstraintSense.LESS_EQUAL):
        self.matrix = as_hermitian(matrix, "LinearConstraint", "matrix")
        self.bound = float(bound)
        self.sense = sense

    def slack(self, X):
        """
        Signed distance to the boundary, non-negative when satisfied.

        Equality constraints return minus the absolute violation.
        """
        value = inner(self.matrix, X)
        if self.sense is ConstraintSense.GREATER_EQUAL:
            return value - self.bound
        if self.sense is ConstraintSense.LESS_EQUAL:
            return self.bound - value
        return -abs(value - self.bound)


class SdpProblem(object):
    """
    Semidefinite program over a homogenized reflection matrix.

    :ivar objective: Hermitian matrix ``C``.
    :ivar constraints: Tuple of :class:`LinearConstraint`.
    :ivar epigraph: Tuple of ``(B_l, c_l)`` pairs of the max-min term.
    :ivar mode: :class:`~aris.core.ReflectionMode` selecting the diagonal constraints.
    :ivar float offset: Constant added to reported objective values.
    """

    def __init__(
        self,
        objective,
        constraints=(),
        epigraph=(),
        mode=ReflectionMode.ABSORPTIVE,
        offset=0.0,
    ):
        self.objective = as_hermitian(objective, "SdpProblem", "objective")
        self.size = self.objective.shape[0]
        if self.size < 2:
            raise DimensionError("SdpProblem", "objective", "at least (2, 2)", self.objective.shape)

        self.constraints = tuple(constraints)
        for constraint in self.constraints:
            if constraint.matrix.shape != self.objective.shape:
                raise DimensionError(
                    "SdpProblem", "constraint", self.objective.shape, constraint.matrix.shape
                )

        self.epigraph = tuple(
            (as_hermitian(matrix, "SdpProblem", "epigraph", self.size), float(const))
            for matrix, const in epigraph
        )
        self.mode = mode
        self.offset = float(offset)

    @property
    def num_elements(self):
        """Number of surface elements ``K``."""
        return self.size - 1

    def value(self, X):
        """
        Objective value at a matrix ``X``.
        """
        value = inner(self.objective, X) + self.offset
        if self.epigraph:
            value += min(inner(matrix, X) + const for matrix, const in self.epigraph)
        return value

    def diagonal_violation(self, X):
        """
        Largest violation of the diagonal constraints at ``X``.
        """
        diagonal = np.real(np.diag(X))
        last = abs(diagonal[-1] - 1.0)
        if self.mode is ReflectionMode.ABSORPTIVE:
            body = np.max(np.maximum(diagonal[:-1] - 1.0, 0.0))
        else:
            body = np.max(np.abs(diagonal[:-1] - 1.0))
        return float(max(last, body))

    def constraints_satisfied(self, X, tol=constants.SDP_FEASIBILITY_TOLERANCE):
        """
        True if every extra linear constraint holds within ``tol`` relative.
        """
        return all(
            c.slack(X) >= -tol * (1.0 + abs(c.bound)) for c in self.constraints
        )

    def repair(self, X):
        """
        Maps a positive semidefinite matrix onto the diagonal constraints.

        Rows and columns whose diagonal exceeds its bound are scaled down,
        rows and columns pinned to one are scaled to it. This is a congruence
        with a positive diagonal matrix, so positive semidefiniteness is kept.

        :returns: Repaired Hermitian matrix.
        """
        X = 0.5 * (X + X.conj().T)
        diagonal = np.real(np.diag(X)).copy()
        tiny = np.finfo(float).tiny ** 0.5

        pinned = np.zeros(self.size, dtype=bool)
        pinned[-1] = True
        if self.mode is ReflectionMode.CONVENTIONAL:
            pinned[:] = True

        scale = np.ones(self.size)
        over = (~pinned) & (diagonal > 1.0)
        scale[over] = 1.0 / np.sqrt(diagonal[over])
        scalable = pinned & (diagonal > tiny)
        scale[scalable] = 1.0 / np.sqrt(diagonal[scalable])

        X = X * np.outer(scale, scale)

        # a pinned entry that collapsed to zero gets a fresh unit diagonal
        dead = pinned & (diagonal <= tiny)
        if np.any(dead):
            X[dead, :] = 0.0
            X[:, dead] = 0.0

        new_diagonal = np.clip(np.real(np.diag(X)), 0.0, 1.0)
        new_diagonal[pinned] = 1.0
        np.fill_diagonal(X, new_diagonal)
        return X


class SdpResult(object):
    """
    Outcome of :func:`solve_sdp`.

    :ivar matrix: Best feasible Hermitian PSD matrix found.
    :ivar float objective: Objective value at ``matrix``.
    :ivar int iterations: Iterations performed.
    :ivar bool converged: True if the residual criteria were met.
    :ivar list history: Best objective after every iteration, non-decreasing.
    :ivar float primal_residual: Relative primal infeasibility at the last iterate.
    :ivar float dual_residual: Relative dual infeasibility at the last iterate.
    """

    def __init__(self, matrix, objective, iterations, converged, history, primal_residual, dual_residual):
        self.matrix = matrix
        self.objective = objective
        self.iterations = iterations
        self.converged = converged
        self.history = history
        self.primal_residual = primal_residual
        self.dual_residual = dual_residual

    def __repr__(self):
        return "<SdpResult objective=%.8g iterations=%d converged=%s>" % (
            self.objective,
            self.iterations,
            self.converged,
        )


class _StandardForm(object):
    """
    Standard form conic program equivalent to an :class:`SdpProblem`.

    The cone is ``PSD(n) x R_+^p x R^q``. Row ``k < n`` of ``A`` reads the
    ``k``-th diagonal entry, further rows are dense. All objective data is
    divided by ``scale`` so the program is well conditioned.
    """

    def __init__(self, problem):
        n = problem.size
        self.n = n

        data_norms = [np.linalg.norm(problem.objective)]
        data_norms += [np.linalg.norm(m) for m, _ in problem.epigraph]
        data_norms += [abs(c) for _, c in problem.epigraph]
        scale = max(data_norms)
        self.scale = scale if scale > 0 else 1.0

        dense = []
        dense_b = []
        slack_rows = []
        free_rows = []

        # diagonal rows: one slack each for the absorptive inequalities
        for k in range(n - 1):
            if problem.mode is ReflectionMode.ABSORPTIVE:
                slack_rows.append((k, 1.0))

        row = n
        for constraint in problem.constraints:
            norm = max(np.linalg.norm(constraint.matrix), 1e-300)
            dense.append(constraint.matrix / norm)
            dense_b.append(constraint.bound / norm)
            if constraint.sense is ConstraintSense.GREATER_EQUAL:
                slack_rows.append((row, -1.0))
            elif constraint.sense is ConstraintSense.LESS_EQUAL:
                slack_rows.append((row, 1.0))
            row += 1

        # B_l . X - t - s_l = -c_l
        for matrix, const in problem.epigraph:
            dense.append(matrix / self.scale)
            dense_b.append(-const / self.scale)
            slack_rows.append((row, -1.0))
            free_rows.append(row)
            row += 1

        self.m = row
        self.p = len(slack_rows)
        self.q = 1 if problem.epigraph else 0

        self.dense = (
            np.array(dense).reshape(len(dense), n * n)
            if dense
            else np.zeros((0, n * n), dtype=np.complex128)
        )
        self.b = np.concatenate([np.ones(n), np.array(dense_b, dtype=np.float64)])

        self.slack = np.zeros((self.m, self.p))
        for column, (r, coeff) in enumerate(slack_rows):
            self.slack[r, column] = coeff
        self.free = np.zeros((self.m, self.q))
        for r in free_rows:
            self.free[r, 0] = -1.0

        self.c_x = -problem.objective / self.scale
        self.c_s = np.zeros(self.p)
        self.c_w = -np.ones(self.q)

    def apply(self, X, s, w):
        out = np.empty(self.m)
        out[: self.n] = np.real(np.diag(X))
        if self.dense.shape[0]:
            out[self.n :] = np.real(self.dense.conj() @ X.reshape(-1))
        return out + self.slack @ s + self.free @ w

    def adjoint(self, y):
        X = np.diag(y[: self.n].astype(np.complex128))
        if self.dense.shape[0]:
            X = X + (y[self.n :] @ self.dense).reshape(self.n, self.n)
        return X, self.slack.T @ y, self.free.T @ y

    def gram(self):
        gram = np.empty((self.m, self.m))
        for i in range(self.m):
            unit = np.zeros(self.m)
            unit[i] = 1.0
            gram[:, i] = self.apply(*self.adjoint(unit))
        return 0.5 * (gram + gram.T)


class _DualAdmm(object):
    """
    Alternating direction iterations on the dual of a :class:`_StandardForm`.
    """

    def __init__(self, form, mu=1.0):
        self.form = form
        self.mu = mu
        self.gram_cho = None

    def precompute(self):
        gram = self.form.gram()
        try:
            self.gram_cho = scipy.linalg.cho_factor(gram)
        except np.linalg.LinAlgError:
            # dependent extra constraints
            ridge = 1e-10 * max(1.0, float(np.trace(gram)) / self.form.m)
            self.gram_cho = scipy.linalg.cho_factor(gram + ridge * np.eye(self.form.m))

    def step(self, x, S):
        """
        One iteration.

        :param x: Primal blocks ``(X, s, w)``.
        :param S: Dual slack blocks ``(S_X, S_s)``.
        :returns: Tuple ``(x, S, y)`` after the update.
        """
        form = self.form
        X, s, w = x
        S_X, S_s = S

        rhs = self.mu * (form.apply(X, s, w) - form.b) + form.apply(
            S_X - form.c_x, S_s - form.c_s, -form.c_w
        )
        y = -scipy.linalg.cho_solve(self.gram_cho, rhs)

        aty_x, aty_s, aty_w = form.adjoint(y)
        V_X = form.c_x - aty_x - self.mu * X
        V_X = 0.5 * (V_X + V_X.conj().T)
        V_s = form.c_s - aty_s - self.mu * s
        V_w = form.c_w - aty_w - self.mu * w

        eigenvalues, eigenvectors = scipy.linalg.eigh(V_X)
        positive = np.maximum(eigenvalues, 0.0)
        negative = np.maximum(-eigenvalues, 0.0)
        S_X = (eigenvectors * positive) @ eigenvectors.conj().T
        X = (eigenvectors * negative) @ eigenvectors.conj().T / self.mu
        S_s = np.maximum(V_s, 0.0)
        s = np.maximum(-V_s, 0.0) / self.mu
        w = -V_w / self.mu

        return (X, s, w), (S_X, S_s), y


def _initial_point(problem, form, initial):
    if initial is None:
        X = np.eye(problem.size, dtype=np.complex128)
    else:
        X = as_hermitian(initial, "solve_sdp", "initial", problem.size)
    # slacks and epigraph variable consistent with X
    residual = form.b - form.apply(X, np.zeros(form.p), np.zeros(form.q))
    if form.q:
        t = np.array([min(inner(m, X) + c for m, c in problem.epigraph) / form.scale])
    else:
        t = np.zeros(0)
    residual = residual - form.free @ t
    s = np.zeros(form.p)
    for column in range(form.p):
        r = int(np.flatnonzero(form.slack[:, column])[0])
        s[column] = max(0.0, residual[r] / form.slack[r, column])
    return X, s, t


def solve_sdp(problem, opts=None, initial=None):
    """
    Maximizes the objective of an :class:`SdpProblem`.

    :param problem: :class:`SdpProblem`
    :param opts: :class:`SolverOptions`, defaults to :meth:`SolverOptions.sdp`.
    :param initial: Optional feasible matrix. It starts the iterations and
        is the incumbent the result has to beat.
    :returns: :class:`SdpResult`. ``converged`` is False if the budget ran
        out first; the best feasible matrix is returned anyway.
    :raises InfeasibleProblemError: If no iterate satisfies the constraints.
    """
    opts = opts or SolverOptions.sdp()
    form = _StandardForm(problem)
    admm = _DualAdmm(form)
    admm.precompute()

    X, s, w = _initial_point(problem, form, initial)
    S = (np.zeros_like(X), np.zeros(form.p))

    best_matrix = None
    best_value = -np.inf

    def consider(candidate):
        repaired = problem.repair(candidate)
        if not problem.constraints_satisfied(repaired):
            return None, -np.inf
        return repaired, problem.value(repaired)

    if initial is not None:
        best_matrix, best_value = consider(X)

    b_norm = 1.0 + float(np.linalg.norm(form.b))
    c_norm = 1.0 + float(
        np.sqrt(np.linalg.norm(form.c_x) ** 2 + np.linalg.norm(form.c_w) ** 2)
    )

    history = []
    converged = False
    primal = dual = np.inf
    iteration = 0
    for iteration in range(1, opts.max_iters + 1):
        X_old, s_old, w_old = X, s, w
        (X, s, w), S, y = admm.step((X, s, w), S)

        primal = float(np.linalg.norm(form.apply(X, s, w) - form.b)) / b_norm
        dual = (
            admm.mu
            * float(
                np.sqrt(
                    np.linalg.norm(X - X_old) ** 2
                    + np.linalg.norm(s - s_old) ** 2
                    + np.linalg.norm(w - w_old) ** 2
                )
            )
            / c_norm
        )
        primal_objective = inner(form.c_x, X) + float(form.c_w @ w)
        dual_objective = float(form.b @ y)
        gap = abs(primal_objective - dual_objective) / (
            1.0 + abs(primal_objective) + abs(dual_objective)
        )

        candidate, value = consider(X)
        if candidate is not None and value > best_value:
            best_matrix, best_value = candidate, value
        history.append(best_value)

        if max(primal, dual, gap) <= opts.tol:
            converged = True
            break

        # balance primal and dual infeasibility
        if iteration % 10 == 0:
            if primal > 5.0 * dual:
                admm.mu = min(admm.mu * 2.0, 1e6)
            elif dual > 5.0 * primal:
                admm.mu = max(admm.mu * 0.5, 1e-6)

    if best_matrix is None:
        raise InfeasibleProblemError(
            "solve_sdp found no feasible point in %d iterations "
            "(primal infeasibility %.3g)." % (iteration, primal)
        )

    if converged:
        logger.debug(
            "solve_sdp: K=%d objective %.8g after %d iterations",
            problem.num_elements,
            best_value,
            iteration,
        )
    else:
        logger.warning(
            "solve_sdp stopped after %d iterations without converging "
            "(primal %.3g, dual %.3g); returning the best feasible iterate.",
            opts.max_iters,
            primal,
            dual,
        )

    return SdpResult(best_matrix, best_value, iteration, converged, history, primal, dual)
