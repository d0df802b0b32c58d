# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Device-to-device interference mitigation.

``L`` transmitter/receiver pairs share the band. Link ``l`` sees the desired
signal through ``D[l, l]`` plus the surface, and interference from every
other transmitter ``m`` through ``D[l, m]`` plus the surface. The surface is
designed to maximize the worst link SINR.

Every received amplitude ``H[l, :] diag(phi) G[:, m] + D[l, m]`` is written
as a homogenized quadratic form ``phibar^H F phibar`` with
``phibar = [phi; 1]``. Relaxing ``phibar phibar^H`` to a positive
semidefinite matrix turns each Dinkelbach subproblem into a semidefinite
program. A rank-one reflection vector is recovered by Gaussian randomization.
"""

import numpy as np

from .core import (
    ReflectionMode,
    ReflectionVector,
    as_complex_matrix,
    coefficients_of,
    make_diag_channel,
)
from .errors import ArisError, DimensionError, LinkIndexError
from .log import LogManager
from .solvers import DinkelbachOptions, SdpProblem, solve_sdp
from .solvers import randomize_rank_one as _randomize

logger = LogManager.get_logger(__name__)


class HomogenizedQuadratic(object):
    """
    Rank-one Hermitian form ``F = u u^H`` with ``u = [h; conj(d)]``.

    ``phibar^H F phibar`` equals ``|conj(h)^T phi + d|^2`` for every ``phi``.

    :ivar vector: The generating vector ``u``.
    :ivar matrix: The ``(K+1) x (K+1)`` matrix ``F``.
    """

    def __init__(self, vector):
        self.vector = np.asarray(vector, dtype=np.complex128)
        self.matrix = np.outer(self.vector, self.vector.conj())

    @classmethod
    def from_cascade(cls, cascade, direct):
        """
        :param cascade: Length ``K`` vector of per-element cascade gains, the
            coefficient of ``phi_k`` in the received amplitude.
        :param complex direct: Direct path gain.
        """
        cascade = np.asarray(cascade, dtype=np.complex128)
        return cls(np.append(cascade.conj(), np.conj(direct)))

    @classmethod
    def zero(cls, num_elements):
        """Form of a link that doesn't exist."""
        return cls(np.zeros(num_elements + 1, dtype=np.complex128))

    def evaluate(self, phi):
        """
        ``phibar^H F phibar`` at a reflection vector.
        """
        amplitude = np.vdot(self.vector, np.append(coefficients_of(phi), 1.0))
        return float(abs(amplitude) ** 2)

    def trace(self, X):
        """
        ``Re tr(X F)``, equal to ``u^H X u``.
        """
        return float(np.real(np.vdot(self.vector, X @ self.vector)))


class D2DInstance(object):
    """
    Channels and powers of one device-to-device scenario.

    :ivar direct: ``L x L`` transmitter to receiver channel, desired links on the diagonal.
    :ivar incident: ``K x L`` transmitter to surface channel.
    :ivar reflected: ``L x K`` surface to receiver channel.
    :ivar powers: Length ``L`` transmit amplitudes ``p``; powers ``p^2`` enter the SINR.
    :ivar float noise_var: Receiver noise power.
    """

    def __init__(self, direct, incident, reflected, powers, noise_var):
        self.direct = as_complex_matrix(direct, "D2DInstance", "Dt")
        self.incident = as_complex_matrix(incident, "D2DInstance", "Gt")
        self.reflected = as_complex_matrix(reflected, "D2DInstance", "Ht")
        self.powers = np.asarray(powers, dtype=np.float64).reshape(-1)
        self.noise_var = float(noise_var)

        links = self.direct.shape[0]
        if self.direct.shape != (links, links):
            raise DimensionError("D2DInstance", "Dt", "(L, L)", self.direct.shape)
        if self.incident.shape[1] != links:
            raise DimensionError("D2DInstance", "Gt", "(K, %d)" % links, self.incident.shape)
        if self.reflected.shape != (links, self.incident.shape[0]):
            raise DimensionError(
                "D2DInstance", "Ht", (links, self.incident.shape[0]), self.reflected.shape
            )
        if self.powers.shape != (links,):
            raise DimensionError("D2DInstance", "p", (links,), self.powers.shape)
        if np.any(self.powers <= 0):
            raise ArisError("D2DInstance: transmit powers must be positive.")
        if not self.noise_var > 0:
            raise ArisError("D2DInstance: noise variance must be positive.")

    @property
    def num_links(self):
        """Number of links ``L``."""
        return self.direct.shape[0]

    @property
    def num_elements(self):
        """Number of surface elements ``K``."""
        return self.incident.shape[0]

    def check_link(self, link):
        """
        :raises LinkIndexError: If ``link`` is not in ``[0, L)``.
        """
        if not 0 <= link < self.num_links:
            raise LinkIndexError(
                "Link index %r out of range for %d links." % (link, self.num_links)
            )


class D2DDesign(object):
    """
    Outcome of :func:`maxmin_design`.

    :ivar phi: Recovered :class:`~aris.core.ReflectionVector`.
    :ivar float worst_sinr: Minimum link SINR at ``phi``, linear.
    :ivar float relaxation_bound: Upper bound on the worst SINR of the relaxation.
    :ivar list lambda_history: Dinkelbach ratio after every outer iteration,
        starting with the initial point. Non-decreasing.
    :ivar sdr_matrix: Final relaxed matrix.
    :ivar int iterations: Outer iterations performed.
    :ivar bool converged: False if the outer budget ran out first.
    """

    def __init__(
        self, phi, worst_sinr, relaxation_bound, lambda_history, sdr_matrix, iterations, converged
    ):
        self.phi = phi
        self.worst_sinr = worst_sinr
        self.relaxation_bound = relaxation_bound
        self.lambda_history = lambda_history
        self.sdr_matrix = sdr_matrix
        self.iterations = iterations
        self.converged = converged

    def __iter__(self):
        # allows ``phi, worst_sinr = maxmin_design(...)``
        return iter((self.phi, self.worst_sinr))

    def __repr__(self):
        return "<D2DDesign %s worst SINR=%.6g bound=%.6g>" % (
            self.phi.mode.value,
            self.worst_sinr,
            self.relaxation_bound,
        )


def build_F(inst, link, interferer):
    """
    Homogenized form of the amplitude from transmitter ``interferer`` at receiver ``link``.

    :param inst: :class:`D2DInstance`
    :param int link: Receiver index in ``[0, L)``.
    :param int interferer: Transmitter index in ``[0, L)``.
    :returns: :class:`HomogenizedQuadratic`
    :raises LinkIndexError: If an index is out of range.
    """
    inst.check_link(link)
    inst.check_link(interferer)
    cascade = inst.reflected[link, :] * inst.incident[:, interferer]
    return HomogenizedQuadratic.from_cascade(cascade, inst.direct[link, interferer])


def _generators(inst):
    # u vectors of every (link, interferer) pair, shape (L, L, K+1)
    cascade = inst.reflected[:, np.newaxis, :] * inst.incident.T[np.newaxis, :, :]
    return np.concatenate([cascade.conj(), inst.direct.conj()[:, :, np.newaxis]], axis=2)


def effective_channel(inst, phi):
    """
    ``D + H diag(phi) G``, the ``L x L`` channel between all pairs.
    """
    return inst.direct + make_diag_channel(phi, inst.reflected, inst.incident)


def _sinr_from_gains(inst, gains):
    # gains[l, m] = |channel[l, m]|^2
    received = gains * (inst.powers**2)[np.newaxis, :]
    signal = np.diag(received)
    interference = received.sum(axis=1) - signal
    return signal / (interference + inst.noise_var)


def sinr(inst, phi, link):
    """
    SINR of one link.

    :param inst: :class:`D2DInstance`
    :param phi: :class:`~aris.core.ReflectionVector`
    :param int link: Receiver index in ``[0, L)``.
    :returns: Linear SINR.
    """
    inst.check_link(link)
    return float(all_sinrs(inst, phi)[link])


def all_sinrs(inst, phi):
    """
    SINR of every link, as an array of length ``L``.
    """
    return _sinr_from_gains(inst, np.abs(effective_channel(inst, phi)) ** 2)


def worst_sinr(inst, phi):
    """
    Minimum link SINR.
    """
    return float(np.min(all_sinrs(inst, phi)))


def offdiagonal_ratio(inst, phi):
    """
    Largest cross-link channel modulus over the smallest desired link modulus.

    Zero means the surface fully diagonalized the channel.
    """
    channel = np.abs(effective_channel(inst, phi))
    diagonal = np.diag(channel)
    off = channel[~np.eye(inst.num_links, dtype=bool)]
    if off.size == 0:
        return 0.0
    smallest = float(np.min(diagonal))
    if smallest == 0.0:
        return np.inf
    return float(np.max(off)) / smallest


def _relaxed_sinrs(inst, generators, X):
    # u^H X u for every pair
    gains = np.real(np.einsum("lmi,ij,lmj->lm", generators.conj(), X, generators))
    return _sinr_from_gains(inst, np.maximum(gains, 0.0))


def randomize_rank_one(phi_hat, inst, trials, seed, mode=ReflectionMode.ABSORPTIVE):
    """
    Gaussian randomization selecting the candidate with the best worst-link SINR.

    :param phi_hat: Relaxed ``(K+1) x (K+1)`` matrix.
    :param inst: :class:`D2DInstance`
    :param int trials: Number of Gaussian draws.
    :param seed: Integer seed or ``numpy.random.Generator``.
    :param mode: :class:`~aris.core.ReflectionMode` of the output.
    :returns: :class:`~aris.core.ReflectionVector`
    """
    phi, _ = _randomize(phi_hat, lambda candidate: worst_sinr(inst, candidate), mode, trials, seed)
    return phi


def _initial_vector(num_elements, mode):
    if mode is ReflectionMode.ABSORPTIVE:
        return ReflectionVector.zeros(num_elements)
    return ReflectionVector.ones(num_elements, mode)


@LogManager.log_timing
def maxmin_design(inst, mode=ReflectionMode.ABSORPTIVE, opts=None, reference=None):
    """
    Maximizes the worst link SINR by Dinkelbach iterations over the relaxation.

    Each outer iteration solves

    .. code-block:: text

        max_X min_l  p_l^2 tr(X F_ll) - lambda (sum_{m != l} p_m^2 tr(X F_lm) + noise)

    and updates ``lambda`` to the smallest SINR ratio at the new ``X``. The
    subproblem is warm started from the previous ``X``, whose value is at
    least zero, so ``lambda`` never decreases.

    An absorptive design keeps the conventional point of the same instance
    when that one has the better worst SINR.

    :param inst: :class:`D2DInstance`
    :param mode: :class:`~aris.core.ReflectionMode`
    :param opts: :class:`~aris.solvers.DinkelbachOptions`
    :param reference: Conventional :class:`D2DDesign` of ``inst``, used in
        absorptive mode only. Computed with ``opts`` when omitted.
    :returns: :class:`D2DDesign`
    """
    opts = opts or DinkelbachOptions()
    generators = _generators(inst)
    matrices = np.einsum("lmi,lmj->lmij", generators, generators.conj())
    power = inst.powers**2
    links = inst.num_links

    start = _initial_vector(inst.num_elements, mode).augmented()
    X = np.outer(start, start.conj())
    lam = float(np.min(_relaxed_sinrs(inst, generators, X)))
    history = [lam]

    lam_used = lam
    subproblem_value = 0.0
    converged = False
    iteration = 0
    for iteration in range(1, opts.max_iters + 1):
        epigraph = []
        for l in range(links):
            interference = np.tensordot(power, matrices[l], axes=(0, 0)) - power[l] * matrices[l, l]
            epigraph.append(
                (power[l] * matrices[l, l] - lam * interference, -lam * inst.noise_var)
            )
        problem = SdpProblem(np.zeros_like(X), epigraph=epigraph, mode=mode)
        result = solve_sdp(problem, opts.sdp, initial=X)

        candidate = result.matrix
        lam_next = float(np.min(_relaxed_sinrs(inst, generators, candidate)))
        lam_used = lam
        subproblem_value = result.objective

        if lam_next < lam:
            # the incumbent is always admissible, so this is rounding only
            logger.debug(
                "maxmin_design: ratio %.12g fell below %.12g, keeping the incumbent",
                lam_next,
                lam,
            )
            converged = True
            break

        X = candidate
        history.append(lam_next)
        step = lam_next - lam
        lam = lam_next
        logger.debug("maxmin_design: iteration %d, lambda %.10g", iteration, lam)
        if step <= opts.tol * max(1.0, abs(lam)):
            converged = True
            break

    if not converged:
        logger.warning(
            "maxmin_design: Dinkelbach loop hit its budget of %d iterations.", opts.max_iters
        )

    relaxation_bound = max(lam, lam_used + max(subproblem_value, 0.0) / inst.noise_var)

    phi = randomize_rank_one(X, inst, opts.randomization_trials, opts.seed, mode)
    value = worst_sinr(inst, phi)

    if mode is ReflectionMode.ABSORPTIVE:
        if reference is None:
            reference = maxmin_design(inst, ReflectionMode.CONVENTIONAL, opts)
        if reference.worst_sinr > value:
            logger.debug(
                "maxmin_design: phase-only worst SINR %.12g beats %.12g",
                reference.worst_sinr,
                value,
            )
            phi = reference.phi.as_mode(ReflectionMode.ABSORPTIVE)
            value = reference.worst_sinr

    # every recovered point is feasible for the relaxation
    relaxation_bound = max(relaxation_bound, value)
    return D2DDesign(phi, value, relaxation_bound, history, X, iteration, converged)
