# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

"""
Physical-layer security with an optional friendly jammer.

A single antenna base station talks to Bob while Eve listens. A jammer
transmits noise that reaches Eve directly (``d_j``) and through the surface
(``g_j``, ``h_e``), and leaks into Bob through a residual ``d_jb`` that is
folded into Bob's noise power. The surface maximizes the secrecy rate

.. code-block:: text

    [log2((1 + SINR_b) / (1 + SINR_e))]^+

With ``phibar = [phi; 1]`` and the homogenized forms ``F_b``, ``F_e`` and
``F_j``, the ratio inside the logarithm, scaled by Bob's noise power, is

.. code-block:: text

    (sb se + se tr(X F_b) + sb tr(X F_j) + tr(X F_b X F_j)) / (se + tr(X (F_e + F_j)))

at ``X = phibar phibar^H``. It is maximized over the relaxation by
Dinkelbach iterations. The numerator is not concave in ``X``, so each
Dinkelbach subproblem is solved by sequential convex programming: the
bilinear term is replaced by its tangent at the current iterate, which
bounds it from below since the term is convex.
"""

import numpy as np

from .core import (
    ReflectionMode,
    ReflectionVector,
    as_complex_vector,
    coefficients_of,
    hadamard,
)
from .d2d import HomogenizedQuadratic
from .errors import ArisError, DimensionError
from .log import LogManager
from .solvers import DinkelbachOptions, SdpProblem, solve_sdp
from .solvers import randomize_rank_one

logger = LogManager.get_logger(__name__)


class PlsInstance(object):
    """
    Channels and noise powers of one secrecy scenario.

    :ivar complex d_b: Base station to Bob.
    :ivar complex d_e: Base station to Eve.
    :ivar complex d_j: Jammer to Eve.
    :ivar complex d_jb: Jammer to Bob residual.
    :ivar g: Base station to surface, length ``K``.
    :ivar g_j: Jammer to surface, length ``K``.
    :ivar h_b: Surface to Bob, length ``K``.
    :ivar h_e: Surface to Eve, length ``K``.
    :ivar float noise_b_raw: Bob's receiver noise power before jammer leakage.
    :ivar float noise_e: Eve's receiver noise power.
    :ivar bool jammer_enabled: When False the jammer terms are zero.
    """

    def __init__(
        self,
        d_b,
        d_e,
        g,
        h_b,
        h_e,
        noise_b_raw=1.0,
        noise_e=1.0,
        d_j=0.0,
        g_j=None,
        d_jb=0.0,
        jammer_enabled=True,
    ):
        self.g = as_complex_vector(g, "PlsInstance", "g")
        num_elements = self.g.size
        self.h_b = self._check_length(h_b, "h_b", num_elements)
        self.h_e = self._check_length(h_e, "h_e", num_elements)
        if g_j is None:
            g_j = np.zeros(num_elements, dtype=np.complex128)
        self.g_j = self._check_length(g_j, "g_j", num_elements)

        self.d_b = complex(d_b)
        self.d_e = complex(d_e)
        self.d_j = complex(d_j)
        self.d_jb = complex(d_jb)
        self.noise_b_raw = float(noise_b_raw)
        self.noise_e = float(noise_e)
        self.jammer_enabled = bool(jammer_enabled)

        if not self.jammer_enabled:
            self.d_j = 0j
            self.d_jb = 0j
            self.g_j = np.zeros(num_elements, dtype=np.complex128)

        if not (self.noise_b_raw > 0 and self.noise_e > 0):
            raise ArisError("PlsInstance: noise powers must be positive.")

    @staticmethod
    def _check_length(value, name, length):
        vector = as_complex_vector(value, "PlsInstance", name)
        if vector.size != length:
            raise DimensionError("PlsInstance", name, (length,), vector.shape)
        return vector

    @property
    def num_elements(self):
        """Number of surface elements ``K``."""
        return self.g.size

    @property
    def noise_b(self):
        """Bob's effective noise power, receiver noise plus jammer leakage."""
        return abs(self.d_jb) ** 2 + self.noise_b_raw

    def without_jammer(self):
        """
        The same scenario with the jammer switched off.
        """
        return PlsInstance(
            self.d_b,
            self.d_e,
            self.g,
            self.h_b,
            self.h_e,
            noise_b_raw=self.noise_b_raw,
            noise_e=self.noise_e,
            jammer_enabled=False,
        )


class PlsQuadratics(object):
    """
    Homogenized forms of Bob's signal, Eve's signal and the jammer at Eve.
    """

    def __init__(self, bob, eve, jammer):
        self.bob = bob
        self.eve = eve
        self.jammer = jammer

    @property
    def F_b(self):
        return self.bob.matrix

    @property
    def F_e(self):
        return self.eve.matrix

    @property
    def F_j(self):
        return self.jammer.matrix


class PlsDesign(object):
    """
    Outcome of :func:`maximize_secrecy`.

    :ivar phi: Recovered :class:`~aris.core.ReflectionVector`.
    :ivar float rate: Secrecy rate at ``phi`` in bits per channel use.
    :ivar list lambda_history: Dinkelbach ratio after every outer iteration,
        starting with the initial point. Non-decreasing.
    :ivar list inner_histories: Dinkelbach objective along each sequential
        convex loop, one list per outer iteration.
    :ivar int outer_iterations: Number of ratio updates performed.
    :ivar bool converged: False if the outer budget ran out first.
    :ivar sdr_matrix: Final relaxed matrix.
    :ivar float relaxation_ratio: Best secrecy ratio reached by a relaxed
        matrix, the phase-only reference included for absorptive designs.
    """

    def __init__(
        self,
        phi,
        rate,
        lambda_history,
        inner_histories,
        outer_iterations,
        converged,
        sdr_matrix,
        relaxation_ratio=None,
    ):
        self.phi = phi
        self.rate = rate
        self.lambda_history = lambda_history
        self.inner_histories = inner_histories
        self.outer_iterations = outer_iterations
        self.converged = converged
        self.sdr_matrix = sdr_matrix
        self.relaxation_ratio = relaxation_ratio

    def __iter__(self):
        # allows ``phi, rate = maximize_secrecy(...)``
        return iter((self.phi, self.rate))

    def __repr__(self):
        return "<PlsDesign %s rate=%.6g outer=%d>" % (
            self.phi.mode.value,
            self.rate,
            self.outer_iterations,
        )


def build_pls_quadratics(inst):
    """
    :param inst: :class:`PlsInstance`
    :returns: :class:`PlsQuadratics`
    """
    return PlsQuadratics(
        HomogenizedQuadratic.from_cascade(hadamard(inst.g, inst.h_b), inst.d_b),
        HomogenizedQuadratic.from_cascade(hadamard(inst.g, inst.h_e), inst.d_e),
        HomogenizedQuadratic.from_cascade(hadamard(inst.g_j, inst.h_e), inst.d_j),
    )


def _amplitude(cascade_a, cascade_b, direct, phi):
    return direct + np.sum(cascade_a * coefficients_of(phi) * cascade_b)


def sinr_bob(inst, phi):
    """
    Bob's SINR ``|d_b + g^T diag(phi) h_b|^2 / noise_b``.
    """
    return abs(_amplitude(inst.g, inst.h_b, inst.d_b, phi)) ** 2 / inst.noise_b


def sinr_eve(inst, phi):
    """
    Eve's SINR with the jammer signal counted as interference.
    """
    signal = abs(_amplitude(inst.g, inst.h_e, inst.d_e, phi)) ** 2
    jamming = abs(_amplitude(inst.g_j, inst.h_e, inst.d_j, phi)) ** 2
    return signal / (jamming + inst.noise_e)


def secrecy_ratio(inst, phi):
    """
    ``(1 + SINR_b) / (1 + SINR_e)`` without clamping.
    """
    return (1.0 + sinr_bob(inst, phi)) / (1.0 + sinr_eve(inst, phi))


def secrecy_rate(inst, phi):
    """
    Secrecy rate ``[log2((1 + SINR_b) / (1 + SINR_e))]^+`` in bits per channel use.
    """
    return max(0.0, float(np.log2(secrecy_ratio(inst, phi))))


def _trace(X, F):
    return float(np.real(np.trace(X @ F)))


def _bilinear(X, quads):
    return float(np.real(np.trace(X @ quads.F_b @ X @ quads.F_j)))


def lambda_update(Phi_bar, quads, noise_b, noise_e):
    """
    Closed form Dinkelbach ratio at a relaxed matrix.

    :param Phi_bar: Hermitian ``(K+1) x (K+1)`` matrix.
    :param quads: :class:`PlsQuadratics`
    :param float noise_b: Bob's effective noise power.
    :param float noise_e: Eve's noise power.
    """
    numerator = (
        noise_b * noise_e
        + noise_e * _trace(Phi_bar, quads.F_b)
        + noise_b * _trace(Phi_bar, quads.F_j)
        + _bilinear(Phi_bar, quads)
    )
    denominator = noise_e + _trace(Phi_bar, quads.F_e + quads.F_j)
    return numerator / denominator


def dinkelbach_objective(Phi_bar, quads, lam, noise_b, noise_e):
    """
    Parametric objective, numerator minus ``lam`` times denominator of the ratio.
    """
    numerator = (
        noise_b * noise_e
        + noise_e * _trace(Phi_bar, quads.F_b)
        + noise_b * _trace(Phi_bar, quads.F_j)
        + _bilinear(Phi_bar, quads)
    )
    denominator = noise_e + _trace(Phi_bar, quads.F_e + quads.F_j)
    return numerator - lam * denominator


def bilinear_gradient(Phi_0, quads):
    """
    Gradient ``F_b Phi_0 F_j + F_j Phi_0 F_b`` of ``tr(X F_b X F_j)`` at ``Phi_0``.
    """
    return quads.F_b @ Phi_0 @ quads.F_j + quads.F_j @ Phi_0 @ quads.F_b


def surrogate_objective(Phi_bar, Phi_0, quads, lam, noise_b, noise_e):
    """
    :func:`dinkelbach_objective` with the bilinear term replaced by its tangent at ``Phi_0``.
    """
    tangent = _bilinear(Phi_0, quads) + _trace(
        Phi_bar - Phi_0, bilinear_gradient(Phi_0, quads)
    )
    linear = (
        noise_b * noise_e
        + noise_e * _trace(Phi_bar, quads.F_b)
        + noise_b * _trace(Phi_bar, quads.F_j)
    )
    denominator = noise_e + _trace(Phi_bar, quads.F_e + quads.F_j)
    return linear + tangent - lam * denominator


def _initial_vector(num_elements, mode):
    if mode is ReflectionMode.ABSORPTIVE:
        return ReflectionVector.zeros(num_elements)
    return ReflectionVector.ones(num_elements, mode)


def _convex_loop(X, quads, lam, inst, mode, opts):
    """
    Sequential convex maximization of the parametric objective from ``X``.

    :returns: Tuple ``(X, objective history)``.
    """
    noise_b, noise_e = inst.noise_b, inst.noise_e
    gamma = dinkelbach_objective(X, quads, lam, noise_b, noise_e)
    history = [gamma]
    for _ in range(opts.inner_max_iters):
        objective = (
            noise_e * quads.F_b
            + noise_b * quads.F_j
            + bilinear_gradient(X, quads)
            - lam * (quads.F_e + quads.F_j)
        )
        result = solve_sdp(SdpProblem(objective, mode=mode), opts.sdp, initial=X)
        gamma_next = dinkelbach_objective(result.matrix, quads, lam, noise_b, noise_e)
        if gamma_next <= gamma:
            break
        X = result.matrix
        history.append(gamma_next)
        step = gamma_next - gamma
        gamma = gamma_next
        if step <= opts.inner_tol * max(1.0, abs(gamma)):
            break
    return X, history


@LogManager.log_timing
def maximize_secrecy(inst, mode=ReflectionMode.ABSORPTIVE, opts=None, reference=None):
    """
    Maximizes the secrecy rate over the relaxation and recovers a reflection vector.

    An absorptive design keeps the conventional point of the same instance
    when that one has the better secrecy ratio.

    :param inst: :class:`PlsInstance`
    :param mode: :class:`~aris.core.ReflectionMode`
    :param opts: :class:`~aris.solvers.DinkelbachOptions`
    :param reference: Conventional :class:`PlsDesign` of ``inst``, used in
        absorptive mode only. Computed with ``opts`` when omitted.
    :returns: :class:`PlsDesign`
    """
    opts = opts or DinkelbachOptions()
    quads = build_pls_quadratics(inst)
    noise_b, noise_e = inst.noise_b, inst.noise_e

    start = _initial_vector(inst.num_elements, mode).augmented()
    X = np.outer(start, start.conj())
    lam = lambda_update(X, quads, noise_b, noise_e)
    history = [lam]
    inner_histories = []

    converged = False
    outer = 0
    for outer in range(1, opts.max_iters + 1):
        candidate, inner_history = _convex_loop(X, quads, lam, inst, mode, opts)
        inner_histories.append(inner_history)
        lam_next = lambda_update(candidate, quads, noise_b, noise_e)

        if lam_next < lam:
            logger.debug(
                "maximize_secrecy: ratio %.12g fell below %.12g, keeping the incumbent",
                lam_next,
                lam,
            )
            converged = True
            break

        X = candidate
        history.append(lam_next)
        step = lam_next - lam
        lam = lam_next
        logger.debug("maximize_secrecy: outer iteration %d, lambda %.10g", outer, lam)
        if step <= opts.tol * max(1.0, abs(lam)):
            converged = True
            break

    if not converged:
        logger.warning(
            "maximize_secrecy: Dinkelbach loop hit its budget of %d iterations.", opts.max_iters
        )

    phi, _ = randomize_rank_one(
        X,
        lambda candidate: secrecy_ratio(inst, candidate),
        mode,
        opts.randomization_trials,
        opts.seed,
    )

    relaxation_ratio = lam / noise_b
    if mode is ReflectionMode.ABSORPTIVE:
        if reference is None:
            reference = maximize_secrecy(inst, ReflectionMode.CONVENTIONAL, opts)
        ours, theirs = secrecy_ratio(inst, phi), secrecy_ratio(inst, reference.phi)
        if theirs > ours:
            logger.debug("maximize_secrecy: phase-only ratio %.12g beats %.12g", theirs, ours)
            phi = reference.phi.as_mode(ReflectionMode.ABSORPTIVE)
        # the phase-only relaxed matrices are feasible here too
        if reference.relaxation_ratio is not None:
            relaxation_ratio = max(relaxation_ratio, reference.relaxation_ratio)

    rate = secrecy_rate(inst, phi)
    return PlsDesign(
        phi, rate, history, inner_histories, len(history) - 1, converged, X, relaxation_ratio
    )
