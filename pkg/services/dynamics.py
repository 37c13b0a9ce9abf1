"""
Dynamics services: precession, kicks and Markovian decoherence acting on a
density matrix together with its derivative with respect to omega.

All maps other than the precession are omega-independent, so they act on
d rho / d omega exactly as on rho. Matrices are vectorized row-major,
vec(A X B) = (A kron B^T) vec(X).
"""
import logging
from functools import lru_cache
from typing import Optional
import numpy as np
from scipy import linalg
from core.exceptions import PropagationError
from models.spin import SpinOperators
from models.state import StateWithDerivative
from schemas.dynamics import DecoherenceKind, DynamicsParams
from schemas.spin import SpinQuantum
from services.spin_algebra import build_operators

logger: logging.Logger = logging.getLogger(__name__)

TRACE_TOLERANCE: float = 1e-10


def _m_difference(spin: SpinQuantum) -> np.ndarray:
    m: np.ndarray = spin.m_values
    return m[:, None] - m[None, :]


def superradiant_generator(j: SpinQuantum, gamma: float) -> np.ndarray:
    """
    Superoperator of gamma (2 J- rho J+ - J+ J- rho - rho J+ J-)
    :param j: spin size
    :type j: SpinQuantum
    :param gamma: superradiant rate
    :type gamma: float
    :return: dim^2 x dim^2 generator acting on row-major vec(rho)
    :rtype: np.ndarray
    """
    ops: SpinOperators = build_operators(j)
    identity: np.ndarray = np.eye(ops.dim)
    lowering: np.ndarray = ops.jplus @ ops.jminus
    return gamma * (2 * np.kron(ops.jminus, ops.jplus.T)
                    - np.kron(lowering, identity)
                    - np.kron(identity, lowering.T))


def phase_damping_generator(j: SpinQuantum, gamma: float) -> np.ndarray:
    """
    Superoperator of gamma (2 Jz rho Jz - Jz^2 rho - rho Jz^2)
    :param j: spin size
    :type j: SpinQuantum
    :param gamma: phase damping rate
    :type gamma: float
    :return: dim^2 x dim^2 generator acting on row-major vec(rho)
    :rtype: np.ndarray
    """
    ops: SpinOperators = build_operators(j)
    identity: np.ndarray = np.eye(ops.dim)
    square: np.ndarray = ops.jz @ ops.jz
    return gamma * (2 * np.kron(ops.jz, ops.jz.T)
                    - np.kron(square, identity) - np.kron(identity, square.T))


def band_indices(j: SpinQuantum) -> dict[int, np.ndarray]:
    """
    Row-major vec indices of the matrix elements with fixed m - m'
    :param j: spin size
    :type j: SpinQuantum
    :return: index array per integer band offset m - m'
    :rtype: dict[int, np.ndarray]
    """
    offsets: np.ndarray = np.rint(_m_difference(j)).astype(int).reshape(-1)
    return {int(d): np.flatnonzero(offsets == d) for d in np.unique(offsets)}


def generator_exponential(generator: np.ndarray, dt: float) -> np.ndarray:
    """
    Dense exp(generator * dt) by scaling and squaring
    :param generator: superoperator
    :type generator: np.ndarray
    :param dt: time step
    :type dt: float
    :return: propagator
    :rtype: np.ndarray
    """
    propagator: np.ndarray = linalg.expm(generator * dt)
    if not np.all(np.isfinite(propagator)):
        raise PropagationError("superoperator exponential did not converge")
    return propagator


def band_exponential(j: SpinQuantum, generator: np.ndarray, dt: float
                     ) -> np.ndarray:
    """
    exp(generator * dt) assembled from dense exponentials of the m - m'
     bands, for generators that do not couple different bands
    :param j: spin size
    :type j: SpinQuantum
    :param generator: band-preserving superoperator
    :type generator: np.ndarray
    :param dt: time step
    :type dt: float
    :return: propagator
    :rtype: np.ndarray
    """
    propagator: np.ndarray = np.zeros_like(generator, dtype=complex)
    for indices in band_indices(j).values():
        block: np.ndarray = generator[np.ix_(indices, indices)]
        propagator[np.ix_(indices, indices)] = generator_exponential(
            block, dt)
    return propagator


@lru_cache(maxsize=None)
def _kick_eigensystem(spin: SpinQuantum) -> tuple[np.ndarray, np.ndarray]:
    ops: SpinOperators = build_operators(spin)
    generator: np.ndarray = ops.jy @ ops.jy / spin.dim
    return linalg.eigh(0.5 * (generator + generator.conj().T))


@lru_cache(maxsize=4096)
def kick_unitary(spin: SpinQuantum, k: float) -> np.ndarray:
    """
    Kick K = exp(-i k Jy^2 / (2j+1))
    :param spin: spin size
    :type spin: SpinQuantum
    :param k: kick strength
    :type k: float
    :return: unitary matrix
    :rtype: np.ndarray
    """
    eigenvalues, eigenvectors = _kick_eigensystem(spin)
    unitary: np.ndarray = (eigenvectors * np.exp(-1j * k * eigenvalues)) \
        @ eigenvectors.conj().T
    unitary.setflags(write=False)
    return unitary


class PropagatorSet:
    """
    Cached linear maps for one spin size, dynamics and time step.
    """

    def __init__(self, spin: SpinQuantum, params: DynamicsParams,
                 dt: float) -> None:
        if dt < 0:
            raise ValueError(f"time step must be non-negative, got {dt}")
        self.spin: SpinQuantum = spin
        self.params: DynamicsParams = params
        self.dt: float = dt
        m: np.ndarray = spin.m_values
        self.m_difference: np.ndarray = _m_difference(spin)
        self.precession_unitary: np.ndarray = np.diag(
            np.exp(-1j * params.omega * dt * m))
        # U rho U^dagger is elementwise for the diagonal U
        self.precession_phases: np.ndarray = np.exp(
            -1j * params.omega * dt * self.m_difference)
        ops: SpinOperators = build_operators(spin)
        self.kick_generator: np.ndarray = ops.jy @ ops.jy / spin.dim
        self.phase_damping_factors: Optional[np.ndarray] = None
        self.decoherence_map: Optional[np.ndarray] = None
        if params.decoherence_kind == DecoherenceKind.PHASE_DAMPING:
            self.phase_damping_factors = np.exp(
                -params.gamma_pd * dt * self.m_difference ** 2)
        elif params.decoherence_kind == DecoherenceKind.SUPERRADIANT \
                and params.gamma_sr > 0:
            self.decoherence_map = band_exponential(
                spin, superradiant_generator(spin, params.gamma_sr), dt)
        logger.debug("built propagators for j=%s dt=%s %s", spin.j, dt,
                     params.decoherence_kind.value)

    def precess(self, state: StateWithDerivative) -> StateWithDerivative:
        """
        rho -> U rho U^dagger with U = exp(-i omega dt Jz) and the chain
         rule term -i dt [Jz, U rho U^dagger] on the derivative
        :param state: state with derivative
        :type state: StateWithDerivative
        :return: precessed state
        :rtype: StateWithDerivative
        """
        rho: np.ndarray = state.rho * self.precession_phases
        drho: np.ndarray = state.drho * self.precession_phases \
            - 1j * self.dt * self.m_difference * rho
        return StateWithDerivative(rho=rho, drho=drho)

    def decohere(self, state: StateWithDerivative) -> StateWithDerivative:
        """
        Apply the decoherence propagator exp(Lambda dt)
        :param state: state with derivative
        :type state: StateWithDerivative
        :return: decohered state
        :rtype: StateWithDerivative
        """
        if self.phase_damping_factors is not None:
            return StateWithDerivative(
                rho=state.rho * self.phase_damping_factors,
                drho=state.drho * self.phase_damping_factors)
        if self.decoherence_map is None:
            return state
        dim: int = self.spin.dim
        rho: np.ndarray = (self.decoherence_map @ state.rho.reshape(-1)
                           ).reshape(dim, dim)
        drho: np.ndarray = (self.decoherence_map @ state.drho.reshape(-1)
                            ).reshape(dim, dim)
        if not np.all(np.isfinite(rho)):
            raise PropagationError("superradiant propagation is not finite")
        # the map preserves the trace of its input, which need not be 1
        drift: float = float(abs(np.trace(rho) - np.trace(state.rho)))
        if drift > TRACE_TOLERANCE:
            raise PropagationError(
                "superradiant propagation changed the input trace by "
                f"{drift:.3e} (tolerance {TRACE_TOLERANCE:.0e})")
        return StateWithDerivative(rho=rho, drho=drho)

    def evolve(self, state: StateWithDerivative, k_end: float = 0.0
               ) -> StateWithDerivative:
        """
        Decoherence, then precession over dt, then the kick k_end
        :param state: state at the start of the interval
        :type state: StateWithDerivative
        :param k_end: kick strength at the end of the interval
        :type k_end: float
        :return: state at the end of the interval
        :rtype: StateWithDerivative
        """
        evolved: StateWithDerivative = self.precess(self.decohere(state))
        if k_end:
            evolved = kick(evolved, k_end, self.spin)
        return evolved.hermitized()


@lru_cache(maxsize=256)
def get_propagators(spin: SpinQuantum, params: DynamicsParams, dt: float
                    ) -> PropagatorSet:
    """
    Memoized PropagatorSet keyed by (spin, params, dt)
    :param spin: spin size
    :type spin: SpinQuantum
    :param params: dynamics
    :type params: DynamicsParams
    :param dt: time step
    :type dt: float
    :return: shared propagator set
    :rtype: PropagatorSet
    """
    return PropagatorSet(spin, params, dt)


def _spin_of(state: StateWithDerivative) -> SpinQuantum:
    return SpinQuantum.from_dim(state.dim)


def precess(state: StateWithDerivative, dt: float, params: DynamicsParams
            ) -> StateWithDerivative:
    """
    Precession about z for a time dt
    :param state: state with derivative
    :type state: StateWithDerivative
    :param dt: duration
    :type dt: float
    :param params: dynamics with the frequency omega
    :type params: DynamicsParams
    :return: precessed state
    :rtype: StateWithDerivative
    """
    return get_propagators(_spin_of(state), DynamicsParams.closed(
        params.omega), dt).precess(state)


def kick(state: StateWithDerivative, k: float, j: SpinQuantum | None = None
         ) -> StateWithDerivative:
    """
    Nonlinear kick exp(-i k Jy^2/(2j+1)); omega-independent
    :param state: state with derivative
    :type state: StateWithDerivative
    :param k: kick strength
    :type k: float
    :param j: spin size, inferred from the state when omitted
    :type j: SpinQuantum
    :return: kicked state
    :rtype: StateWithDerivative
    """
    if k < 0:
        raise ValueError(f"kick strength must be non-negative, got {k}")
    if k == 0:
        return state
    unitary: np.ndarray = kick_unitary(j or _spin_of(state), float(k))
    adjoint: np.ndarray = unitary.conj().T
    return StateWithDerivative(rho=unitary @ state.rho @ adjoint,
                               drho=unitary @ state.drho @ adjoint)


def decohere_phase_damping(state: StateWithDerivative, dt: float,
                           gamma: float) -> StateWithDerivative:
    """
    Multiply rho_{m,m'} and its derivative by exp(-gamma dt (m-m')^2)
    :param state: state with derivative
    :type state: StateWithDerivative
    :param dt: duration
    :type dt: float
    :param gamma: phase damping rate
    :type gamma: float
    :return: dephased state
    :rtype: StateWithDerivative
    """
    if gamma < 0 or dt < 0:
        raise ValueError("rate and duration must be non-negative")
    if gamma == 0 or dt == 0:
        return state
    return get_propagators(_spin_of(state),
                           DynamicsParams.phase_damping(gamma),
                           dt).decohere(state)


def decohere_superradiant(state: StateWithDerivative, dt: float,
                          gamma: float) -> StateWithDerivative:
    """
    Apply exp(Lambda dt) of the superradiant master equation
    :param state: state with derivative
    :type state: StateWithDerivative
    :param dt: duration
    :type dt: float
    :param gamma: superradiant rate
    :type gamma: float
    :return: damped state
    :rtype: StateWithDerivative
    """
    if gamma < 0 or dt < 0:
        raise ValueError("rate and duration must be non-negative")
    if gamma == 0 or dt == 0:
        return state
    return get_propagators(_spin_of(state),
                           DynamicsParams.superradiant(gamma),
                           dt).decohere(state)


def evolve_interval(state: StateWithDerivative, dt: float, k_end: float,
                    params: DynamicsParams) -> StateWithDerivative:
    """
    One interval of the generalized kicked top: decoherence and precession
     for dt, then the kick k_end
    :param state: state at the start of the interval
    :type state: StateWithDerivative
    :param dt: interval length
    :type dt: float
    :param k_end: kick at the end of the interval
    :type k_end: float
    :param params: dynamics
    :type params: DynamicsParams
    :return: state at the end of the interval
    :rtype: StateWithDerivative
    """
    return get_propagators(_spin_of(state), params, dt).evolve(state, k_end)
