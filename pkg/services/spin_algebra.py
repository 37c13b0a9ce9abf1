"""
Spin algebra services: angular momentum operators, spin coherent states
and density matrix primitives.
"""
import logging
import math
from functools import lru_cache
from typing import Union
import numpy as np
from scipy import linalg
from core.config import get_setting
from core.exceptions import NonHermitianError
from models.spin import SpinOperators
from schemas.spin import CoherentStateParams, SpinQuantum

logger: logging.Logger = logging.getLogger(__name__)

SpinLike = Union[SpinQuantum, float, int]


@lru_cache(maxsize=None)
def _operators(spin: SpinQuantum) -> SpinOperators:
    m: np.ndarray = spin.m_values
    j: float = spin.j
    # <j, m+1| J+ |j, m> on the first subdiagonal
    ladder: np.ndarray = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] + 1))
    jplus: np.ndarray = np.diag(ladder, k=-1).astype(complex)
    jminus: np.ndarray = jplus.conj().T.copy()
    return SpinOperators(
        spin=spin, jx=(jplus + jminus) / 2, jy=(jplus - jminus) / 2j,
        jz=np.diag(m).astype(complex), jplus=jplus, jminus=jminus)


def build_operators(j: SpinLike) -> SpinOperators:
    """
    Angular momentum operators of a spin j, basis ordered m = -j..j
    :param j: spin size
    :type j: SpinLike
    :return: Jx, Jy, Jz, J+ and J-
    :rtype: SpinOperators
    """
    return _operators(SpinQuantum.coerce(j))


def coherent_ket(j: SpinLike, p: CoherentStateParams) -> np.ndarray:
    """
    State vector of the spin coherent state |j, theta, phi>
    :param j: spin size
    :type j: SpinLike
    :param p: direction of the coherent state
    :type p: CoherentStateParams
    :return: normalized amplitudes c_m, m ascending
    :rtype: np.ndarray
    """
    spin: SpinQuantum = SpinQuantum.coerce(j)
    return coherent_kets(spin, np.array([p.theta]), np.array([p.phi]))[0]


def coherent_kets(spin: SpinQuantum, theta: np.ndarray, phi: np.ndarray
                  ) -> np.ndarray:
    """
    Coherent state vectors for arrays of directions, one row each
    :param spin: spin size
    :type spin: SpinQuantum
    :param theta: polar angles
    :type theta: np.ndarray
    :param phi: azimuthal angles
    :type phi: np.ndarray
    :return: matrix of amplitudes, shape (len(theta), dim)
    :rtype: np.ndarray
    """
    theta = np.asarray(theta, dtype=float).reshape(-1, 1)
    phi = np.asarray(phi, dtype=float).reshape(-1, 1)
    down: np.ndarray = np.arange(spin.dim)[::-1].astype(float)
    up: np.ndarray = spin.twice_j - down
    binomial: np.ndarray = np.sqrt(
        [math.comb(spin.twice_j, int(k)) for k in down])
    return binomial * np.sin(theta / 2) ** down * np.cos(theta / 2) ** up \
        * np.exp(1j * down * phi)


def coherent_state(j: SpinLike, p: CoherentStateParams) -> np.ndarray:
    """
    Density matrix of the spin coherent state |j, theta, phi>
    :param j: spin size
    :type j: SpinLike
    :param p: direction of the coherent state
    :type p: CoherentStateParams
    :return: pure density matrix
    :rtype: np.ndarray
    """
    ket: np.ndarray = coherent_ket(j, p)
    return np.outer(ket, ket.conj())


def maximally_mixed(j: SpinLike) -> np.ndarray:
    """
    Identity / dim
    """
    dim: int = SpinQuantum.coerce(j).dim
    return np.eye(dim, dtype=complex) / dim


def hermiticity_error(matrix: np.ndarray) -> float:
    """
    Frobenius norm of the anti-Hermitian part
    """
    return float(np.linalg.norm(matrix - matrix.conj().T))


def hermitian_eigensystem(
        rho: np.ndarray, tolerance: float = 1e-10
) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
     matrix
    :param rho: Hermitian matrix
    :type rho: np.ndarray
    :param tolerance: accepted Frobenius norm of rho - rho^dagger
    :type tolerance: float
    :return: eigenvalues and eigenvectors as columns
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    rho = np.asarray(rho, dtype=complex)
    error: float = hermiticity_error(rho)
    if error > tolerance * max(1.0, float(np.linalg.norm(rho))):
        raise NonHermitianError(f"matrix is not Hermitian, error {error:.3e}")
    return linalg.eigh(0.5 * (rho + rho.conj().T))


def clamp_spectrum(eigenvalues: np.ndarray, tolerance: float = 1e-10
                   ) -> np.ndarray:
    """
    Clamp negative eigenvalues to zero and renormalize to unit trace
    :param eigenvalues: spectrum of a density matrix
    :type eigenvalues: np.ndarray
    :param tolerance: negative values allowed from rounding
    :type tolerance: float
    :return: non-negative spectrum summing to one
    :rtype: np.ndarray
    """
    lowest: float = float(np.min(eigenvalues))
    if lowest < -tolerance:
        logger.warning("eigenvalue %.3e below clamp tolerance %.1e",
                       lowest, tolerance)
    elif lowest < 0:
        logger.debug("clamped eigenvalue %.3e", lowest)
    clamped: np.ndarray = np.maximum(eigenvalues, 0.0)
    return clamped / clamped.sum()


def validate_density_matrix(
        rho: np.ndarray, hermitian_tol: float | None = None,
        trace_tol: float = 1e-10, positivity_tol: float = 1e-10) -> None:
    """
    Check Hermiticity, unit trace and positivity
    :param rho: candidate density matrix
    :type rho: np.ndarray
    :param hermitian_tol: defaults to HERMITIAN_TOLERANCE
    :type hermitian_tol: float
    :return: None
    :rtype: NoneType
    """
    if hermitian_tol is None:
        hermitian_tol = get_setting().HERMITIAN_TOLERANCE
    if hermiticity_error(rho) > hermitian_tol:
        raise NonHermitianError("density matrix is not Hermitian")
    trace: complex = np.trace(rho)
    if abs(trace - 1.0) > trace_tol:
        raise ValueError(f"density matrix trace is {trace}")
    if np.min(linalg.eigvalsh(rho)) < -positivity_tol:
        raise ValueError("density matrix has negative eigenvalues")


def husimi_value(rho: np.ndarray, p: CoherentStateParams) -> float:
    """
    Husimi function Q(theta, phi) = <j,theta,phi| rho |j,theta,phi>
    :param rho: density matrix
    :type rho: np.ndarray
    :param p: evaluation point
    :type p: CoherentStateParams
    :return: value in [0, 1]
    :rtype: float
    """
    ket: np.ndarray = coherent_ket(SpinQuantum.from_dim(rho.shape[0]), p)
    return float(np.clip(np.real(ket.conj() @ rho @ ket), 0.0, 1.0))


def expectation(rho: np.ndarray, operator: np.ndarray) -> float:
    """
    tr(rho A) for a Hermitian A
    """
    return float(np.real(np.trace(rho @ operator)))


def expectation_vector(rho: np.ndarray) -> np.ndarray:
    """
    (<Jx>, <Jy>, <Jz>) of a state
    :param rho: density matrix
    :type rho: np.ndarray
    :return: expectation vector
    :rtype: np.ndarray
    """
    ops: SpinOperators = build_operators(
        SpinQuantum.from_dim(rho.shape[0]))
    return np.array([expectation(rho, ops.jx), expectation(rho, ops.jy),
                     expectation(rho, ops.jz)])
