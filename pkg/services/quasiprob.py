"""
Quasi-probability distributions of a spin on the sphere.

The Husimi function is the coherent-state expectation of rho. The Wigner
function uses the multipole expansion over irreducible tensor operators
T_KQ, K = 0..2j, normalized so that it integrates to one.
"""
import math
from functools import lru_cache
import numpy as np
from scipy.special import lpmv
from sympy import Rational
from sympy.physics.wigner import clebsch_gordan
from models.phase_space import SphereGrid
from schemas.experiment import QuasiProbKind
from schemas.spin import SpinQuantum
from services.spin_algebra import coherent_kets


def sphere_grid(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Midpoint polar angles and azimuths in (-pi, pi]
    :param n_theta: number of polar angles
    :type n_theta: int
    :param n_phi: number of azimuths
    :type n_phi: int
    :return: theta and phi axes
    :rtype: tuple[np.ndarray, np.ndarray]
    """
    if n_theta < 1 or n_phi < 1:
        raise ValueError("grid sizes must be positive")
    theta: np.ndarray = (np.arange(n_theta) + 0.5) * np.pi / n_theta
    phi: np.ndarray = -np.pi + (np.arange(n_phi) + 1) * 2 * np.pi / n_phi
    return theta, phi


def husimi_grid(rho: np.ndarray, n_theta: int, n_phi: int) -> SphereGrid:
    """
    Husimi function Q(theta, phi) on a grid
    :param rho: density matrix
    :type rho: np.ndarray
    :param n_theta: number of polar angles
    :type n_theta: int
    :param n_phi: number of azimuths
    :type n_phi: int
    :return: grid of values in [0, 1]
    :rtype: SphereGrid
    """
    spin: SpinQuantum = SpinQuantum.from_dim(rho.shape[0])
    theta, phi = sphere_grid(n_theta, n_phi)
    mesh_theta, mesh_phi = np.meshgrid(theta, phi, indexing='ij')
    kets: np.ndarray = coherent_kets(spin, mesh_theta.reshape(-1),
                                     mesh_phi.reshape(-1))
    values: np.ndarray = np.real(np.einsum(
        'ni,ij,nj->n', kets.conj(), rho, kets))
    return SphereGrid(kind=QuasiProbKind.HUSIMI.value, theta=theta, phi=phi,
                      values=np.clip(values, 0.0, 1.0).reshape(
                          n_theta, n_phi))


@lru_cache(maxsize=None)
def tensor_operators(spin: SpinQuantum) -> dict[tuple[int, int], np.ndarray]:
    """
    Irreducible tensor operators with tr(T_KQ^dagger T_K'Q') = delta
    :param spin: spin size
    :type spin: SpinQuantum
    :return: T_KQ keyed by (K, Q), basis m ascending
    :rtype: dict[tuple[int, int], np.ndarray]
    """
    j = Rational(spin.twice_j, 2)
    operators: dict[tuple[int, int], np.ndarray] = {}
    for rank in range(spin.twice_j + 1):
        norm: float = math.sqrt((2 * rank + 1) / spin.dim)
        for q in range(-rank, rank + 1):
            operator: np.ndarray = np.zeros((spin.dim, spin.dim))
            for index in range(spin.dim):
                target: int = index + q
                if not 0 <= target < spin.dim:
                    continue
                m = index - j
                operator[target, index] = norm * float(
                    clebsch_gordan(j, rank, j, m, q, m + q))
            operator.setflags(write=False)
            operators[(rank, q)] = operator
    return operators


def spherical_harmonic(rank: int, q: int, theta: np.ndarray,
                       phi: np.ndarray) -> np.ndarray:
    """
    Y_KQ(theta, phi) with the Condon-Shortley phase
    """
    order: int = abs(q)
    norm: float = math.sqrt((2 * rank + 1) / (4 * math.pi)
                            * math.factorial(rank - order)
                            / math.factorial(rank + order))
    value: np.ndarray = norm * lpmv(order, rank, np.cos(theta)) \
        * np.exp(1j * order * phi)
    if q < 0:
        return (-1) ** order * value.conj()
    return value


def multipoles(rho: np.ndarray) -> dict[tuple[int, int], complex]:
    """
    State multipoles rho_KQ = tr(T_KQ^dagger rho)
    :param rho: density matrix
    :type rho: np.ndarray
    :return: multipoles keyed by (K, Q)
    :rtype: dict[tuple[int, int], complex]
    """
    spin: SpinQuantum = SpinQuantum.from_dim(rho.shape[0])
    return {key: complex(np.sum(operator * rho))
            for key, operator in tensor_operators(spin).items()}


def wigner_grid(rho: np.ndarray, n_theta: int, n_phi: int) -> SphereGrid:
    """
    Spin Wigner function sqrt((2j+1)/4pi) sum rho_KQ Y_KQ on a grid
    :param rho: density matrix
    :type rho: np.ndarray
    :param n_theta: number of polar angles
    :type n_theta: int
    :param n_phi: number of azimuths
    :type n_phi: int
    :return: real grid integrating to one over the sphere
    :rtype: SphereGrid
    """
    theta, phi = sphere_grid(n_theta, n_phi)
    mesh_theta, mesh_phi = np.meshgrid(theta, phi, indexing='ij')
    values: np.ndarray = np.zeros(mesh_theta.shape, dtype=complex)
    for (rank, q), weight in multipoles(rho).items():
        if abs(weight) < 1e-15:
            continue
        values += weight * spherical_harmonic(rank, q, mesh_theta, mesh_phi)
    scale: float = math.sqrt(rho.shape[0] / (4 * math.pi))
    return SphereGrid(kind=QuasiProbKind.WIGNER.value, theta=theta, phi=phi,
                      values=scale * values.real)


def quasiprob_grid(rho: np.ndarray, n_theta: int, n_phi: int,
                   kind: QuasiProbKind) -> SphereGrid:
    """
    Husimi or Wigner grid of a state
    """
    if QuasiProbKind(kind) == QuasiProbKind.WIGNER:
        return wigner_grid(rho, n_theta, n_phi)
    return husimi_grid(rho, n_theta, n_phi)
