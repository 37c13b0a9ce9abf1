"""
State model module
"""
from dataclasses import dataclass
import numpy as np


@dataclass(frozen=True)
class StateWithDerivative:
    """
    Density matrix rho and its derivative d rho / d omega.
    """
    rho: np.ndarray
    drho: np.ndarray

    @classmethod
    def from_density(cls, rho: np.ndarray) -> 'StateWithDerivative':
        """
        State with vanishing derivative, e.g. an initial state
        :param rho: density matrix
        :type rho: np.ndarray
        :return: state with drho = 0
        :rtype: StateWithDerivative
        """
        rho = np.asarray(rho, dtype=complex)
        return cls(rho=rho, drho=np.zeros_like(rho))

    @property
    def dim(self) -> int:
        """
        Hilbert space dimension
        """
        return self.rho.shape[0]

    @property
    def trace(self) -> float:
        """
        Real part of tr(rho)
        """
        return float(np.trace(self.rho).real)

    @property
    def purity(self) -> float:
        """
        tr(rho^2)
        """
        return float(np.real(np.vdot(self.rho, self.rho)))

    def hermitized(self) -> 'StateWithDerivative':
        """
        Remove the anti-Hermitian rounding residue of both fields
        :return: Hermitian copy
        :rtype: StateWithDerivative
        """
        return StateWithDerivative(
            rho=0.5 * (self.rho + self.rho.conj().T),
            drho=0.5 * (self.drho + self.drho.conj().T))
