"""
Spin operator model module
"""
from dataclasses import dataclass
import numpy as np
from schemas.spin import SpinQuantum


@dataclass(frozen=True)
class SpinOperators:
    """
    Angular momentum matrices in the |j,m> basis, m ascending.
    """
    spin: SpinQuantum
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jplus: np.ndarray
    jminus: np.ndarray

    def __post_init__(self) -> None:
        for matrix in (self.jx, self.jy, self.jz, self.jplus, self.jminus):
            matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        """
        Hilbert space dimension
        """
        return self.spin.dim

    @property
    def casimir(self) -> np.ndarray:
        """
        J^2 = Jx^2 + Jy^2 + Jz^2
        """
        return self.jx @ self.jx + self.jy @ self.jy + self.jz @ self.jz
