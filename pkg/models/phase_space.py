"""
Classical phase space model module
"""
from dataclasses import dataclass
import numpy as np


def phase_point(x: float, y: float, z: float) -> np.ndarray:
    """
    Point r = (x, y, z) on the unit sphere
    :param x: x coordinate
    :type x: float
    :param y: y coordinate
    :type y: float
    :param z: z coordinate
    :type z: float
    :return: coordinate vector
    :rtype: np.ndarray
    """
    return np.array([x, y, z], dtype=float)


@dataclass
class Ensemble:
    """
    Cloud of classical phase space points, one row per point.
    """
    points: np.ndarray

    def __post_init__(self) -> None:
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def size(self) -> int:
        """
        Number of points
        """
        return len(self)

    @property
    def norms(self) -> np.ndarray:
        """
        |r| of every point
        """
        return np.linalg.norm(self.points, axis=1)

    def to_phase_space(self) -> np.ndarray:
        """
        Canonical coordinates (phi, z) of every point, phi in (-pi, pi]
        :return: array with columns phi and z
        :rtype: np.ndarray
        """
        phi: np.ndarray = np.arctan2(self.points[:, 1], self.points[:, 0])
        phi = np.where(phi <= -np.pi, np.pi, phi)
        return np.column_stack([phi, self.points[:, 2]])


@dataclass
class SphereGrid:
    """
    Values of a quasi-probability on a (theta, phi) grid; values has shape
     (len(theta), len(phi)).
    """
    kind: str
    theta: np.ndarray
    phi: np.ndarray
    values: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        """
        (n_theta, n_phi)
        """
        return self.theta.size, self.phi.size

    def integral(self) -> float:
        """
        Midpoint quadrature of the values over the unit sphere
        :return: integral with the measure sin(theta) dtheta dphi
        :rtype: float
        """
        d_theta: float = np.pi / self.theta.size
        d_phi: float = 2 * np.pi / self.phi.size
        return float(np.sum(self.values * np.sin(self.theta)[:, None])
                     * d_theta * d_phi)

    def rows(self) -> list[tuple[float, float, float]]:
        """
        (theta, phi, value) rows, theta major
        """
        return [(float(t), float(p), float(self.values[i, k]))
                for i, t in enumerate(self.theta)
                for k, p in enumerate(self.phi)]
