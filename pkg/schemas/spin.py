"""
Spin schema script.
"""
import math
from typing import Union
import numpy as np
from pydantic import BaseModel, Field, validator
from core.exceptions import InvalidSpinError


class SpinQuantum(BaseModel):
    """
    Spin size j of the top, a positive half-integer.
    """
    j: float = Field(..., title='Spin size',
                     description='Half-integer spin quantum number j')

    class Config:
        """
        Config class for SpinQuantum
        """
        frozen: bool = True
        schema_extra: dict[str, dict] = {"example": {"j": 2}}

    @validator("j", allow_reuse=True)
    def check_half_integer(cls, v: float) -> float:
        """
        Half-integer validator.
        :param v: candidate spin size
        :type v: float
        :return: the spin size
        :rtype: float
        """
        if v <= 0 or not math.isclose(2 * v, round(2 * v), abs_tol=1e-12):
            raise ValueError(f"j must be a positive half-integer, got {v}")
        return round(2 * v) / 2

    @classmethod
    def coerce(cls, value: Union['SpinQuantum', float, int]) -> 'SpinQuantum':
        """
        Build a SpinQuantum from a number or pass an existing one through
        :param value: spin size or SpinQuantum
        :type value: Union[SpinQuantum, float, int]
        :return: validated spin size
        :rtype: SpinQuantum
        """
        if isinstance(value, SpinQuantum):
            return value
        if isinstance(value, dict):
            value = value.get("j", -1)
        try:
            j: float = float(value)
        except (TypeError, ValueError) as exc:
            raise InvalidSpinError(f"j must be numeric, got {value!r}"
                                   ) from exc
        if j <= 0 or not math.isclose(2 * j, round(2 * j), abs_tol=1e-12):
            raise InvalidSpinError(
                f"j must be a positive half-integer, got {value!r}")
        return cls(j=j)

    @classmethod
    def from_dim(cls, dim: int) -> 'SpinQuantum':
        """
        Spin size of a (2j+1)-dimensional space
        :param dim: Hilbert space dimension
        :type dim: int
        :return: spin size
        :rtype: SpinQuantum
        """
        return cls.coerce((dim - 1) / 2)

    @property
    def twice_j(self) -> int:
        """
        Integer 2j
        """
        return int(round(2 * self.j))

    @property
    def dim(self) -> int:
        """
        Hilbert space dimension 2j+1
        """
        return self.twice_j + 1

    @property
    def m_values(self) -> np.ndarray:
        """
        Magnetic quantum numbers in ascending order, -j first
        """
        return np.arange(self.dim, dtype=float) - self.j


class CoherentStateParams(BaseModel):
    """
    Direction (theta, phi) of a spin coherent state.
    """
    theta: float = Field(math.pi / 2, title='Polar angle',
                         description='Polar angle in [0, pi]')
    phi: float = Field(math.pi / 2, title='Azimuthal angle',
                       description='Azimuthal angle in (-pi, pi]')

    class Config:
        """
        Config class for CoherentStateParams
        """
        frozen: bool = True
        schema_extra: dict[str, dict] = {
            "example": {"theta": 1.5707963267948966,
                        "phi": 1.5707963267948966}}

    @validator("theta", allow_reuse=True)
    def check_theta(cls, v: float) -> float:
        """
        Polar angle range validator.
        :param v: polar angle
        :type v: float
        :return: the polar angle
        :rtype: float
        """
        if not 0.0 <= v <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {v}")
        return v

    @validator("phi", allow_reuse=True)
    def check_phi(cls, v: float) -> float:
        """
        Azimuthal angle range validator.
        :param v: azimuthal angle
        :type v: float
        :return: the azimuthal angle
        :rtype: float
        """
        if not -math.pi < v <= math.pi:
            raise ValueError(f"phi must lie in (-pi, pi], got {v}")
        return v

    @property
    def direction(self) -> np.ndarray:
        """
        Unit vector of the coherent state direction
        """
        return np.array([math.sin(self.theta) * math.cos(self.phi),
                         math.sin(self.theta) * math.sin(self.phi),
                         math.cos(self.theta)])
