"""
Dynamics schema script.
"""
import math
from enum import Enum
from typing import Any
from pydantic import BaseModel, Field, root_validator


class DecoherenceKind(str, Enum):
    """
    Decoherence model based on string ENUMs
    """
    NONE: str = 'none'
    PHASE_DAMPING: str = 'phase_damping'
    SUPERRADIANT: str = 'superradiant'


class DynamicsParams(BaseModel):
    """
    Precession frequency and decoherence of the top.
    """
    omega: float = Field(math.pi / 2, title='Precession frequency',
                         description='Frequency omega in radians per tau')
    gamma_pd: float = Field(0.0, title='Phase damping rate', ge=0.0)
    gamma_sr: float = Field(0.0, title='Superradiant rate', ge=0.0)
    decoherence_kind: DecoherenceKind = Field(
        DecoherenceKind.NONE, title='Decoherence',
        description='Active decoherence model')

    class Config:
        """
        Config class for DynamicsParams
        """
        frozen: bool = True
        schema_extra: dict[str, dict] = {
            "example": {"omega": 1.5707963267948966, "gamma_pd": 0.0,
                        "gamma_sr": 0.01,
                        "decoherence_kind": "superradiant"}}

    @root_validator(skip_on_failure=True, allow_reuse=True)
    def check_single_channel(cls, values: dict[str, Any]) -> dict[str, Any]:
        """
        Only the rate of the active decoherence kind may be non-zero.
        :param values: field values
        :type values: dict[str, Any]
        :return: field values
        :rtype: dict[str, Any]
        """
        kind: DecoherenceKind = values["decoherence_kind"]
        if kind != DecoherenceKind.PHASE_DAMPING and values["gamma_pd"]:
            raise ValueError("gamma_pd set but phase damping is not active")
        if kind != DecoherenceKind.SUPERRADIANT and values["gamma_sr"]:
            raise ValueError("gamma_sr set but superradiance is not active")
        return values

    @property
    def rate(self) -> float:
        """
        Rate of the active decoherence channel, 0 when closed
        """
        if self.decoherence_kind == DecoherenceKind.PHASE_DAMPING:
            return self.gamma_pd
        if self.decoherence_kind == DecoherenceKind.SUPERRADIANT:
            return self.gamma_sr
        return 0.0

    @classmethod
    def closed(cls, omega: float = math.pi / 2) -> 'DynamicsParams':
        """
        Dynamics without decoherence
        """
        return cls(omega=omega)

    @classmethod
    def superradiant(cls, gamma: float, omega: float = math.pi / 2
                     ) -> 'DynamicsParams':
        """
        Dynamics with superradiant damping at rate gamma
        """
        return cls(omega=omega, gamma_sr=gamma,
                   decoherence_kind=DecoherenceKind.SUPERRADIANT)

    @classmethod
    def phase_damping(cls, gamma: float, omega: float = math.pi / 2
                      ) -> 'DynamicsParams':
        """
        Dynamics with phase damping at rate gamma
        """
        return cls(omega=omega, gamma_pd=gamma,
                   decoherence_kind=DecoherenceKind.PHASE_DAMPING)
