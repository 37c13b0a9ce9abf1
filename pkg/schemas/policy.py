"""
Kick policy schema script.
"""
from typing import Any
import numpy as np
from pydantic import BaseModel, Field, validator


class KickPolicy(BaseModel):
    """
    Deterministic control schedule: ordered (time, kick strength) pairs.
    """
    kicks: tuple[tuple[float, float], ...] = Field(
        (), title='Kicks', description='Pairs of grid time and strength')

    class Config:
        """
        Config class for KickPolicy
        """
        frozen: bool = True
        schema_extra: dict[str, dict] = {
            "example": {"kicks": [[0.0, 0.3], [2.0, 1.5]]}}

    @validator("kicks", allow_reuse=True)
    def check_kicks(cls, v: tuple[tuple[float, float], ...]
                    ) -> tuple[tuple[float, float], ...]:
        """
        Times are non-negative and ascending, strengths non-negative.
        :param v: kick pairs
        :type v: tuple[tuple[float, float], ...]
        :return: kick pairs
        :rtype: tuple[tuple[float, float], ...]
        """
        previous: float = -np.inf
        for time, strength in v:
            if time < 0 or strength < 0:
                raise ValueError(f"negative entry in kick ({time}, {strength})")
            if time < previous:
                raise ValueError("kick times must be ascending")
            previous = time
        return v

    @classmethod
    def from_pairs(cls, pairs: Any) -> 'KickPolicy':
        """
        Build a policy from any iterable of (time, strength) pairs
        :param pairs: iterable of pairs
        :type pairs: Any
        :return: policy
        :rtype: KickPolicy
        """
        return cls(kicks=tuple((float(t), float(k)) for t, k in pairs))

    @property
    def times(self) -> np.ndarray:
        """
        Kick times
        """
        return np.array([t for t, _ in self.kicks], dtype=float)

    @property
    def strengths(self) -> np.ndarray:
        """
        Kick strengths
        """
        return np.array([k for _, k in self.kicks], dtype=float)

    @property
    def total_strength(self) -> float:
        """
        Total accumulated kicking strength
        """
        return float(sum(k for _, k in self.kicks))

    def __len__(self) -> int:
        return len(self.kicks)
