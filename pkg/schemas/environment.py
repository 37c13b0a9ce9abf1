"""
Environment schema script.
"""
from enum import Enum, IntEnum
from typing import Any, Optional
import numpy as np
from pydantic import BaseModel, Field, validator
from schemas.dynamics import DynamicsParams
from schemas.spin import CoherentStateParams, SpinQuantum

GRID_TOLERANCE: float = 1e-9


class Action(IntEnum):
    """
    Discrete actions; the value is the output neuron index.
    """
    KICK: int = 0
    GO_ON: int = 1


class RewardMode(str, Enum):
    """
    Reward given at the end of an episode
    """
    FINAL_QFI: str = 'final_qfi'
    MAX_RESCALED_QFI: str = 'max_rescaled_qfi'


class EnvConfig(BaseModel):
    """
    Discretized control problem of the generalized kicked top.
    """
    spin: SpinQuantum = Field(..., title='Spin size')
    params: DynamicsParams = Field(DynamicsParams(), title='Dynamics')
    t_step: float = Field(1.0, title='Time step', gt=0.0)
    k_step: float = Field(0.1, title='Kick increment', gt=0.0)
    t_opt: float = Field(100.0, title='Horizon T_opt', gt=0.0)
    kick_budget: float = Field(
        15000.0, title='Kick budget', gt=0.0,
        description='Bound on the total accumulated kicking strength')
    max_kicks_per_slot: Optional[int] = Field(
        None, title='Kicks per slot', ge=0,
        description='Cap on KICK actions between two GO_ON, None for no cap')
    reward_mode: RewardMode = Field(RewardMode.FINAL_QFI, title='Reward')
    initial_state: CoherentStateParams = Field(
        CoherentStateParams(), title='Initial coherent state')

    class Config:
        """
        Config class for EnvConfig
        """
        frozen: bool = True
        schema_extra: dict[str, dict] = {
            "example": {
                "spin": {"j": 2}, "t_step": 1.0, "k_step": 0.1,
                "t_opt": 100.0,
                "params": {"gamma_sr": 0.02,
                           "decoherence_kind": "superradiant"}}}

    @validator("spin", pre=True, allow_reuse=True)
    def coerce_spin(cls, v: Any) -> SpinQuantum:
        """
        Accept plain numbers for the spin size.
        :param v: spin size, mapping or SpinQuantum
        :type v: Any
        :return: spin size
        :rtype: SpinQuantum
        """
        return SpinQuantum.coerce(v)

    @validator("t_opt", allow_reuse=True)
    def check_grid(cls, v: float, values: dict[str, Any]) -> float:
        """
        The time step must divide the horizon.
        :param v: horizon
        :type v: float
        :param values: fields validated so far
        :type values: dict[str, Any]
        :return: horizon
        :rtype: float
        """
        t_step: Optional[float] = values.get("t_step")
        if t_step is None:
            return v
        n_steps: int = round(v / t_step)
        if n_steps < 1 or abs(n_steps * t_step - v) > GRID_TOLERANCE * v:
            raise ValueError(f"t_step={t_step} does not divide t_opt={v}")
        return v

    @property
    def n_steps(self) -> int:
        """
        Number of grid intervals up to the horizon
        """
        return round(self.t_opt / self.t_step)

    @property
    def dim(self) -> int:
        """
        Hilbert space dimension
        """
        return self.spin.dim

    @property
    def obs_dim(self) -> int:
        """
        Length of an observation vector, real then imaginary parts
        """
        return 2 * self.dim ** 2

    @property
    def times(self) -> np.ndarray:
        """
        Grid times 0, t_step, ..., t_opt
        """
        return np.arange(self.n_steps + 1) * self.t_step

    def grid_index(self, time: float) -> Optional[int]:
        """
        Grid index of a time, None when off the grid
        :param time: time to locate
        :type time: float
        :return: index on the grid or None
        :rtype: int
        """
        index: int = round(time / self.t_step)
        if abs(index * self.t_step - time) > GRID_TOLERANCE * max(
                1.0, abs(time)) or not 0 <= index <= self.n_steps:
            return None
        return index
