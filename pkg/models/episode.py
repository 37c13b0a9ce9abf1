"""
Episode model module
"""
from dataclasses import dataclass, field
import numpy as np
from models.state import StateWithDerivative
from schemas.environment import EnvConfig
from schemas.policy import KickPolicy


@dataclass
class EnvState:
    """
    Bookkeeping of a running episode, owned by a single worker.
    """
    config: EnvConfig
    state: StateWithDerivative
    grid_index: int = 0
    accumulated_kick_current_slot: float = 0.0
    kicks_in_slot: int = 0
    total_kick: float = 0.0
    total_kick_count: int = 0
    qfi_trace: list[tuple[float, float]] = field(default_factory=list)
    kicks: list[tuple[float, float]] = field(default_factory=list)
    done: bool = False

    @property
    def time(self) -> float:
        """
        Current grid time
        """
        return self.grid_index * self.config.t_step

    @property
    def policy(self) -> KickPolicy:
        """
        Kicks applied so far, including the open slot
        """
        kicks: list[tuple[float, float]] = list(self.kicks)
        if self.kicks_in_slot:
            kicks.append((self.time, self.kicks_in_slot * self.config.k_step))
        return KickPolicy(kicks=tuple(kicks))


@dataclass
class EpisodeRecord:
    """
    Observations and actions of one episode with its final reward.
    """
    observations: np.ndarray
    actions: np.ndarray
    reward: float
    policy: KickPolicy
    qfi_trace: list[tuple[float, float]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.actions)
