"""
Trainer schema script.
"""
import math
from typing import Any, Optional
from pydantic import BaseModel, Field, root_validator
from schemas.environment import EnvConfig
from schemas.policy import KickPolicy

SHARE_ROUNDING: float = 1e-9


def elite_count(elite_share: float, n_episodes: int) -> int:
    """
    Number of elite episodes ceil(share * n), robust to float rounding
    :param elite_share: share of the best episodes
    :type elite_share: float
    :param n_episodes: episodes per iteration
    :type n_episodes: int
    :return: number of elite episodes
    :rtype: int
    """
    return max(0, math.ceil(elite_share * n_episodes - SHARE_ROUNDING))


class TrainerConfig(BaseModel):
    """
    Cross-entropy training run for one or more agents.
    """
    n_iterations: int = Field(300, title='Iterations', ge=0)
    n_episodes: int = Field(40, title='Episodes per iteration', ge=1)
    elite_share: float = Field(0.1, title='Elite share', gt=0.0, le=1.0)
    n_samples: int = Field(20, title='Samples', ge=1,
                           description='Episodes sampled to extract a policy')
    n_agents: int = Field(1, title='Agents', ge=1)
    rng_seed: int = Field(2019, title='Seed', ge=0)
    env: EnvConfig = Field(..., title='Environment')
    hidden_units: int = Field(300, title='Hidden units', ge=1)
    learning_rate: float = Field(0.001, title='Learning rate', gt=0.0)
    batch_size: int = Field(128, title='Minibatch size', ge=1)
    epochs_per_iteration: int = Field(1, title='Epochs per iteration', ge=1)

    class Config:
        """
        Config class for TrainerConfig
        """
        frozen: bool = True

    @root_validator(skip_on_failure=True, allow_reuse=True)
    def check_elite(cls, values: dict[str, Any]) -> dict[str, Any]:
        """
        At least one episode must be elite.
        :param values: field values
        :type values: dict[str, Any]
        :return: field values
        :rtype: dict[str, Any]
        """
        if elite_count(values["elite_share"], values["n_episodes"]) < 1:
            raise ValueError("elite_share * n_episodes selects no episode")
        return values

    @property
    def n_elite(self) -> int:
        """
        Number of elite episodes per iteration
        """
        return elite_count(self.elite_share, self.n_episodes)


class TrainingTraceRow(BaseModel):
    """
    Statistics of one cross-entropy iteration.
    """
    iteration: int = Field(..., ge=0)
    mean_reward: float
    max_reward: float
    std_reward: float = Field(0.0, ge=0.0)
    elite_threshold: float
    loss: float
    all_zero_rewards: bool = False

    @root_validator(skip_on_failure=True, allow_reuse=True)
    def check_order(cls, values: dict[str, Any]) -> dict[str, Any]:
        """
        The maximum reward bounds the mean.
        :param values: field values
        :type values: dict[str, Any]
        :return: field values
        :rtype: dict[str, Any]
        """
        scale: float = max(1.0, abs(values["max_reward"]))
        if values["max_reward"] < values["mean_reward"] - 1e-12 * scale:
            raise ValueError("max_reward below mean_reward")
        return values


class TrainingTrace(BaseModel):
    """
    Per-iteration records plus the best episode seen during training.
    """
    rows: list[TrainingTraceRow] = Field(default_factory=list)
    best_reward: Optional[float] = None
    best_policy: Optional[KickPolicy] = None

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def mean_rewards(self) -> list[float]:
        """
        Mean reward of every iteration
        """
        return [row.mean_reward for row in self.rows]


class StudyRow(BaseModel):
    """
    One grid point of the learning-curve stability study.
    """
    axis: str = Field(..., title='Axis',
                      description='"iterations" or "episodes"')
    value: int = Field(..., title='Grid value')
    mean_reward: float
    std_reward: float
    n_agents: int
    n_rewards: int
