"""
Run artifact model module
"""
from dataclasses import dataclass, field
from typing import Optional
import numpy as np
from models.phase_space import SphereGrid
from models.policy_network import PolicyNetwork
from schemas.experiment import ExperimentPreset
from schemas.policy import KickPolicy
from schemas.trainer import TrainingTrace


@dataclass
class QfiCurve:
    """
    QFI against time with the accumulated kicking strength k_acc(t).
    """
    name: str
    times: np.ndarray
    qfi: np.ndarray
    k_acc: np.ndarray

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.qfi = np.asarray(self.qfi, dtype=float)
        self.k_acc = np.asarray(self.k_acc, dtype=float)

    def __len__(self) -> int:
        return self.times.size

    @property
    def rescaled(self) -> np.ndarray:
        """
        I(t) / t, zero at t = 0
        """
        rescaled: np.ndarray = np.zeros_like(self.qfi)
        positive: np.ndarray = self.times > 0
        rescaled[positive] = self.qfi[positive] / self.times[positive]
        return rescaled

    @property
    def final(self) -> float:
        """
        QFI at the last time
        """
        return float(self.qfi[-1])

    @classmethod
    def from_trace(cls, name: str, trace: list[tuple[float, float]],
                   policy: KickPolicy) -> 'QfiCurve':
        """
        Curve of a replayed policy with its accumulated kicking strength
        :param name: curve label
        :type name: str
        :param trace: (time, qfi) rows
        :type trace: list[tuple[float, float]]
        :param policy: kicks of the replay
        :type policy: KickPolicy
        :return: curve
        :rtype: QfiCurve
        """
        times: np.ndarray = np.array([t for t, _ in trace], dtype=float)
        values: np.ndarray = np.array([q for _, q in trace], dtype=float)
        k_acc: np.ndarray = np.array([
            float(np.sum(policy.strengths[policy.times <= t + 1e-9]))
            for t in times]) if len(policy) else np.zeros_like(times)
        return cls(name=name, times=times, qfi=values, k_acc=k_acc)


@dataclass
class KickTable:
    """
    Kicks with their precession angle omega t, and the reference <Jx> of
     the unkicked state at every grid time.
    """
    kicks: list[tuple[float, float, float]] = field(default_factory=list)
    reference: list[tuple[float, float]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.kicks)


@dataclass
class RunArtifactBundle:
    """
    Everything a training run produces for one preset.
    """
    preset: ExperimentPreset
    curves: dict[str, QfiCurve] = field(default_factory=dict)
    policy: Optional[KickPolicy] = None
    reward: Optional[float] = None
    network: Optional[PolicyNetwork] = None
    trace: Optional[TrainingTrace] = None
    grids: dict[str, SphereGrid] = field(default_factory=dict)
    kick_table: Optional[KickTable] = None
    agent: Optional[int] = None
