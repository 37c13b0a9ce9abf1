"""
Policy network model module.

A fully connected network with one ReLU hidden layer and a softmax head
over the two actions, trained with categorical cross entropy and Adam.
Gradients are written out in closed form.
"""
from dataclasses import dataclass
from typing import Any, Optional
import numpy as np
from core.exceptions import DimensionMismatchError, EmptyBatchError
from schemas.environment import Action

PARAMETER_NAMES: tuple[str, ...] = ("w1", "b1", "w2", "b2")
LOG_FLOOR: float = 1e-12
N_ACTIONS: int = len(Action)


def softmax(logits: np.ndarray) -> np.ndarray:
    """
    Row-wise softmax, shifted by the row maximum
    :param logits: array with the classes on the last axis
    :type logits: np.ndarray
    :return: probabilities
    :rtype: np.ndarray
    """
    shifted: np.ndarray = logits - np.max(logits, axis=-1, keepdims=True)
    exp: np.ndarray = np.exp(shifted)
    return exp / np.sum(exp, axis=-1, keepdims=True)


@dataclass
class TrainBatch:
    """
    Observations with one-hot target actions.
    """
    observations: np.ndarray
    targets: np.ndarray

    def __post_init__(self) -> None:
        self.observations = np.atleast_2d(
            np.asarray(self.observations, dtype=float))
        self.targets = np.atleast_2d(np.asarray(self.targets, dtype=float))
        if self.observations.shape[0] != self.targets.shape[0]:
            raise DimensionMismatchError(
                f"{self.observations.shape[0]} observations but "
                f"{self.targets.shape[0]} targets")

    @classmethod
    def from_actions(cls, observations: np.ndarray, actions: np.ndarray
                     ) -> 'TrainBatch':
        """
        Batch from integer actions
        :param observations: observation matrix
        :type observations: np.ndarray
        :param actions: action indices
        :type actions: np.ndarray
        :return: batch with one-hot targets
        :rtype: TrainBatch
        """
        actions = np.asarray(actions, dtype=int).reshape(-1)
        targets: np.ndarray = np.zeros((actions.size, N_ACTIONS))
        targets[np.arange(actions.size), actions] = 1.0
        return cls(observations=observations, targets=targets)

    def __len__(self) -> int:
        return self.observations.shape[0]

    def subset(self, rows: np.ndarray) -> 'TrainBatch':
        """
        Batch of the selected rows
        """
        return TrainBatch(self.observations[rows], self.targets[rows])


class PolicyNetwork:
    """
    One-hidden-layer perceptron mapping an observation to action
    probabilities, with its Adam optimizer state.
    """

    def __init__(
            self, obs_dim: int, hidden_units: int = 300,
            rng_seed: int = 0, beta1: float = 0.9, beta2: float = 0.999,
            adam_epsilon: float = 1e-8) -> None:
        self.obs_dim: int = obs_dim
        self.hidden_units: int = hidden_units
        self.rng_seed: int = rng_seed
        self.beta1: float = beta1
        self.beta2: float = beta2
        self.adam_epsilon: float = adam_epsilon
        rng: np.random.Generator = np.random.default_rng(rng_seed)
        limit1: float = np.sqrt(6.0 / (obs_dim + hidden_units))
        limit2: float = np.sqrt(6.0 / (hidden_units + N_ACTIONS))
        self.w1: np.ndarray = rng.uniform(
            -limit1, limit1, size=(hidden_units, obs_dim))
        self.b1: np.ndarray = np.zeros(hidden_units)
        self.w2: np.ndarray = rng.uniform(
            -limit2, limit2, size=(N_ACTIONS, hidden_units))
        self.b2: np.ndarray = np.zeros(N_ACTIONS)
        self.adam_step: int = 0
        self.first_moments: dict[str, np.ndarray] = {
            name: np.zeros_like(value)
            for name, value in self.parameters.items()}
        self.second_moments: dict[str, np.ndarray] = {
            name: np.zeros_like(value)
            for name, value in self.parameters.items()}

    @property
    def parameters(self) -> dict[str, np.ndarray]:
        """
        Weights and biases by name
        """
        return {"w1": self.w1, "b1": self.b1, "w2": self.w2, "b2": self.b2}

    def set_parameters(self, parameters: dict[str, np.ndarray]) -> None:
        """
        Replace weights and biases, checking their shapes
        :param parameters: arrays keyed by parameter name
        :type parameters: dict[str, np.ndarray]
        :return: None
        :rtype: NoneType
        """
        for name in PARAMETER_NAMES:
            value: np.ndarray = np.array(parameters[name], dtype=float)
            current: np.ndarray = getattr(self, name)
            if value.shape != current.shape:
                raise DimensionMismatchError(
                    f"{name}: expected shape {current.shape}, "
                    f"got {value.shape}")
            setattr(self, name, value)

    def snapshot(self) -> 'PolicyNetwork':
        """
        Frozen copy of the weights for rollout workers
        :return: copy without optimizer history
        :rtype: PolicyNetwork
        """
        clone: PolicyNetwork = PolicyNetwork.__new__(PolicyNetwork)
        clone.__dict__.update(self.__dict__)
        for name in PARAMETER_NAMES:
            value: np.ndarray = getattr(self, name).copy()
            value.setflags(write=False)
            setattr(clone, name, value)
        clone.first_moments = {}
        clone.second_moments = {}
        return clone

    def _check_input(self, observations: np.ndarray) -> np.ndarray:
        observations = np.asarray(observations, dtype=float)
        if observations.shape[-1] != self.obs_dim:
            raise DimensionMismatchError(
                f"observation length {observations.shape[-1]} != "
                f"{self.obs_dim}")
        return observations

    def _forward(self, observations: np.ndarray
                 ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        pre_activation: np.ndarray = observations @ self.w1.T + self.b1
        hidden: np.ndarray = np.maximum(pre_activation, 0.0)
        probabilities: np.ndarray = softmax(hidden @ self.w2.T + self.b2)
        return pre_activation, hidden, probabilities

    def forward(self, obs: np.ndarray) -> np.ndarray:
        """
        Action probabilities for one observation or a batch of them
        :param obs: observation vector or matrix
        :type obs: np.ndarray
        :return: probabilities (KICK, GO_ON)
        :rtype: np.ndarray
        """
        return self._forward(self._check_input(obs))[2]

    def sample_action(
            self, obs: np.ndarray, rng: np.random.Generator,
            kick_allowed: bool = True) -> Action:
        """
        Draw an action from the network distribution
        :param obs: observation vector
        :type obs: np.ndarray
        :param rng: random generator of the episode
        :type rng: np.random.Generator
        :param kick_allowed: False when KICK is masked
        :type kick_allowed: bool
        :return: sampled action
        :rtype: Action
        """
        probabilities: np.ndarray = self.forward(obs)
        draw: float = rng.random()
        if not kick_allowed:
            return Action.GO_ON
        return Action.KICK if draw < probabilities[Action.KICK] \
            else Action.GO_ON

    def loss(self, batch: TrainBatch) -> float:
        """
        Mean categorical cross entropy on a batch
        :param batch: observations and one-hot targets
        :type batch: TrainBatch
        :return: loss value
        :rtype: float
        """
        if not len(batch):
            raise EmptyBatchError("cannot evaluate the loss of an empty batch")
        probabilities: np.ndarray = self.forward(batch.observations)
        return float(-np.mean(np.sum(
            batch.targets * np.log(np.maximum(probabilities, LOG_FLOOR)),
            axis=1)))

    def gradients(self, batch: TrainBatch
                  ) -> tuple[float, dict[str, np.ndarray]]:
        """
        Loss and its gradient with respect to every parameter
        :param batch: observations and one-hot targets
        :type batch: TrainBatch
        :return: loss and gradients keyed by parameter name
        :rtype: tuple[float, dict[str, np.ndarray]]
        """
        if not len(batch):
            raise EmptyBatchError("cannot train on an empty batch")
        observations: np.ndarray = self._check_input(batch.observations)
        pre_activation, hidden, probabilities = self._forward(observations)
        size: int = observations.shape[0]
        loss: float = float(-np.mean(np.sum(
            batch.targets * np.log(np.maximum(probabilities, LOG_FLOOR)),
            axis=1)))
        d_logits: np.ndarray = (probabilities - batch.targets) / size
        d_hidden: np.ndarray = (d_logits @ self.w2) * (pre_activation > 0.0)
        return loss, {
            "w2": d_logits.T @ hidden,
            "b2": d_logits.sum(axis=0),
            "w1": d_hidden.T @ observations,
            "b1": d_hidden.sum(axis=0),
        }

    def train_step(self, batch: TrainBatch, lr: float = 0.001) -> float:
        """
        One Adam update on the mean cross entropy of a batch
        :param batch: observations and one-hot targets
        :type batch: TrainBatch
        :param lr: learning rate
        :type lr: float
        :return: loss before the update
        :rtype: float
        """
        loss, grads = self.gradients(batch)
        self.adam_step += 1
        correction1: float = 1.0 - self.beta1 ** self.adam_step
        correction2: float = 1.0 - self.beta2 ** self.adam_step
        for name in PARAMETER_NAMES:
            m: np.ndarray = self.first_moments[name]
            v: np.ndarray = self.second_moments[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * grads[name]
            v *= self.beta2
            v += (1.0 - self.beta2) * grads[name] ** 2
            step: np.ndarray = lr * (m / correction1) / (
                np.sqrt(v / correction2) + self.adam_epsilon)
            setattr(self, name, getattr(self, name) - step)
        return loss

    def state_dict(self) -> dict[str, Any]:
        """
        Complete state for checkpoints
        :return: hyperparameters, weights and Adam moments
        :rtype: dict[str, Any]
        """
        return {
            "obs_dim": self.obs_dim,
            "hidden_units": self.hidden_units,
            "rng_seed": self.rng_seed,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "adam_epsilon": self.adam_epsilon,
            "adam_step": self.adam_step,
            "parameters": dict(self.parameters),
            "first_moments": dict(self.first_moments),
            "second_moments": dict(self.second_moments),
        }

    @classmethod
    def from_state_dict(cls, state: dict[str, Any]) -> 'PolicyNetwork':
        """
        Rebuild a network from state_dict output
        :param state: checkpoint content
        :type state: dict[str, Any]
        :return: restored network
        :rtype: PolicyNetwork
        """
        net: PolicyNetwork = cls(
            obs_dim=int(state["obs_dim"]),
            hidden_units=int(state["hidden_units"]),
            rng_seed=int(state["rng_seed"]), beta1=float(state["beta1"]),
            beta2=float(state["beta2"]),
            adam_epsilon=float(state["adam_epsilon"]))
        net.set_parameters(state["parameters"])
        net.adam_step = int(state["adam_step"])
        moments: Optional[dict] = state.get("first_moments")
        if moments:
            net.first_moments = {name: np.array(moments[name], dtype=float)
                                 for name in PARAMETER_NAMES}
            net.second_moments = {
                name: np.array(state["second_moments"][name], dtype=float)
                for name in PARAMETER_NAMES}
        return net
