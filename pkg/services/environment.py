"""
Reinforcement learning environment of the generalized kicked top.

An episode starts from a spin coherent state. The agent either kicks (the
kick of strength k_step is applied at once) or goes on to the next grid
time. The reward is paid only when the horizon T_opt is reached.
"""
from typing import Iterator
import numpy as np
from core.exceptions import (EpisodeFinishedError, KickRejectedError,
                             OffGridPolicyError)
from models.episode import EnvState
from models.state import StateWithDerivative
from schemas.environment import Action, EnvConfig, RewardMode
from schemas.policy import KickPolicy
from services.dynamics import PropagatorSet, get_propagators, kick
from services.metrology import qfi
from services.spin_algebra import coherent_state


def observe(rho: np.ndarray) -> np.ndarray:
    """
    Observation vector: real parts then imaginary parts of rho, row-major
    :param rho: density matrix
    :type rho: np.ndarray
    :return: vector of 2 dim^2 reals
    :rtype: np.ndarray
    """
    return np.concatenate([rho.real.reshape(-1), rho.imag.reshape(-1)])


def episode_reward(qfi_trace: list[tuple[float, float]],
                   mode: RewardMode) -> float:
    """
    Reward of a finished episode
    :param qfi_trace: (time, qfi) at every grid time
    :type qfi_trace: list[tuple[float, float]]
    :param mode: final QFI or maximal rescaled QFI
    :type mode: RewardMode
    :return: reward
    :rtype: float
    """
    if mode == RewardMode.FINAL_QFI:
        return qfi_trace[-1][1]
    return max(value / time for time, value in qfi_trace if time > 0)


def initial_state(config: EnvConfig) -> StateWithDerivative:
    """
    Coherent initial state with vanishing derivative
    """
    return StateWithDerivative.from_density(
        coherent_state(config.spin, config.initial_state))


class KickedTopEnv:
    """
    Deterministic episodic environment with the actions KICK and GO_ON.
    """

    def __init__(self, config: EnvConfig) -> None:
        self.config: EnvConfig = config
        self.propagators: PropagatorSet = get_propagators(
            config.spin, config.params, config.t_step)
        self.env_state: EnvState | None = None

    def reset(self) -> tuple[EnvState, np.ndarray]:
        """
        Reinitialize the spin in the coherent state, clocks zeroed
        :return: episode state and first observation
        :rtype: tuple[EnvState, np.ndarray]
        """
        state: StateWithDerivative = initial_state(self.config)
        self.env_state = EnvState(config=self.config, state=state,
                                  qfi_trace=[(0.0, 0.0)])
        return self.env_state, observe(state.rho)

    def kick_allowed(self) -> bool:
        """
        Whether KICK is currently permitted by budget and per-slot cap
        :return: True when a kick may be applied
        :rtype: bool
        """
        env: EnvState = self._require_state()
        if env.done:
            return False
        cap: int | None = self.config.max_kicks_per_slot
        if cap is not None and env.kicks_in_slot >= cap:
            return False
        next_total: float = (env.total_kick_count + 1) * self.config.k_step
        return next_total < self.config.kick_budget

    def step(self, action: Action) -> tuple[np.ndarray, float, bool]:
        """
        Apply one action
        :param action: KICK or GO_ON
        :type action: Action
        :return: observation, reward and done flag
        :rtype: tuple[np.ndarray, float, bool]
        """
        env: EnvState = self._require_state()
        if env.done:
            raise EpisodeFinishedError("episode already reached T_opt")
        if Action(action) == Action.KICK:
            if not self.kick_allowed():
                raise KickRejectedError(
                    f"kick masked at t={env.time} (slot kicks "
                    f"{env.kicks_in_slot}, total {env.total_kick})")
            env.state = kick(env.state, self.config.k_step, self.config.spin)
            env.kicks_in_slot += 1
            env.total_kick_count += 1
            env.accumulated_kick_current_slot = \
                env.kicks_in_slot * self.config.k_step
            env.total_kick = env.total_kick_count * self.config.k_step
            return observe(env.state.rho), 0.0, False
        if env.kicks_in_slot:
            env.kicks.append(
                (env.time, env.kicks_in_slot * self.config.k_step))
        env.state = self.propagators.evolve(env.state)
        env.grid_index += 1
        env.kicks_in_slot = 0
        env.accumulated_kick_current_slot = 0.0
        env.qfi_trace.append((env.time, qfi(env.state)))
        reward: float = 0.0
        if env.grid_index == self.config.n_steps:
            env.done = True
            reward = episode_reward(env.qfi_trace, self.config.reward_mode)
        return observe(env.state.rho), reward, env.done

    def _require_state(self) -> EnvState:
        if self.env_state is None:
            raise EpisodeFinishedError("environment was never reset")
        return self.env_state


def reset(config: EnvConfig) -> tuple[KickedTopEnv, EnvState, np.ndarray]:
    """
    Fresh environment and its first observation
    :param config: control problem
    :type config: EnvConfig
    :return: environment, episode state and observation
    :rtype: tuple[KickedTopEnv, EnvState, np.ndarray]
    """
    env: KickedTopEnv = KickedTopEnv(config)
    env_state, observation = env.reset()
    return env, env_state, observation


def kicks_on_grid(policy: KickPolicy, config: EnvConfig) -> np.ndarray:
    """
    Kick strength per grid index, summing kicks at equal times
    :param policy: kick schedule
    :type policy: KickPolicy
    :param config: control problem
    :type config: EnvConfig
    :return: strengths for grid indices 0..n_steps
    :rtype: np.ndarray
    """
    strengths: np.ndarray = np.zeros(config.n_steps + 1)
    for time, strength in policy.kicks:
        index: int | None = config.grid_index(time)
        if index is None:
            raise OffGridPolicyError(
                f"kick time {time!r} is not on the grid of step "
                f"{config.t_step} up to {config.t_opt}")
        strengths[index] += strength
    return strengths


def iterate_policy(policy: KickPolicy, config: EnvConfig
                   ) -> Iterator[tuple[float, StateWithDerivative]]:
    """
    States at every grid time under a policy, after that time's kicks
    :param policy: kick schedule
    :type policy: KickPolicy
    :param config: control problem
    :type config: EnvConfig
    :return: generator of (time, state)
    :rtype: Iterator[tuple[float, StateWithDerivative]]
    """
    strengths: np.ndarray = kicks_on_grid(policy, config)
    propagators: PropagatorSet = get_propagators(
        config.spin, config.params, config.t_step)
    state: StateWithDerivative = kick(
        initial_state(config), strengths[0], config.spin)
    yield 0.0, state
    for index in range(1, config.n_steps + 1):
        state = propagators.evolve(state, strengths[index])
        yield index * config.t_step, state


def simulate_policy(policy: KickPolicy, config: EnvConfig
                    ) -> tuple[list[tuple[float, float]], float]:
    """
    Replay a deterministic kick policy
    :param policy: kick schedule
    :type policy: KickPolicy
    :param config: control problem
    :type config: EnvConfig
    :return: (time, qfi) trace and reward
    :rtype: tuple[list[tuple[float, float]], float]
    """
    trace: list[tuple[float, float]] = [
        (time, qfi(state) if time > 0 else 0.0)
        for time, state in iterate_policy(policy, config)]
    return trace, episode_reward(trace, config.reward_mode)
