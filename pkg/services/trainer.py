"""
Cross-entropy reinforcement learning services.

Each iteration samples episodes with the stochastic network policy, keeps
the best share of them and fits the network to their (observation, action)
pairs. Rollouts draw from random streams derived from (seed, iteration,
episode), so the result does not depend on the number of workers.
"""
import itertools
import logging
from multiprocessing import Pool
from typing import Any, Iterable, Optional, Sequence
import numpy as np
from core.exceptions import KickedTopError
from helper.helper import (EXTRACTION_STREAM, ROLLOUT_STREAM, SHUFFLE_STREAM,
                           STUDY_STREAM, derive_rng)
from models.episode import EpisodeRecord
from models.policy_network import PolicyNetwork, TrainBatch
from schemas.environment import EnvConfig
from schemas.policy import KickPolicy
from schemas.trainer import (StudyRow, TrainerConfig, TrainingTrace,
                             TrainingTraceRow)
from services.environment import KickedTopEnv, simulate_policy

logger: logging.Logger = logging.getLogger(__name__)


def run_episode(net: PolicyNetwork, config: EnvConfig,
                rng: np.random.Generator) -> EpisodeRecord:
    """
    Roll out one episode with actions sampled from the network
    :param net: policy network, read only
    :type net: PolicyNetwork
    :param config: control problem
    :type config: EnvConfig
    :param rng: random stream of the episode
    :type rng: np.random.Generator
    :return: observations, actions, reward and resulting policy
    :rtype: EpisodeRecord
    """
    env: KickedTopEnv = KickedTopEnv(config)
    _, observation = env.reset()
    observations: list[np.ndarray] = []
    actions: list[int] = []
    reward: float = 0.0
    done: bool = False
    while not done:
        action = net.sample_action(observation, rng, env.kick_allowed())
        observations.append(observation)
        actions.append(int(action))
        observation, reward, done = env.step(action)
    return EpisodeRecord(
        observations=np.array(observations), actions=np.array(actions),
        reward=reward, policy=env.env_state.policy,
        qfi_trace=list(env.env_state.qfi_trace))


def _rollout(task: tuple[PolicyNetwork, EnvConfig, tuple[int, ...]]
             ) -> EpisodeRecord:
    net, config, keys = task
    return run_episode(net, config, derive_rng(*keys))


def select_elite(rewards: Sequence[float], n_elite: int) -> list[int]:
    """
    Indices of the n_elite highest rewards, ties to the earlier episode
    :param rewards: reward per episode
    :type rewards: Sequence[float]
    :param n_elite: number of episodes to keep
    :type n_elite: int
    :return: elite indices, best first
    :rtype: list[int]
    """
    order: list[int] = sorted(range(len(rewards)),
                              key=lambda index: (-rewards[index], index))
    return order[:n_elite]


class CrossEntropyTrainer:
    """
    Cross-entropy method for one agent configuration.
    """

    def __init__(self, config: TrainerConfig, jobs: int = 1) -> None:
        self.config: TrainerConfig = config
        self.jobs: int = max(1, jobs)
        self._pool: Optional[Any] = None

    def __enter__(self) -> 'CrossEntropyTrainer':
        if self.jobs > 1:
            self._pool = Pool(self.jobs)
        return self

    def __exit__(self, *exc_info: Any) -> None:
        if self._pool is not None:
            self._pool.close()
            self._pool.join()
            self._pool = None

    def new_network(self) -> PolicyNetwork:
        """
        Freshly initialized network for this configuration
        """
        return PolicyNetwork(
            obs_dim=self.config.env.obs_dim,
            hidden_units=self.config.hidden_units,
            rng_seed=self.config.rng_seed)

    def sample_episodes(self, net: PolicyNetwork,
                        keys: Iterable[tuple[int, ...]]
                        ) -> list[EpisodeRecord]:
        """
        Episodes for a frozen snapshot of the network, one per key tuple
        :param net: policy network
        :type net: PolicyNetwork
        :param keys: random stream keys, one tuple per episode
        :type keys: Iterable[tuple[int, ...]]
        :return: episode records in key order
        :rtype: list[EpisodeRecord]
        """
        snapshot: PolicyNetwork = net.snapshot()
        tasks: list[tuple] = [(snapshot, self.config.env,
                               (self.config.rng_seed, *key)) for key in keys]
        if self._pool is not None:
            return self._pool.map(_rollout, tasks)
        return [_rollout(task) for task in tasks]

    def _fit(self, net: PolicyNetwork, batch: TrainBatch, iteration: int
             ) -> float:
        rng: np.random.Generator = derive_rng(
            self.config.rng_seed, SHUFFLE_STREAM, iteration)
        weighted_loss: float = 0.0
        seen: int = 0
        for _ in range(self.config.epochs_per_iteration):
            order: np.ndarray = rng.permutation(len(batch))
            for start in range(0, len(batch), self.config.batch_size):
                minibatch: TrainBatch = batch.subset(
                    order[start:start + self.config.batch_size])
                weighted_loss += net.train_step(
                    minibatch, self.config.learning_rate) * len(minibatch)
                seen += len(minibatch)
        return weighted_loss / seen

    def iterate(self, net: PolicyNetwork, iteration: int
                ) -> tuple[TrainingTraceRow, EpisodeRecord]:
        """
        One iteration: rollouts, elite selection, training
        :param net: network, updated in place
        :type net: PolicyNetwork
        :param iteration: iteration index, selects the random streams
        :type iteration: int
        :return: trace row and best episode of the iteration
        :rtype: tuple[TrainingTraceRow, EpisodeRecord]
        """
        episodes: list[EpisodeRecord] = self.sample_episodes(
            net, ((ROLLOUT_STREAM, iteration, index)
                  for index in range(self.config.n_episodes)))
        rewards: np.ndarray = np.array([ep.reward for ep in episodes])
        elite: list[int] = select_elite(rewards.tolist(),
                                        self.config.n_elite)
        all_zero: bool = bool(np.all(rewards == 0))
        if all_zero:
            logger.warning("iteration %d: all rewards are zero", iteration)
        batch: TrainBatch = TrainBatch.from_actions(
            np.vstack([episodes[i].observations for i in elite]),
            np.concatenate([episodes[i].actions for i in elite]))
        loss: float = self._fit(net, batch, iteration)
        row: TrainingTraceRow = TrainingTraceRow(
            iteration=iteration, mean_reward=float(rewards.mean()),
            max_reward=float(rewards.max()),
            std_reward=float(rewards.std()),
            elite_threshold=float(rewards[elite[-1]]), loss=loss,
            all_zero_rewards=all_zero)
        logger.info(
            "iteration %d: mean %.4g max %.4g elite>=%.4g loss %.4f",
            iteration, row.mean_reward, row.max_reward, row.elite_threshold,
            loss)
        return row, episodes[elite[0]]

    def run_iteration(self, net: PolicyNetwork, iteration: int
                      ) -> tuple[TrainingTraceRow, PolicyNetwork]:
        """
        One iteration returning the trace row and the updated network
        """
        row, _ = self.iterate(net, iteration)
        return row, net

    def train(self, net: PolicyNetwork | None = None,
              start_iteration: int = 0, trace: TrainingTrace | None = None,
              n_iterations: int | None = None
              ) -> tuple[PolicyNetwork, TrainingTrace]:
        """
        Run iterations, continuing a network and trace when given
        :param net: network to continue, a fresh one when omitted
        :type net: PolicyNetwork
        :param start_iteration: index of the first iteration
        :type start_iteration: int
        :param trace: trace to extend
        :type trace: TrainingTrace
        :param n_iterations: iterations to run, defaults to the config
        :type n_iterations: int
        :return: trained network and trace
        :rtype: tuple[PolicyNetwork, TrainingTrace]
        """
        if net is None:
            net = self.new_network()
        if trace is None:
            trace = TrainingTrace()
        count: int = self.config.n_iterations if n_iterations is None \
            else n_iterations
        for iteration in range(start_iteration, start_iteration + count):
            row, best = self.iterate(net, iteration)
            trace.rows.append(row)
            if trace.best_reward is None or best.reward > trace.best_reward:
                trace.best_reward = best.reward
                trace.best_policy = best.policy
        return net, trace

    def extract_policy(self, net: PolicyNetwork
                       ) -> tuple[KickPolicy, float]:
        """
        Best of n_samples stochastic episodes of a trained network
        :param net: trained network
        :type net: PolicyNetwork
        :return: policy and its reward
        :rtype: tuple[KickPolicy, float]
        """
        episodes: list[EpisodeRecord] = self.sample_episodes(
            net, ((EXTRACTION_STREAM, index)
                  for index in range(self.config.n_samples)))
        best: int = select_elite([ep.reward for ep in episodes], 1)[0]
        return episodes[best].policy, episodes[best].reward

    def evaluate(self, net: PolicyNetwork, tag: int, n: int) -> list[float]:
        """
        Rewards of n stochastic episodes on a study stream
        """
        return [ep.reward for ep in self.sample_episodes(
            net, ((STUDY_STREAM, tag, index) for index in range(n)))]


def train_agent(config: TrainerConfig, jobs: int = 1
                ) -> tuple[PolicyNetwork, TrainingTrace]:
    """
    Train a fresh seeded network for config.n_iterations iterations
    :param config: trainer configuration
    :type config: TrainerConfig
    :param jobs: parallel rollout workers
    :type jobs: int
    :return: trained network and its trace
    :rtype: tuple[PolicyNetwork, TrainingTrace]
    """
    with CrossEntropyTrainer(config, jobs) as trainer:
        return trainer.train()


def extract_policy(net: PolicyNetwork, config: TrainerConfig, jobs: int = 1
                   ) -> tuple[KickPolicy, float]:
    """
    Deterministic policy of a trained network, see
     CrossEntropyTrainer.extract_policy
    """
    with CrossEntropyTrainer(config, jobs) as trainer:
        return trainer.extract_policy(net)


def _study_row(axis: str, value: int, rewards: list[float], n_agents: int
               ) -> StudyRow:
    values: np.ndarray = np.array(rewards)
    return StudyRow(axis=axis, value=value, mean_reward=float(values.mean()),
                    std_reward=float(values.std()), n_agents=n_agents,
                    n_rewards=values.size)


def stability_study(
        base: TrainerConfig, iteration_grid: Sequence[int],
        episode_grid: Sequence[int], episodes_per_agent: int = 20,
        jobs: int = 1) -> list[StudyRow]:
    """
    Learning curve and stability over agents: mean and standard deviation
     of sampled rewards per number of iterations and of episodes
    :param base: configuration; n_episodes is fixed along the iteration
     axis and n_iterations along the episode axis
    :type base: TrainerConfig
    :param iteration_grid: numbers of iterations
    :type iteration_grid: Sequence[int]
    :param episode_grid: numbers of episodes per iteration
    :type episode_grid: Sequence[int]
    :param episodes_per_agent: episodes sampled per trained agent
    :type episodes_per_agent: int
    :param jobs: parallel rollout workers
    :type jobs: int
    :return: one row per grid point
    :rtype: list[StudyRow]
    """
    if not iteration_grid and not episode_grid:
        raise ValueError("stability study needs a non-empty grid")
    rows: list[StudyRow] = []
    iterations: list[int] = sorted(set(iteration_grid))
    collected: dict[int, list[float]] = {value: [] for value in iterations}
    for agent in range(base.n_agents if iterations else 0):
        config: TrainerConfig = TrainerConfig.parse_obj(
            {**base.dict(), "rng_seed": base.rng_seed + agent})
        with CrossEntropyTrainer(config, jobs) as trainer:
            net: PolicyNetwork = trainer.new_network()
            trace: TrainingTrace = TrainingTrace()
            done: int = 0
            for target in iterations:
                trainer.train(net, done, trace, target - done)
                done = target
                collected[target].extend(
                    trainer.evaluate(net, target, episodes_per_agent))
        logger.info("study agent %d trained to %d iterations", agent, done)
    rows.extend(_study_row("iterations", value, collected[value],
                           base.n_agents) for value in iterations)
    for n_episodes in sorted(set(episode_grid)):
        rewards: list[float] = []
        for agent in range(base.n_agents):
            config = TrainerConfig.parse_obj(
                {**base.dict(), "n_episodes": n_episodes,
                 "rng_seed": base.rng_seed + agent})
            with CrossEntropyTrainer(config, jobs) as trainer:
                net, _ = trainer.train()
                rewards.extend(trainer.evaluate(
                    net, config.n_iterations, episodes_per_agent))
        rows.append(_study_row("episodes", n_episodes, rewards,
                               base.n_agents))
        logger.info("study: %d episodes per iteration done", n_episodes)
    return rows


def exhaustive_optimum(config: EnvConfig) -> tuple[KickPolicy, float]:
    """
    Best policy by enumeration of all kick counts per slot; only for
     micro-instances with a per-slot cap
    :param config: control problem with max_kicks_per_slot set
    :type config: EnvConfig
    :return: optimal policy and its reward
    :rtype: tuple[KickPolicy, float]
    """
    if config.max_kicks_per_slot is None:
        raise KickedTopError("enumeration needs max_kicks_per_slot")
    best_policy: KickPolicy = KickPolicy()
    best_reward: float = -np.inf
    for counts in itertools.product(range(config.max_kicks_per_slot + 1),
                                    repeat=config.n_steps):
        if sum(counts) * config.k_step >= config.kick_budget:
            continue
        policy: KickPolicy = KickPolicy(kicks=tuple(
            (slot * config.t_step, count * config.k_step)
            for slot, count in enumerate(counts) if count))
        _, reward = simulate_policy(policy, config)
        if reward > best_reward:
            best_policy, best_reward = policy, reward
    return best_policy, best_reward
