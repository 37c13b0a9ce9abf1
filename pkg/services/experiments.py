"""
Experiment services: named presets, baseline curves, training runs, gain
sweeps and exports of quasi-probabilities and kick tables.
"""
import logging
from pathlib import Path
from typing import Optional, Sequence, Union
import numpy as np
from core.exceptions import ArtifactError, KickedTopError
from db.artifacts import save_bundle
from helper.helper import derive_rng
from models.bundle import KickTable, QfiCurve, RunArtifactBundle
from models.phase_space import Ensemble, SphereGrid
from models.state import StateWithDerivative
from schemas.dynamics import DynamicsParams
from schemas.environment import EnvConfig, RewardMode
from schemas.experiment import (Baseline, ExperimentPreset, GainRow,
                                QuasiProbKind)
from schemas.policy import KickPolicy
from schemas.trainer import TrainerConfig
from services.classical import propagate_ensemble, sample_husimi
from services.environment import iterate_policy, simulate_policy
from services.metrology import gain_plateau, gain_unkicked, plateau_value
from services.quasiprob import quasiprob_grid
from services.spin_algebra import expectation_vector
from services.trainer import CrossEntropyTrainer

logger: logging.Logger = logging.getLogger(__name__)

PERIODIC_KICK: float = 30.0
PERIODIC_PERIOD: float = 1.0
GAMMA_SWEEP: tuple[float, ...] = (0.005, 0.01, 0.02, 0.05, 0.1)
GRID_SHAPE: tuple[int, int] = (40, 80)
CLASSICAL_STREAM: int = 4


def _preset(name: str, description: str, env: EnvConfig,
            gamma_sweep: tuple[float, ...] = (), **trainer
            ) -> ExperimentPreset:
    return ExperimentPreset(name=name, description=description,
                            trainer=TrainerConfig(env=env, **trainer),
                            gamma_sweep=gamma_sweep)


PRESETS: dict[str, ExperimentPreset] = {preset.name: preset for preset in (
    _preset("superradiant-samples",
            "Sampled policies under superradiant damping",
            EnvConfig(spin=2, params=DynamicsParams.superradiant(0.01),
                      t_step=0.2, k_step=0.05, t_opt=100.0),
            n_agents=5, n_iterations=500, n_episodes=50, n_samples=20),
    _preset("gains", "Gains over the top and the plateau",
            EnvConfig(spin=2, params=DynamicsParams.superradiant(0.02),
                      t_step=1.0, k_step=0.1, t_opt=100.0),
            gamma_sweep=GAMMA_SWEEP, n_agents=20, n_iterations=300,
            n_episodes=40, n_samples=20),
    _preset("rescaled-qfi", "Maximal rescaled QFI I(t)/t",
            EnvConfig(spin=2, params=DynamicsParams.superradiant(0.01),
                      t_step=0.1, k_step=0.1, t_opt=50.0,
                      reward_mode=RewardMode.MAX_RESCALED_QFI),
            n_agents=2, n_iterations=500, n_episodes=50, n_samples=20),
    _preset("phase-damping", "Kicked top under phase damping",
            EnvConfig(spin=2, params=DynamicsParams.phase_damping(0.005),
                      t_step=1.0, k_step=0.1, t_opt=100.0),
            n_agents=1, n_iterations=1000, n_episodes=100, n_samples=1),
    _preset("learning-curve", "Learning curve and agent stability",
            EnvConfig(spin=2, params=DynamicsParams.superradiant(0.02),
                      t_step=1.0, k_step=0.1, t_opt=100.0),
            n_agents=20, n_iterations=500, n_episodes=100, n_samples=20),
    _preset("micro", "Enumerable toy instance",
            EnvConfig(spin=1, params=DynamicsParams.superradiant(0.02),
                      t_step=1.0, k_step=1.0, t_opt=3.0,
                      max_kicks_per_slot=3),
            n_agents=1, n_iterations=50, n_episodes=200, n_samples=20,
            hidden_units=64, learning_rate=0.005),
)}


def get_preset(name: str) -> ExperimentPreset:
    """
    Preset by name
    :param name: preset name
    :type name: str
    :return: preset
    :rtype: ExperimentPreset
    """
    try:
        return PRESETS[name]
    except KeyError as exc:
        raise KickedTopError(
            f"unknown preset {name!r}, choose from {sorted(PRESETS)}"
        ) from exc


def customize(preset: ExperimentPreset, seed: Optional[int] = None,
              reward_mode: Optional[RewardMode] = None,
              **trainer) -> ExperimentPreset:
    """
    Copy of a preset with a new seed, reward mode or trainer fields
    :param preset: preset to copy
    :type preset: ExperimentPreset
    :param seed: base seed of the agents
    :type seed: int
    :param reward_mode: reward of the episodes
    :type reward_mode: RewardMode
    :return: validated preset
    :rtype: ExperimentPreset
    """
    payload: dict = preset.dict()
    if seed is not None:
        payload["trainer"]["rng_seed"] = seed
    if reward_mode is not None:
        payload["trainer"]["env"]["reward_mode"] = RewardMode(reward_mode)
    payload["trainer"].update(trainer)
    return ExperimentPreset.parse_obj(payload)


def with_superradiance(config: EnvConfig, gamma: float) -> EnvConfig:
    """
    Same control problem with superradiant damping at rate gamma
    """
    payload: dict = config.dict()
    payload["params"] = DynamicsParams.superradiant(
        gamma, config.params.omega)
    return EnvConfig.parse_obj(payload)


def periodic_policy(config: EnvConfig, k: float = PERIODIC_KICK,
                    period: float = PERIODIC_PERIOD) -> KickPolicy:
    """
    Kicks of strength k at every multiple of the period up to T_opt
    :param config: control problem
    :type config: EnvConfig
    :param k: kick strength
    :type k: float
    :param period: kick period
    :type period: float
    :return: periodic policy
    :rtype: KickPolicy
    """
    count: int = int(np.floor(config.t_opt / period + 1e-9))
    return KickPolicy.from_pairs(
        (index * period, k) for index in range(1, count + 1))


def baseline_policy(baseline: Baseline, config: EnvConfig) -> KickPolicy:
    """
    Policy of a reference model
    """
    if Baseline(baseline) == Baseline.PERIODIC_K30:
        return periodic_policy(config)
    return KickPolicy()


def replay_curve(name: str, policy: KickPolicy, config: EnvConfig
                 ) -> tuple[QfiCurve, float]:
    """
    QFI curve and reward of a deterministic policy
    """
    trace, reward = simulate_policy(policy, config)
    return QfiCurve.from_trace(name, trace, policy), reward


class ExperimentService:
    """
    Orchestration of presets into curves, bundles and tables.
    """

    @staticmethod
    def run_baselines(preset: ExperimentPreset) -> dict[str, QfiCurve]:
        """
        QFI curves of the reference models under the preset's dynamics
        :param preset: experiment preset
        :type preset: ExperimentPreset
        :return: curve per baseline name
        :rtype: dict[str, QfiCurve]
        """
        config: EnvConfig = preset.trainer.env
        curves: dict[str, QfiCurve] = {}
        for baseline in preset.baselines:
            curves[baseline.value], _ = replay_curve(
                baseline.value, baseline_policy(baseline, config), config)
        return curves

    @staticmethod
    def train_agents(trainer_config: TrainerConfig, jobs: int = 1,
                     out_dir: Optional[Path] = None,
                     preset: Optional[ExperimentPreset] = None
                     ) -> list[RunArtifactBundle]:
        """
        Train every agent of a configuration and extract its policy; each
         agent bundle is saved as soon as it is complete
        :param trainer_config: configuration, agent a uses seed + a
        :type trainer_config: TrainerConfig
        :param jobs: parallel rollout workers
        :type jobs: int
        :param out_dir: directory for the per-agent bundles
        :type out_dir: Path
        :param preset: preset recorded in the bundles
        :type preset: ExperimentPreset
        :return: one bundle per agent
        :rtype: list[RunArtifactBundle]
        """
        preset = preset or ExperimentPreset(name="custom",
                                            trainer=trainer_config)
        bundles: list[RunArtifactBundle] = []
        for agent in range(trainer_config.n_agents):
            config: TrainerConfig = TrainerConfig.parse_obj(
                {**trainer_config.dict(),
                 "rng_seed": trainer_config.rng_seed + agent})
            with CrossEntropyTrainer(config, jobs) as trainer:
                net, trace = trainer.train()
                policy, _ = trainer.extract_policy(net)
            curve, reward = replay_curve("rl", policy, config.env)
            bundle: RunArtifactBundle = RunArtifactBundle(
                preset=preset, curves={"rl": curve}, policy=policy,
                reward=reward, network=net, trace=trace, agent=agent)
            bundles.append(bundle)
            logger.info("agent %d: reward %.6g with %d kicks", agent, reward,
                        len(policy))
            if out_dir is not None:
                save_bundle(bundle, out_dir / f"agent_{agent}")
        return bundles

    @staticmethod
    def run_training(preset: ExperimentPreset, jobs: int = 1,
                     out_dir: Optional[Path] = None) -> RunArtifactBundle:
        """
        Train all agents of a preset and collect the artifacts of the best
        :param preset: experiment preset
        :type preset: ExperimentPreset
        :param jobs: parallel rollout workers
        :type jobs: int
        :param out_dir: directory receiving the bundle and agent bundles
        :type out_dir: Path
        :return: bundle of the best agent with baselines, grids and table
        :rtype: RunArtifactBundle
        """
        config: EnvConfig = preset.trainer.env
        agents: list[RunArtifactBundle] = ExperimentService.train_agents(
            preset.trainer, jobs, out_dir, preset)
        best: RunArtifactBundle = max(agents, key=lambda b: b.reward)
        best.curves = {**ExperimentService.run_baselines(preset),
                       **best.curves}
        final: StateWithDerivative = list(
            iterate_policy(best.policy, config))[-1][1]
        rows, cols = GRID_SHAPE
        for kind in QuasiProbKind:
            best.grids[f"{kind.value}_final"] = quasiprob_grid(
                final.rho, rows, cols, kind)
        best.kick_table = kick_distribution_table(best.policy, config)
        if out_dir is not None:
            save_bundle(best, out_dir)
        return best

    @staticmethod
    def run_gain_sweep(preset: ExperimentPreset,
                       gammas: Optional[Sequence[float]] = None,
                       jobs: int = 1) -> list[GainRow]:
        """
        Gains of trained policies over the top maximum and the periodic
         plateau for a grid of superradiant rates
        :param preset: preset providing the trainer configuration
        :type preset: ExperimentPreset
        :param gammas: superradiant rates, defaults to the preset's sweep
        :type gammas: Sequence[float]
        :param jobs: parallel rollout workers
        :type jobs: int
        :return: one row per rate
        :rtype: list[GainRow]
        """
        rates: Sequence[float] = gammas or preset.gamma_sweep or GAMMA_SWEEP
        rows: list[GainRow] = []
        for gamma in rates:
            env: EnvConfig = with_superradiance(preset.trainer.env, gamma)
            trainer_config: TrainerConfig = TrainerConfig.parse_obj(
                {**preset.trainer.dict(), "env": env})
            agents: list[RunArtifactBundle] = ExperimentService.train_agents(
                trainer_config, jobs)
            rl_qfi: float = max(agent.curves["rl"].final for agent in agents)
            top, _ = replay_curve("top", KickPolicy(), env)
            periodic, _ = replay_curve("periodic", periodic_policy(env), env)
            row: GainRow = GainRow(
                gamma_sr=gamma, rl_qfi=rl_qfi,
                top_max_qfi=float(np.max(top.qfi)),
                plateau_qfi=plateau_value(periodic.qfi),
                gain_unkicked=gain_unkicked(rl_qfi, top.qfi),
                gain_plateau=gain_plateau(rl_qfi, periodic.qfi))
            logger.info("gamma_sr=%g: gains %.3f over top, %.3f over plateau",
                        gamma, row.gain_unkicked, row.gain_plateau)
            rows.append(row)
        return rows


def export_quasiprob(
        source: Union[np.ndarray, tuple[KickPolicy, EnvConfig]],
        grid: tuple[int, int], kind: QuasiProbKind, frames: bool = False
) -> Union[SphereGrid, list[SphereGrid]]:
    """
    Quasi-probability grid of a state, or of the final state of a policy
    :param source: density matrix or (policy, config) to replay
    :type source: Union[np.ndarray, tuple[KickPolicy, EnvConfig]]
    :param grid: (n_theta, n_phi)
    :type grid: tuple[int, int]
    :param kind: husimi or wigner
    :type kind: QuasiProbKind
    :param frames: one grid per grid time of the policy
    :type frames: bool
    :return: grid or list of frame grids
    :rtype: Union[SphereGrid, list[SphereGrid]]
    """
    n_theta, n_phi = grid
    if isinstance(source, np.ndarray):
        return quasiprob_grid(source, n_theta, n_phi, kind)
    policy, config = source
    states: list[np.ndarray] = [
        state.rho for _, state in iterate_policy(policy, config)]
    if frames:
        return [quasiprob_grid(rho, n_theta, n_phi, kind) for rho in states]
    return quasiprob_grid(states[-1], n_theta, n_phi, kind)


def export_classical(policy: KickPolicy, config: EnvConfig, size: int,
                     seed: int, frames: bool = False
                     ) -> Union[Ensemble, list[Ensemble]]:
    """
    Husimi-sampled classical ensemble propagated under a policy
    :param policy: kick schedule
    :type policy: KickPolicy
    :param config: control problem
    :type config: EnvConfig
    :param size: number of points
    :type size: int
    :param seed: seed of the sampler
    :type seed: int
    :param frames: one ensemble per grid time
    :type frames: bool
    :return: final ensemble or frames
    :rtype: Union[Ensemble, list[Ensemble]]
    """
    ensemble: Ensemble = sample_husimi(
        config.initial_state, config.spin, size,
        derive_rng(seed, CLASSICAL_STREAM))
    return propagate_ensemble(ensemble, policy, config, frames)


def kick_distribution_table(policy: KickPolicy, config: EnvConfig
                            ) -> KickTable:
    """
    Kicks with their precession angle omega t, plus <Jx> of the unkicked
     state at every grid time as reference
    :param policy: kick schedule
    :type policy: KickPolicy
    :param config: control problem
    :type config: EnvConfig
    :return: kick table
    :rtype: KickTable
    """
    omega: float = config.params.omega
    kicks: list[tuple[float, float, float]] = [
        (time, strength, omega * time) for time, strength in policy.kicks]
    reference: list[tuple[float, float]] = [
        (time, float(expectation_vector(state.rho)[0]))
        for time, state in iterate_policy(KickPolicy(), config)]
    return KickTable(kicks=kicks, reference=reference)


run_baselines = ExperimentService.run_baselines
run_training = ExperimentService.run_training
run_gain_sweep = ExperimentService.run_gain_sweep


def replay_bundle(bundle: RunArtifactBundle, tolerance: float = 1e-9
                  ) -> float:
    """
    Recompute the reward of a stored policy and compare it to the stored one
    :param bundle: loaded bundle with policy and reward
    :type bundle: RunArtifactBundle
    :param tolerance: accepted absolute deviation
    :type tolerance: float
    :return: recomputed reward
    :rtype: float
    """
    if bundle.policy is None or bundle.reward is None:
        raise ArtifactError("bundle holds no policy with reward")
    _, reward = simulate_policy(bundle.policy, bundle.preset.trainer.env)
    if abs(reward - bundle.reward) > tolerance:
        raise ArtifactError(
            f"replayed reward {reward!r} differs from stored "
            f"{bundle.reward!r}")
    return reward
