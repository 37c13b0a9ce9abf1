"""
Tests of the presets, baselines, training runs and exports.
"""
import math
from pathlib import Path
import numpy as np
import pytest
from pydantic import ValidationError
from core.exceptions import KickedTopError
from models.bundle import QfiCurve, RunArtifactBundle
from schemas.dynamics import DecoherenceKind, DynamicsParams
from schemas.environment import EnvConfig, RewardMode
from schemas.experiment import ExperimentPreset, QuasiProbKind
from schemas.policy import KickPolicy
from schemas.trainer import TrainerConfig
from services.experiments import (GRID_SHAPE, PRESETS, ExperimentService,
                                  customize, export_classical,
                                  export_quasiprob, get_preset,
                                  kick_distribution_table, periodic_policy,
                                  replay_curve, run_baselines, run_training,
                                  with_superradiance)
from services.spin_algebra import coherent_state


@pytest.fixture
def tiny_micro() -> ExperimentPreset:
    return customize(get_preset("micro"), n_iterations=2, n_episodes=10,
                     n_samples=2, hidden_units=8)


@pytest.mark.parametrize(
    ("name", "gamma", "t_step", "k_step", "t_opt", "agents", "iterations",
     "episodes", "samples"),
    [("superradiant-samples", 0.01, 0.2, 0.05, 100.0, 5, 500, 50, 20),
     ("gains", 0.02, 1.0, 0.1, 100.0, 20, 300, 40, 20),
     ("rescaled-qfi", 0.01, 0.1, 0.1, 50.0, 2, 500, 50, 20),
     ("phase-damping", 0.005, 1.0, 0.1, 100.0, 1, 1000, 100, 1),
     ("learning-curve", 0.02, 1.0, 0.1, 100.0, 20, 500, 100, 20)])
def test_preset_table(name: str, gamma: float, t_step: float, k_step: float,
                      t_opt: float, agents: int, iterations: int,
                      episodes: int, samples: int) -> None:
    trainer = PRESETS[name].trainer
    assert trainer.env.spin.j == 2
    assert trainer.env.params.rate == gamma
    assert (trainer.env.t_step, trainer.env.k_step, trainer.env.t_opt) \
        == (t_step, k_step, t_opt)
    assert (trainer.n_agents, trainer.n_iterations, trainer.n_episodes,
            trainer.n_samples) == (agents, iterations, episodes, samples)
    assert trainer.elite_share == 0.1
    assert trainer.env.params.omega == pytest.approx(math.pi / 2)


def test_preset_specifics() -> None:
    assert PRESETS["phase-damping"].trainer.env.params.decoherence_kind \
        == DecoherenceKind.PHASE_DAMPING
    assert PRESETS["rescaled-qfi"].trainer.env.reward_mode \
        == RewardMode.MAX_RESCALED_QFI
    assert PRESETS["gains"].gamma_sweep
    assert PRESETS["micro"].trainer.env.max_kicks_per_slot == 3


def test_unknown_preset() -> None:
    with pytest.raises(KickedTopError, match="unknown preset"):
        get_preset("nope")


def test_customize_returns_validated_copy() -> None:
    preset = get_preset("gains")
    changed = customize(preset, seed=7,
                        reward_mode=RewardMode.MAX_RESCALED_QFI,
                        n_iterations=3)
    assert changed.trainer.rng_seed == 7
    assert changed.trainer.n_iterations == 3
    assert changed.trainer.env.reward_mode == RewardMode.MAX_RESCALED_QFI
    assert preset.trainer.n_iterations == 300
    with pytest.raises(ValidationError):
        customize(preset, n_episodes=0)


def test_with_superradiance_replaces_dynamics(closed_env: EnvConfig) -> None:
    damped = with_superradiance(closed_env, 0.05)
    assert damped.params.gamma_sr == 0.05
    assert damped.params.decoherence_kind == DecoherenceKind.SUPERRADIANT
    assert damped.t_opt == closed_env.t_opt


def test_periodic_policy(closed_env: EnvConfig) -> None:
    policy = periodic_policy(closed_env)
    assert policy.kicks == tuple((float(t), 30.0) for t in range(1, 6))
    assert len(periodic_policy(closed_env, k=2.0, period=2.0)) == 2


def test_baselines_of_closed_top(closed_env: EnvConfig) -> None:
    preset = ExperimentPreset(name="closed",
                              trainer=TrainerConfig(env=closed_env))
    curves = run_baselines(preset)
    assert set(curves) == {"top", "periodic_k30"}
    top = curves["top"]
    np.testing.assert_allclose(top.times, np.arange(6.0))
    np.testing.assert_allclose(top.qfi, 4.0 * top.times ** 2, rtol=1e-8,
                               atol=1e-10)
    np.testing.assert_allclose(top.k_acc, 0.0)
    np.testing.assert_allclose(curves["periodic_k30"].k_acc,
                               [0, 30, 60, 90, 120, 150])


def test_replay_curve_reward_is_final_qfi(small_env: EnvConfig) -> None:
    policy = KickPolicy.from_pairs([(1.0, 1.0)])
    curve, reward = replay_curve("rl", policy, small_env)
    assert reward == pytest.approx(curve.final)
    assert curve.rescaled[0] == 0.0


def test_kick_table_reference(closed_env: EnvConfig) -> None:
    table = kick_distribution_table(KickPolicy(), closed_env)
    assert len(table) == 0
    times = [t for t, _ in table.reference]
    assert times == pytest.approx([0, 1, 2, 3, 4, 5])
    jx = [value for _, value in table.reference]
    np.testing.assert_allclose(jx, [0, -2, 0, 2, 0, -2], atol=1e-10)


def test_kick_table_angles(closed_env: EnvConfig) -> None:
    table = kick_distribution_table(periodic_policy(closed_env, k=0.3),
                                    closed_env)
    assert len(table) == 5
    for time, k, angle in table.kicks:
        assert k == 0.3
        assert angle == pytest.approx(math.pi / 2 * time)


def test_export_quasiprob_frames(small_env: EnvConfig) -> None:
    policy = KickPolicy.from_pairs([(2.0, 0.5)])
    frames = export_quasiprob((policy, small_env), (6, 12),
                              QuasiProbKind.HUSIMI, frames=True)
    assert len(frames) == small_env.n_steps + 1
    final = export_quasiprob((policy, small_env), (6, 12),
                             QuasiProbKind.HUSIMI)
    np.testing.assert_allclose(final.values, frames[-1].values)
    rho = coherent_state(1, small_env.initial_state)
    grid = export_quasiprob(rho, (6, 12), QuasiProbKind.WIGNER)
    assert grid.kind == "wigner" and grid.shape == (6, 12)


def test_wigner_of_kicked_final_state_has_negative_values() -> None:
    config = EnvConfig(spin=2, params=DynamicsParams.superradiant(0.001),
                       t_step=1.0, k_step=0.1, t_opt=2.0)
    # a quarter turn of Jy^2 twisting splits the state into a cat
    policy = KickPolicy.from_pairs([(1.0, 2.5 * math.pi)])
    wigner = export_quasiprob((policy, config), GRID_SHAPE,
                              QuasiProbKind.WIGNER)
    husimi = export_quasiprob((policy, config), GRID_SHAPE,
                              QuasiProbKind.HUSIMI)
    assert wigner.values.min() < -1e-3
    assert husimi.values.min() > -1e-12


def test_export_classical_is_seeded(small_env: EnvConfig) -> None:
    policy = KickPolicy.from_pairs([(1.0, 0.5)])
    first = export_classical(policy, small_env, 100, seed=5)
    second = export_classical(policy, small_env, 100, seed=5)
    np.testing.assert_array_equal(first.points, second.points)
    frames = export_classical(policy, small_env, 100, seed=5, frames=True)
    assert len(frames) == small_env.n_steps + 1


def test_run_training_writes_bundle(tiny_micro: ExperimentPreset,
                                    tmp_path: Path) -> None:
    bundle = run_training(tiny_micro, out_dir=tmp_path)
    assert {"rl", "top", "periodic_k30"} <= set(bundle.curves)
    assert set(bundle.grids) == {"husimi_final", "wigner_final"}
    assert bundle.kick_table is not None
    assert len(bundle.trace) == 2
    for name in ("config.yaml", "policy.txt", "network.json", "trace.csv",
                 "kicks.csv", "kick_reference.csv", "curves/rl.csv",
                 "curves/top.csv", "grids/wigner_final.csv",
                 "agent_0/policy.txt"):
        assert (tmp_path / name).exists(), name


def test_train_agents_shift_seeds(tiny_micro: ExperimentPreset) -> None:
    trainer = customize(tiny_micro, n_agents=2).trainer
    bundles = ExperimentService.train_agents(trainer)
    assert [bundle.agent for bundle in bundles] == [0, 1]
    assert bundles[0].network.parameters["w1"].tolist() \
        != bundles[1].network.parameters["w1"].tolist()


def test_gain_sweep_uses_best_agent(monkeypatch: pytest.MonkeyPatch) -> None:
    preset = get_preset("gains")

    def fake_agents(trainer_config: TrainerConfig, jobs: int = 1,
                    *_: object) -> list[RunArtifactBundle]:
        env = trainer_config.env
        return [RunArtifactBundle(
            preset=preset, curves={"rl": QfiCurve(
                "rl", [0.0, env.t_opt], [0.0, value], [0.0, 0.0])})
            for value in (10.0, 40.0)]

    monkeypatch.setattr(ExperimentService, "train_agents",
                        staticmethod(fake_agents))
    rows = ExperimentService.run_gain_sweep(preset, gammas=(0.02,))
    assert len(rows) == 1
    row = rows[0]
    assert row.gamma_sr == 0.02
    assert row.rl_qfi == 40.0
    assert row.gain_unkicked == pytest.approx(40.0 / row.top_max_qfi)
    assert row.gain_plateau == pytest.approx(40.0 / row.plateau_qfi)
