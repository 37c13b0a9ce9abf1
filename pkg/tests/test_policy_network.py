"""
Tests of the policy network and its Adam training.
"""
import numpy as np
import pytest
from core.exceptions import DimensionMismatchError, EmptyBatchError
from models.policy_network import PolicyNetwork, TrainBatch, softmax
from schemas.environment import Action


def _batch(rng: np.random.Generator, size: int = 32, obs_dim: int = 8
           ) -> TrainBatch:
    observations = rng.normal(size=(size, obs_dim))
    actions = (observations[:, 0] > 0).astype(int)
    return TrainBatch.from_actions(observations, actions)


def test_softmax_is_stable() -> None:
    probabilities = softmax(np.array([[1000.0, 1000.0], [0.0, -1000.0]]))
    np.testing.assert_allclose(probabilities, [[0.5, 0.5], [1.0, 0.0]])


def test_forward_gives_probabilities(rng: np.random.Generator) -> None:
    net = PolicyNetwork(obs_dim=8, hidden_units=16, rng_seed=3)
    probabilities = net.forward(rng.normal(size=(5, 8)))
    assert probabilities.shape == (5, 2)
    np.testing.assert_allclose(probabilities.sum(axis=1), 1.0)


def test_initialization_is_seeded() -> None:
    first = PolicyNetwork(obs_dim=8, hidden_units=16, rng_seed=11)
    second = PolicyNetwork(obs_dim=8, hidden_units=16, rng_seed=11)
    np.testing.assert_array_equal(first.w1, second.w1)
    np.testing.assert_array_equal(first.b1, 0.0)
    limit = np.sqrt(6.0 / (8 + 16))
    assert np.abs(first.w1).max() <= limit


def test_gradients_match_finite_differences(rng: np.random.Generator
                                            ) -> None:
    net = PolicyNetwork(obs_dim=4, hidden_units=6, rng_seed=5)
    batch = _batch(rng, size=10, obs_dim=4)
    _, grads = net.gradients(batch)
    step = 1e-6
    for name in ("w1", "b1", "w2", "b2"):
        parameter = getattr(net, name)
        index = tuple(0 for _ in parameter.shape)
        original = parameter[index]
        parameter[index] = original + step
        upper = net.loss(batch)
        parameter[index] = original - step
        lower = net.loss(batch)
        parameter[index] = original
        assert grads[name][index] == pytest.approx(
            (upper - lower) / (2 * step), abs=1e-6)


def test_training_reduces_loss(rng: np.random.Generator) -> None:
    net = PolicyNetwork(obs_dim=8, hidden_units=32, rng_seed=1)
    batch = _batch(rng, size=64)
    before = net.loss(batch)
    for _ in range(200):
        net.train_step(batch, lr=0.01)
    assert net.loss(batch) < 0.5 * before
    assert net.adam_step == 200


def test_masked_kick_consumes_the_same_draw() -> None:
    net = PolicyNetwork(obs_dim=4, hidden_units=4, rng_seed=0)
    masked, free = np.random.default_rng(9), np.random.default_rng(9)
    observation = np.ones(4)
    assert net.sample_action(observation, masked, False) == Action.GO_ON
    net.sample_action(observation, free, True)
    assert masked.random() == free.random()


def test_sampling_follows_probabilities() -> None:
    net = PolicyNetwork(obs_dim=4, hidden_units=8, rng_seed=2)
    observation = np.full(4, 0.3)
    draws = np.random.default_rng(4)
    kicks = sum(net.sample_action(observation, draws) == Action.KICK
                for _ in range(4000))
    expected = net.forward(observation)[Action.KICK]
    assert kicks / 4000 == pytest.approx(expected, abs=0.03)


def test_snapshot_is_frozen_copy() -> None:
    net = PolicyNetwork(obs_dim=4, hidden_units=4, rng_seed=0)
    frozen = net.snapshot()
    with pytest.raises(ValueError):
        frozen.w1[0, 0] = 1.0
    np.testing.assert_array_equal(frozen.w2, net.w2)


def test_state_dict_round_trip(rng: np.random.Generator) -> None:
    net = PolicyNetwork(obs_dim=8, hidden_units=8, rng_seed=4)
    net.train_step(_batch(rng), lr=0.01)
    restored = PolicyNetwork.from_state_dict(net.state_dict())
    observations = rng.normal(size=(3, 8))
    np.testing.assert_array_equal(restored.forward(observations),
                                  net.forward(observations))
    np.testing.assert_array_equal(restored.first_moments["w1"],
                                  net.first_moments["w1"])
    assert restored.adam_step == 1


def test_empty_batch_rejected() -> None:
    net = PolicyNetwork(obs_dim=4, hidden_units=4)
    with pytest.raises(EmptyBatchError):
        net.train_step(TrainBatch(np.zeros((0, 4)), np.zeros((0, 2))))


def test_dimension_mismatch_rejected() -> None:
    net = PolicyNetwork(obs_dim=4, hidden_units=4)
    with pytest.raises(DimensionMismatchError):
        net.forward(np.zeros(5))
    with pytest.raises(DimensionMismatchError):
        net.set_parameters({**net.parameters, "w1": np.zeros((3, 3))})


def _zeroed(net: PolicyNetwork, **overrides: list[float]) -> PolicyNetwork:
    parameters = {name: np.zeros_like(value)
                  for name, value in net.parameters.items()}
    parameters.update({name: np.array(value)
                       for name, value in overrides.items()})
    net.set_parameters(parameters)
    return net


def test_output_bias_alone_sets_probabilities() -> None:
    net = PolicyNetwork(obs_dim=4, hidden_units=6)
    np.testing.assert_allclose(_zeroed(net).forward(np.ones(4)), [0.5, 0.5])
    probabilities = _zeroed(net, b2=[0.0, 10.0]).forward(np.ones(4))
    np.testing.assert_allclose(probabilities, [4.5398e-5, 0.9999546],
                               rtol=1e-4)


def test_even_odds_kick_half_the_time() -> None:
    net = _zeroed(PolicyNetwork(obs_dim=4, hidden_units=4))
    draws = np.random.default_rng(21)
    observation = np.zeros(4)
    kicks = sum(net.sample_action(observation, draws) == Action.KICK
                for _ in range(100_000))
    assert kicks / 100_000 == pytest.approx(0.5, abs=0.01)


def test_every_gradient_element_matches_finite_differences(
        rng: np.random.Generator) -> None:
    step = 1e-6
    for draw in range(50):
        net = PolicyNetwork(obs_dim=4, hidden_units=5, rng_seed=draw)
        net.b1 = rng.normal(scale=0.1, size=5)
        net.b2 = rng.normal(scale=0.1, size=2)
        batch = _batch(rng, size=12, obs_dim=4)
        _, grads = net.gradients(batch)
        for name, parameter in net.parameters.items():
            for index in np.ndindex(parameter.shape):
                original = parameter[index]
                parameter[index] = original + step
                upper = net.loss(batch)
                parameter[index] = original - step
                lower = net.loss(batch)
                parameter[index] = original
                assert grads[name][index] == pytest.approx(
                    (upper - lower) / (2 * step), rel=1e-5, abs=1e-8)
