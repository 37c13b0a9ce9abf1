"""
Tests of the quantum Fisher information and the gain ratios.
"""
import math
import numpy as np
import pytest
from core.exceptions import BaselineError
from models.state import StateWithDerivative
from schemas.dynamics import DynamicsParams
from schemas.environment import EnvConfig
from schemas.policy import KickPolicy
from schemas.spin import CoherentStateParams
from services.dynamics import kick, precess
from services.environment import iterate_policy, simulate_policy
from services.experiments import PRESETS, periodic_policy
from services.metrology import (gain_plateau, gain_unkicked, plateau_value,
                                pure_state_qfi, qfi, qfi_report)
from services.spin_algebra import (build_operators, coherent_ket,
                                   coherent_state, maximally_mixed)


@pytest.mark.parametrize("j", [2, 3])
def test_pure_top_qfi_law(j: float) -> None:
    config = EnvConfig(spin=j, t_step=1.0, k_step=0.1, t_opt=10.0)
    trace, reward = simulate_policy(KickPolicy(), config)
    for time, value in trace:
        assert value == pytest.approx(2 * j * time ** 2, rel=1e-8, abs=1e-10)
    assert reward == pytest.approx(2 * j * 100.0, rel=1e-8)


def test_mixed_formula_agrees_with_pure_state_formula() -> None:
    j, t = 2, 1.7
    psi = coherent_ket(j, CoherentStateParams(theta=1.2, phi=-0.4))
    ops = build_operators(j)
    state = precess(StateWithDerivative.from_density(np.outer(
        psi, psi.conj())), t, DynamicsParams.closed())
    values, vectors = np.linalg.eigh(state.rho)
    evolved = vectors[:, -1]
    derivative = -1j * t * ops.jz @ evolved
    assert qfi(state) == pytest.approx(pure_state_qfi(evolved, derivative),
                                       rel=1e-9)
    assert values[-1] == pytest.approx(1.0)


def test_qfi_without_derivative_is_zero() -> None:
    state = StateWithDerivative.from_density(coherent_state(
        2, CoherentStateParams()))
    assert qfi(state) == 0.0


def test_maximally_mixed_state_carries_no_information() -> None:
    state = precess(StateWithDerivative.from_density(maximally_mixed(2)),
                    3.0, DynamicsParams.closed())
    assert qfi(state) == 0.0


def test_qfi_invariant_under_kicks() -> None:
    config = EnvConfig(spin=2, params=DynamicsParams.superradiant(0.02),
                       t_step=1.0, k_step=0.1, t_opt=6.0)
    _, state = list(iterate_policy(KickPolicy.from_pairs(
        [(2.0, 1.5), (4.0, 0.7)]), config))[-1]
    assert qfi(kick(state, 4.2)) == pytest.approx(qfi(state), rel=1e-8)


def test_decohered_qfi_below_pure_bound() -> None:
    config = EnvConfig(spin=2, params=DynamicsParams.phase_damping(0.05),
                       t_step=1.0, k_step=0.1, t_opt=8.0)
    trace, _ = simulate_policy(KickPolicy(), config)
    for time, value in trace[1:]:
        assert 0.0 <= value < 4 * time ** 2


def test_qfi_report_fields() -> None:
    state = precess(StateWithDerivative.from_density(coherent_state(
        2, CoherentStateParams())), 2.0, DynamicsParams.closed())
    report = qfi_report(state, 2.0)
    assert report.qfi == pytest.approx(16.0, rel=1e-9)
    assert report.rescaled == pytest.approx(8.0, rel=1e-9)
    assert report.crlb_single_shot == pytest.approx(1 / 16, rel=1e-9)


def test_plateau_uses_final_share() -> None:
    assert plateau_value(np.arange(1.0, 11.0), 0.2) == pytest.approx(9.5)
    curve = [(float(t), float(t)) for t in range(30)]
    assert plateau_value(curve, 0.1) == pytest.approx(28.0)


def test_gains() -> None:
    assert gain_unkicked(30.0, [0.0, 10.0, 5.0]) == pytest.approx(3.0)
    assert gain_plateau(30.0, [0.0] * 8 + [6.0, 6.0]) == pytest.approx(5.0)


def test_gain_errors() -> None:
    with pytest.raises(BaselineError):
        gain_unkicked(1.0, [0.0, 0.0])
    with pytest.raises(BaselineError):
        gain_plateau(1.0, [5.0, 0.0, 0.0, 0.0, 0.0])
    with pytest.raises(BaselineError):
        plateau_value([])


def test_superradiant_kicked_top_keeps_a_plateau() -> None:
    config = EnvConfig(spin=2, params=DynamicsParams.superradiant(0.01),
                       t_step=1.0, k_step=0.1, t_opt=100.0)
    top_trace, _ = simulate_policy(KickPolicy(), config)
    kicked_trace, _ = simulate_policy(periodic_policy(config), config)
    top = np.array([value for _, value in top_trace])
    kicked = np.array([value for _, value in kicked_trace])
    window = kicked[-math.ceil(0.2 * 100):]
    assert window.min() > 0
    assert window.mean() > 10 * top[-1]
    assert top[-1] <= 0.1 * top.max()


def test_pure_top_grows_quadratically() -> None:
    config = EnvConfig(spin=2, t_step=1.0, k_step=0.1, t_opt=20.0)
    trace, _ = simulate_policy(KickPolicy(), config)
    times, values = np.array(trace[1:]).T
    exponent, _ = np.polyfit(np.log(times), np.log(values), 1)
    assert exponent == pytest.approx(2.0, abs=0.01)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_halving_the_cutoff_keeps_qfi(name: str) -> None:
    config = PRESETS[name].trainer.env
    states = [state for _, state in iterate_policy(
        periodic_policy(config), config)]
    for state in states[len(states) // 2::max(1, len(states) // 10)]:
        value = qfi(state, 1e-10)
        assert qfi(state, 5e-11) == pytest.approx(value, rel=1e-6)
