"""
Tests of the Husimi and Wigner functions on the sphere.
"""
import math
import numpy as np
import pytest
from schemas.experiment import QuasiProbKind
from schemas.spin import CoherentStateParams, SpinQuantum
from services.quasiprob import (husimi_grid, multipoles, quasiprob_grid,
                                sphere_grid, tensor_operators, wigner_grid)
from services.spin_algebra import (build_operators, coherent_state,
                                   maximally_mixed)


def _angle_to(grid_theta: float, grid_phi: float,
              direction: np.ndarray) -> float:
    point = np.array([math.sin(grid_theta) * math.cos(grid_phi),
                      math.sin(grid_theta) * math.sin(grid_phi),
                      math.cos(grid_theta)])
    return math.acos(min(1.0, float(point @ direction)))


def _dicke(j: float, m: float) -> np.ndarray:
    spin = SpinQuantum.coerce(j)
    rho = np.zeros((spin.dim, spin.dim), dtype=complex)
    index = int(round(m + j))
    rho[index, index] = 1.0
    return rho


def test_sphere_grid_axes() -> None:
    theta, phi = sphere_grid(4, 8)
    np.testing.assert_allclose(theta, (np.arange(4) + 0.5) * np.pi / 4)
    assert phi[-1] == pytest.approx(np.pi)
    assert phi[0] > -np.pi
    with pytest.raises(ValueError):
        sphere_grid(0, 8)


@pytest.mark.parametrize("j", [0.5, 2, 3])
def test_husimi_of_mixed_state_is_flat(j: float) -> None:
    spin = SpinQuantum.coerce(j)
    grid = husimi_grid(maximally_mixed(j), 10, 20)
    assert grid.shape == (10, 20)
    np.testing.assert_allclose(grid.values, 1 / spin.dim, atol=1e-12)


def test_husimi_integrates_to_sphere_over_dim() -> None:
    rho = coherent_state(2, CoherentStateParams(theta=0.8, phi=1.3))
    grid = husimi_grid(rho, 200, 80)
    assert grid.integral() == pytest.approx(4 * math.pi / 5, rel=1e-3)


def test_husimi_peaks_at_coherent_direction() -> None:
    params = CoherentStateParams(theta=1.0, phi=0.5)
    grid = husimi_grid(coherent_state(3, params), 40, 80)
    i, k = np.unravel_index(np.argmax(grid.values), grid.shape)
    assert _angle_to(grid.theta[i], grid.phi[k], params.direction) < 0.15
    assert grid.values.max() == pytest.approx(1.0, abs=0.05)
    assert grid.values.min() >= 0.0


@pytest.mark.parametrize("j", [0.5, 1, 2.5, 3])
def test_tensor_operators_are_orthonormal(j: float) -> None:
    operators = tensor_operators(SpinQuantum.coerce(j))
    spin = SpinQuantum.coerce(j)
    assert len(operators) == spin.dim ** 2
    keys = list(operators)
    gram = np.array([[np.trace(operators[a].conj().T @ operators[b])
                      for b in keys] for a in keys])
    np.testing.assert_allclose(gram, np.eye(len(keys)), atol=1e-12)


def test_rank_one_tensor_is_scaled_jz() -> None:
    j = 2
    spin = SpinQuantum.coerce(j)
    scale = math.sqrt(3 / (spin.dim * j * (j + 1)))
    np.testing.assert_allclose(tensor_operators(spin)[(1, 0)],
                               scale * build_operators(j).jz, atol=1e-12)


def test_tensor_operators_are_read_only() -> None:
    operator = tensor_operators(SpinQuantum(j=1))[(0, 0)]
    with pytest.raises(ValueError):
        operator[0, 0] = 2.0


def test_multipoles_reconstruct_state() -> None:
    rho = coherent_state(1.5, CoherentStateParams(theta=2.0, phi=-1.0))
    spin = SpinQuantum(j=1.5)
    operators = tensor_operators(spin)
    rebuilt = sum(weight * operators[key]
                  for key, weight in multipoles(rho).items())
    np.testing.assert_allclose(rebuilt, rho, atol=1e-12)


@pytest.mark.parametrize("j", [0.5, 1, 2])
def test_wigner_of_mixed_state_is_uniform(j: float) -> None:
    grid = wigner_grid(maximally_mixed(j), 8, 16)
    np.testing.assert_allclose(grid.values, 1 / (4 * math.pi), atol=1e-12)


@pytest.mark.parametrize(("j", "theta", "phi"),
                         [(1, 0.3, 0.2), (2, 1.2, -2.0), (2.5, 2.8, 3.0)])
def test_wigner_integrates_to_one(j: float, theta: float, phi: float
                                  ) -> None:
    rho = coherent_state(j, CoherentStateParams(theta=theta, phi=phi))
    grid = wigner_grid(rho, 200, 80)
    assert grid.integral() == pytest.approx(1.0, abs=1e-3)


def test_wigner_peaks_at_coherent_direction() -> None:
    params = CoherentStateParams(theta=1.0, phi=0.5)
    grid = wigner_grid(coherent_state(3, params), 40, 80)
    i, k = np.unravel_index(np.argmax(grid.values), grid.shape)
    assert _angle_to(grid.theta[i], grid.phi[k], params.direction) < 0.15


def test_wigner_of_dicke_state_is_negative_somewhere() -> None:
    rho = _dicke(1, 0)
    assert wigner_grid(rho, 40, 80).values.min() < 0.0
    assert husimi_grid(rho, 40, 80).values.min() >= 0.0


def test_quasiprob_dispatch() -> None:
    rho = coherent_state(1, CoherentStateParams())
    assert quasiprob_grid(rho, 4, 8, QuasiProbKind.WIGNER).kind == "wigner"
    assert quasiprob_grid(rho, 4, 8, "husimi").kind == "husimi"


def test_grid_rows_are_theta_major() -> None:
    grid = husimi_grid(maximally_mixed(1), 2, 3)
    rows = grid.rows()
    assert len(rows) == 6
    assert rows[0][0] == rows[2][0] == pytest.approx(grid.theta[0])
    assert rows[3][0] == pytest.approx(grid.theta[1])
