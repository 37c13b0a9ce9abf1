"""
Metrology services: quantum Fisher information and gain ratios.
"""
import math
from typing import Sequence, Union
import numpy as np
from core.config import get_setting
from core.exceptions import BaselineError
from models.state import StateWithDerivative
from schemas.metrology import QfiReport
from services.spin_algebra import clamp_spectrum, hermitian_eigensystem

CurveLike = Union[Sequence[float], Sequence[tuple[float, float]], np.ndarray]
PLATEAU_FLOOR: float = 1e-12


def qfi(state: StateWithDerivative, epsilon: float | None = None) -> float:
    """
    Quantum Fisher information from the spectral decomposition of rho,
     I = 2 sum |<psi_l| d rho |psi_m>|^2 / (p_l + p_m) over p_l + p_m > eps
    :param state: density matrix with its omega-derivative
    :type state: StateWithDerivative
    :param epsilon: cutoff on eigenvalue pairs
    :type epsilon: float
    :return: QFI, non-negative
    :rtype: float
    """
    setting = get_setting()
    eps: float = setting.QFI_EPSILON if epsilon is None else epsilon
    if not np.any(state.drho):
        return 0.0
    eigenvalues, eigenvectors = hermitian_eigensystem(state.rho)
    p: np.ndarray = clamp_spectrum(eigenvalues, setting.CLAMP_TOLERANCE)
    elements: np.ndarray = eigenvectors.conj().T @ state.drho @ eigenvectors
    pair_sums: np.ndarray = p[:, None] + p[None, :]
    mask: np.ndarray = pair_sums > eps
    value: float = 2.0 * float(np.sum(
        np.abs(elements[mask]) ** 2 / pair_sums[mask]))
    return max(value, 0.0)


def pure_state_qfi(psi: np.ndarray, dpsi: np.ndarray) -> float:
    """
    QFI of a pure state family, 4 (<dpsi|dpsi> - |<psi|dpsi>|^2)
    :param psi: normalized state vector
    :type psi: np.ndarray
    :param dpsi: derivative of the state vector
    :type dpsi: np.ndarray
    :return: QFI
    :rtype: float
    """
    overlap: complex = np.vdot(psi, dpsi)
    return 4.0 * float(np.real(np.vdot(dpsi, dpsi)) - abs(overlap) ** 2)


def qfi_report(state: StateWithDerivative, time: float) -> QfiReport:
    """
    QFI with rescaled value and single-shot Cramer-Rao bound
    :param state: state with derivative
    :type state: StateWithDerivative
    :param time: evaluation time
    :type time: float
    :return: report
    :rtype: QfiReport
    """
    return QfiReport(qfi=qfi(state), time=time)


def curve_values(curve: CurveLike) -> np.ndarray:
    """
    QFI values of a curve given as values or (time, qfi) rows
    """
    values: np.ndarray = np.asarray(curve, dtype=float)
    if values.ndim == 2:
        values = values[:, -1]
    return values.reshape(-1)


def plateau_value(curve: CurveLike, share: float | None = None) -> float:
    """
    Mean of the final share of a QFI time series
    :param curve: QFI values or (time, qfi) rows
    :type curve: CurveLike
    :param share: tail share, defaults to PLATEAU_SHARE
    :type share: float
    :return: plateau estimate
    :rtype: float
    """
    values: np.ndarray = curve_values(curve)
    if values.size == 0:
        raise BaselineError("empty curve has no plateau")
    share = get_setting().PLATEAU_SHARE if share is None else share
    window: int = max(1, math.ceil(share * values.size - 1e-9))
    return float(np.mean(values[-window:]))


def gain_unkicked(rl_qfi_at_topt: float, top_qfi_curve: CurveLike) -> float:
    """
    Ratio of the optimized QFI at T_opt to the maximum QFI of the top
    :param rl_qfi_at_topt: optimized QFI at the horizon
    :type rl_qfi_at_topt: float
    :param top_qfi_curve: QFI of the unkicked top
    :type top_qfi_curve: CurveLike
    :return: gain
    :rtype: float
    """
    values: np.ndarray = curve_values(top_qfi_curve)
    if values.size == 0:
        raise BaselineError("empty top curve")
    maximum: float = float(np.max(values))
    if maximum <= 0:
        raise BaselineError("top curve has zero maximum")
    return rl_qfi_at_topt / maximum


def gain_plateau(rl_qfi_at_topt: float, kicked_qfi_curve: CurveLike) -> float:
    """
    Ratio of the optimized QFI at T_opt to the plateau of periodic kicking
    :param rl_qfi_at_topt: optimized QFI at the horizon
    :type rl_qfi_at_topt: float
    :param kicked_qfi_curve: QFI of the periodically kicked top
    :type kicked_qfi_curve: CurveLike
    :return: gain
    :rtype: float
    """
    plateau: float = plateau_value(kicked_qfi_curve)
    if plateau < PLATEAU_FLOOR:
        raise BaselineError(f"plateau {plateau:.3e} is degenerate")
    return rl_qfi_at_topt / plateau
