"""
Classical limit of the kicked top.

A point r = (x, y, z) on the unit sphere precesses about z, is rotated
about y by the angle k y at a kick and relaxes towards the south pole
under superradiant damping. All maps act on single points or on arrays of
shape (n, 3).
"""
import logging
import math
from typing import Union
import numpy as np
from models.phase_space import Ensemble
from schemas.dynamics import DecoherenceKind
from schemas.environment import EnvConfig
from schemas.policy import KickPolicy
from schemas.spin import CoherentStateParams, SpinQuantum
from services.environment import kicks_on_grid

logger: logging.Logger = logging.getLogger(__name__)

Points = Union[np.ndarray, Ensemble]
PROPOSAL_CHUNK: int = 65536


def _points(points: Points) -> np.ndarray:
    if isinstance(points, Ensemble):
        return points.points
    return np.asarray(points, dtype=float)


def classical_precession(points: Points, alpha: float) -> np.ndarray:
    """
    Rotation of (x, y) by alpha about the z axis
    :param points: point or array of points
    :type points: Points
    :param alpha: rotation angle
    :type alpha: float
    :return: rotated points
    :rtype: np.ndarray
    """
    r: np.ndarray = _points(points)
    cos, sin = math.cos(alpha), math.sin(alpha)
    rotated: np.ndarray = r.copy()
    rotated[..., 0] = cos * r[..., 0] - sin * r[..., 1]
    rotated[..., 1] = sin * r[..., 0] + cos * r[..., 1]
    return rotated


def classical_kick(points: Points, k: float) -> np.ndarray:
    """
    Rotation about the y axis by the angle k y
    :param points: point or array of points
    :type points: Points
    :param k: kick strength
    :type k: float
    :return: kicked points
    :rtype: np.ndarray
    """
    r: np.ndarray = _points(points)
    angle: np.ndarray = k * r[..., 1]
    cos, sin = np.cos(angle), np.sin(angle)
    kicked: np.ndarray = r.copy()
    kicked[..., 0] = r[..., 2] * sin + r[..., 0] * cos
    kicked[..., 2] = r[..., 2] * cos - r[..., 0] * sin
    return kicked


def classical_damping(points: Points, j: SpinQuantum | float, gamma: float,
                      t: float) -> np.ndarray:
    """
    Superradiant relaxation of the polar angle for a time t,
     tan(theta/2) grows by exp(tau) with tau = (2j+1) gamma t
    :param points: point or array of points
    :type points: Points
    :param j: spin size
    :type j: SpinQuantum | float
    :param gamma: superradiant rate
    :type gamma: float
    :param t: duration
    :type t: float
    :return: damped points, the south pole is a fixed point
    :rtype: np.ndarray
    """
    r: np.ndarray = _points(points)
    spin: SpinQuantum = SpinQuantum.coerce(j)
    tau: float = spin.dim * gamma * t
    if tau == 0:
        return r.copy()
    z: np.ndarray = np.clip(r[..., 2], -1.0, 1.0)
    south: np.ndarray = z <= -1.0
    with np.errstate(divide='ignore'):
        # artanh(-z) + tau, -inf at the north pole
        s: np.ndarray = 0.5 * (np.log1p(-z) - np.log1p(np.where(
            south, 0.0, z))) + tau
    phi: np.ndarray = np.arctan2(r[..., 1], r[..., 0])
    sin_theta: np.ndarray = 1.0 / np.cosh(s)
    damped: np.ndarray = np.stack(
        [sin_theta * np.cos(phi), sin_theta * np.sin(phi), -np.tanh(s)],
        axis=-1)
    return np.where(south[..., None], r, damped)


def sample_husimi(initial: CoherentStateParams, j: SpinQuantum | float,
                  n: int, rng: np.random.Generator) -> Ensemble:
    """
    Rejection sampling of the Husimi density of a coherent state,
     proportional to ((1 + cos Theta) / 2)^(2j) with Theta the angle to
     the coherent state direction
    :param initial: direction of the coherent state
    :type initial: CoherentStateParams
    :param j: spin size
    :type j: SpinQuantum | float
    :param n: number of points
    :type n: int
    :param rng: random stream
    :type rng: np.random.Generator
    :return: ensemble of n points
    :rtype: Ensemble
    """
    if n < 1:
        raise ValueError(f"ensemble size must be positive, got {n}")
    spin: SpinQuantum = SpinQuantum.coerce(j)
    direction: np.ndarray = initial.direction
    accepted: list[np.ndarray] = []
    count: int = 0
    while count < n:
        proposals: np.ndarray = rng.standard_normal((PROPOSAL_CHUNK, 3))
        proposals /= np.linalg.norm(proposals, axis=1, keepdims=True)
        weight: np.ndarray = ((1.0 + proposals @ direction) / 2.0) \
            ** spin.twice_j
        chunk: np.ndarray = proposals[rng.random(PROPOSAL_CHUNK) < weight]
        accepted.append(chunk)
        count += chunk.shape[0]
    return Ensemble(np.concatenate(accepted)[:n])


def husimi_cap_probability(cos_angle: np.ndarray, j: SpinQuantum | float
                           ) -> np.ndarray:
    """
    Probability that a Husimi sample lies within the cap cos Theta >= c
    :param cos_angle: cosine c of the cap angle
    :type cos_angle: np.ndarray
    :param j: spin size
    :type j: SpinQuantum | float
    :return: cap probability
    :rtype: np.ndarray
    """
    spin: SpinQuantum = SpinQuantum.coerce(j)
    return 1.0 - ((1.0 + np.asarray(cos_angle)) / 2.0) ** spin.dim


def propagate_ensemble(ensemble: Ensemble, policy: KickPolicy,
                       config: EnvConfig, frames: bool = False
                       ) -> Union[Ensemble, list[Ensemble]]:
    """
    Classical equations of motion under a kick policy: damping and
     precession for every t_step followed by the kicks of the grid time
    :param ensemble: initial points
    :type ensemble: Ensemble
    :param policy: kick schedule on the grid of config
    :type policy: KickPolicy
    :param config: control problem
    :type config: EnvConfig
    :param frames: return the ensemble at every grid time
    :type frames: bool
    :return: final ensemble or the list of frames from time 0 to T_opt
    :rtype: Union[Ensemble, list[Ensemble]]
    """
    strengths: np.ndarray = kicks_on_grid(policy, config)
    params = config.params
    gamma: float = params.gamma_sr
    if params.decoherence_kind == DecoherenceKind.PHASE_DAMPING:
        logger.warning("phase damping has no classical map, ignored")
    alpha: float = params.omega * config.t_step
    points: np.ndarray = classical_kick(ensemble.points, strengths[0]) \
        if strengths[0] else ensemble.points.copy()
    history: list[Ensemble] = [Ensemble(points)]
    for index in range(1, config.n_steps + 1):
        if gamma:
            points = classical_damping(points, config.spin, gamma,
                                       config.t_step)
        points = classical_precession(points, alpha)
        if strengths[index]:
            points = classical_kick(points, strengths[index])
        if frames:
            history.append(Ensemble(points))
    return history if frames else Ensemble(points)


def ensemble_to_phase_space(ensemble: Ensemble) -> np.ndarray:
    """
    Canonical coordinates (phi, z) of an ensemble
    """
    return ensemble.to_phase_space()
