"""
Artifact persistence module: CSV tables with provenance, YAML configs,
plain-text policies and JSON network checkpoints.
"""
import csv
import io
import logging
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence
import numpy as np
import orjson
import yaml
from pydantic import ValidationError
from core.config import get_setting
from core.exceptions import ArtifactError
from helper.helper import config_hash, format_float, model_payload
from models.bundle import KickTable, QfiCurve, RunArtifactBundle
from models.phase_space import Ensemble, SphereGrid
from models.policy_network import PARAMETER_NAMES, PolicyNetwork
from schemas.experiment import ExperimentPreset, GainRow
from schemas.policy import KickPolicy
from schemas.trainer import StudyRow, TrainingTrace, TrainingTraceRow

logger: logging.Logger = logging.getLogger(__name__)

HASH_PREFIX: str = "# config_hash="
CONFIG_FILE: str = "config.yaml"
POLICY_FILE: str = "policy.txt"
BEST_POLICY_FILE: str = "best_policy.txt"
NETWORK_FILE: str = "network.json"
TRACE_FILE: str = "trace.csv"
KICKS_FILE: str = "kicks.csv"
KICK_REFERENCE_FILE: str = "kick_reference.csv"
CURVE_HEADER: tuple[str, ...] = ("time", "qfi", "rescaled_qfi", "k_acc")
GRID_HEADER: tuple[str, ...] = ("theta", "phi", "value")
TRACE_HEADER: tuple[str, ...] = tuple(TrainingTraceRow.__fields__)


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def write_csv(path: Path, header: Sequence[str],
              rows: Iterable[Sequence[Any]], digest: str) -> Path:
    """
    Write a CSV file with a config-hash comment line and a header
    :param path: target file
    :type path: Path
    :param header: column names
    :type header: Sequence[str]
    :param rows: table rows
    :type rows: Iterable[Sequence[Any]]
    :param digest: configuration hash for provenance
    :type digest: str
    :return: the written path
    :rtype: Path
    """
    buffer: io.StringIO = io.StringIO()
    buffer.write(f"{HASH_PREFIX}{digest}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([_cell(value) for value in row] for row in rows)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(buffer.getvalue(), encoding=get_setting().ENCODING)
    logger.info("wrote %s", path)
    return path


def read_csv(path: Path) -> tuple[str, list[str], list[list[str]]]:
    """
    Read a CSV written by write_csv
    :param path: source file
    :type path: Path
    :return: config hash, header and rows as text
    :rtype: tuple[str, list[str], list[list[str]]]
    """
    try:
        lines: list[str] = path.read_text(
            encoding=get_setting().ENCODING).splitlines()
    except OSError as exc:
        raise ArtifactError(f"cannot read {path}: {exc}") from exc
    if not lines or not lines[0].startswith(HASH_PREFIX):
        raise ArtifactError(f"{path} lacks the config hash line")
    table: list[list[str]] = list(csv.reader(lines[1:]))
    if not table:
        raise ArtifactError(f"{path} lacks a header")
    return lines[0][len(HASH_PREFIX):], table[0], table[1:]


def _float_rows(path: Path, header: Sequence[str]) -> np.ndarray:
    _, found, rows = read_csv(path)
    if tuple(found) != tuple(header):
        raise ArtifactError(f"{path}: unexpected columns {found}")
    return np.array([[float(value) for value in row] for row in rows],
                    dtype=float).reshape(-1, len(header))


def write_curve(path: Path, curve: QfiCurve, digest: str) -> Path:
    """
    QFI curve with rescaled QFI and accumulated kicking strength
    """
    return write_csv(path, CURVE_HEADER, zip(
        curve.times, curve.qfi, curve.rescaled, curve.k_acc), digest)


def read_curve(path: Path) -> QfiCurve:
    """
    Inverse of write_curve, the name is the file stem
    """
    table: np.ndarray = _float_rows(path, CURVE_HEADER)
    return QfiCurve(name=path.stem, times=table[:, 0], qfi=table[:, 1],
                    k_acc=table[:, 3])


def write_grid(path: Path, grid: SphereGrid, digest: str) -> Path:
    """
    Quasi-probability grid as (theta, phi, value) rows
    """
    return write_csv(path, GRID_HEADER, grid.rows(), digest)


def read_grid(path: Path, kind: str) -> SphereGrid:
    """
    Inverse of write_grid
    :param path: source file
    :type path: Path
    :param kind: distribution name
    :type kind: str
    :return: grid
    :rtype: SphereGrid
    """
    table: np.ndarray = _float_rows(path, GRID_HEADER)
    theta: np.ndarray = np.unique(table[:, 0])
    phi: np.ndarray = np.unique(table[:, 1])
    if theta.size * phi.size != table.shape[0]:
        raise ArtifactError(f"{path} is not a full grid")
    return SphereGrid(kind=kind, theta=theta, phi=phi,
                      values=table[:, 2].reshape(theta.size, phi.size))


def write_ensemble(path: Path, ensemble: Ensemble, digest: str) -> Path:
    """
    Phase space coordinates (phi, z) of an ensemble
    """
    return write_csv(path, ("phi", "z"), ensemble.to_phase_space(), digest)


def write_policy(path: Path, policy: KickPolicy,
                 reward: Optional[float] = None) -> Path:
    """
    Policy as one 'time strength' line per kick
    :param path: target file
    :type path: Path
    :param policy: kick schedule
    :type policy: KickPolicy
    :param reward: reward noted in a comment line
    :type reward: float
    :return: the written path
    :rtype: Path
    """
    lines: list[str] = []
    if reward is not None:
        lines.append(f"# reward={format_float(reward)}")
    lines.extend(f"{format_float(t)} {format_float(k)}"
                 for t, k in policy.kicks)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n",
                    encoding=get_setting().ENCODING)
    return path


def read_policy(path: Path) -> tuple[KickPolicy, Optional[float]]:
    """
    Inverse of write_policy
    :param path: source file
    :type path: Path
    :return: policy and the noted reward
    :rtype: tuple[KickPolicy, Optional[float]]
    """
    reward: Optional[float] = None
    pairs: list[tuple[float, float]] = []
    try:
        text: str = path.read_text(encoding=get_setting().ENCODING)
        for line in text.splitlines():
            line = line.strip()
            if line.startswith("# reward="):
                reward = float(line.split("=", 1)[1])
            elif line and not line.startswith("#"):
                time, strength = line.split()
                pairs.append((float(time), float(strength)))
        return KickPolicy.from_pairs(pairs), reward
    except (OSError, ValueError, ValidationError) as exc:
        raise ArtifactError(f"invalid policy file {path}: {exc}") from exc


def save_network(path: Path, net: PolicyNetwork) -> Path:
    """
    JSON checkpoint with parameter shapes, weights and Adam moments
    :param path: target file
    :type path: Path
    :param net: network
    :type net: PolicyNetwork
    :return: the written path
    :rtype: Path
    """
    state: dict[str, Any] = net.state_dict()
    state["shapes"] = {name: list(value.shape)
                       for name, value in state["parameters"].items()}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(orjson.dumps(
        state, option=orjson.OPT_SERIALIZE_NUMPY))
    logger.info("wrote %s", path)
    return path


def load_network(path: Path) -> PolicyNetwork:
    """
    Inverse of save_network
    """
    try:
        state: dict[str, Any] = orjson.loads(path.read_bytes())
        for name in PARAMETER_NAMES:
            shape: tuple[int, ...] = tuple(state["shapes"][name])
            state["parameters"][name] = np.array(
                state["parameters"][name], dtype=float).reshape(shape)
        return PolicyNetwork.from_state_dict(state)
    except (OSError, KeyError, ValueError, orjson.JSONDecodeError) as exc:
        raise ArtifactError(f"invalid checkpoint {path}: {exc}") from exc


def write_config(path: Path, preset: ExperimentPreset) -> Path:
    """
    YAML snapshot of a preset
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(yaml.safe_dump(model_payload(preset), sort_keys=False),
                    encoding=get_setting().ENCODING)
    return path


def read_config(path: Path) -> ExperimentPreset:
    """
    Inverse of write_config
    """
    try:
        return ExperimentPreset.parse_obj(yaml.safe_load(
            path.read_text(encoding=get_setting().ENCODING)))
    except (OSError, yaml.YAMLError, ValidationError) as exc:
        raise ArtifactError(f"invalid config {path}: {exc}") from exc


def write_trace(path: Path, trace: TrainingTrace, digest: str) -> Path:
    """
    One row per cross-entropy iteration
    """
    return write_csv(path, TRACE_HEADER, (
        [getattr(row, name) for name in TRACE_HEADER]
        for row in trace.rows), digest)


def read_trace(path: Path) -> TrainingTrace:
    """
    Inverse of write_trace, without the best episode
    """
    _, header, rows = read_csv(path)
    if tuple(header) != TRACE_HEADER:
        raise ArtifactError(f"{path}: unexpected columns {header}")
    return TrainingTrace(rows=[
        TrainingTraceRow.parse_obj(dict(zip(header, row))) for row in rows])


def write_kick_table(directory: Path, table: KickTable, digest: str
                     ) -> None:
    """
    Kick rows and the unkicked reference <Jx> as two CSV files
    """
    write_csv(directory / KICKS_FILE, ("time", "k", "precession_angle"),
              table.kicks, digest)
    write_csv(directory / KICK_REFERENCE_FILE, ("time", "jx_unkicked"),
              table.reference, digest)


def read_kick_table(directory: Path) -> KickTable:
    """
    Inverse of write_kick_table
    """
    kicks: np.ndarray = _float_rows(directory / KICKS_FILE,
                                    ("time", "k", "precession_angle"))
    reference: np.ndarray = _float_rows(directory / KICK_REFERENCE_FILE,
                                        ("time", "jx_unkicked"))
    return KickTable(kicks=[tuple(row) for row in kicks.tolist()],
                     reference=[tuple(row) for row in reference.tolist()])


def write_gain_rows(path: Path, rows: Sequence[GainRow], digest: str
                    ) -> Path:
    """
    Gain sweep table
    """
    header: tuple[str, ...] = tuple(GainRow.__fields__)
    return write_csv(path, header, ([getattr(row, name) for name in header]
                                    for row in rows), digest)


def write_study_rows(path: Path, rows: Sequence[StudyRow], digest: str
                     ) -> Path:
    """
    Stability study table
    """
    header: tuple[str, ...] = tuple(StudyRow.__fields__)
    return write_csv(path, header, ([getattr(row, name) for name in header]
                                    for row in rows), digest)


def save_bundle(bundle: RunArtifactBundle, directory: Path) -> Path:
    """
    Write every artifact of a bundle below a directory
    :param bundle: run artifacts
    :type bundle: RunArtifactBundle
    :param directory: target directory
    :type directory: Path
    :return: the directory
    :rtype: Path
    """
    directory.mkdir(parents=True, exist_ok=True)
    digest: str = config_hash(bundle.preset)
    write_config(directory / CONFIG_FILE, bundle.preset)
    for name, curve in bundle.curves.items():
        write_curve(directory / "curves" / f"{name}.csv", curve, digest)
    if bundle.policy is not None:
        write_policy(directory / POLICY_FILE, bundle.policy, bundle.reward)
    if bundle.network is not None:
        save_network(directory / NETWORK_FILE, bundle.network)
    if bundle.trace is not None:
        write_trace(directory / TRACE_FILE, bundle.trace, digest)
        if bundle.trace.best_policy is not None:
            write_policy(directory / BEST_POLICY_FILE,
                         bundle.trace.best_policy, bundle.trace.best_reward)
    for name, grid in bundle.grids.items():
        write_grid(directory / "grids" / f"{name}.csv", grid, digest)
    if bundle.kick_table is not None:
        write_kick_table(directory, bundle.kick_table, digest)
    return directory


def load_bundle(directory: Path) -> RunArtifactBundle:
    """
    Inverse of save_bundle
    :param directory: bundle directory
    :type directory: Path
    :return: run artifacts
    :rtype: RunArtifactBundle
    """
    if not (directory / CONFIG_FILE).exists():
        raise ArtifactError(f"{directory} holds no {CONFIG_FILE}")
    bundle: RunArtifactBundle = RunArtifactBundle(
        preset=read_config(directory / CONFIG_FILE))
    for path in sorted((directory / "curves").glob("*.csv")):
        bundle.curves[path.stem] = read_curve(path)
    if (directory / POLICY_FILE).exists():
        bundle.policy, bundle.reward = read_policy(directory / POLICY_FILE)
    if (directory / NETWORK_FILE).exists():
        bundle.network = load_network(directory / NETWORK_FILE)
    if (directory / TRACE_FILE).exists():
        bundle.trace = read_trace(directory / TRACE_FILE)
        if (directory / BEST_POLICY_FILE).exists():
            bundle.trace.best_policy, bundle.trace.best_reward = \
                read_policy(directory / BEST_POLICY_FILE)
    for path in sorted((directory / "grids").glob("*.csv")):
        bundle.grids[path.stem] = read_grid(path, path.stem.split("_")[0])
    if (directory / KICKS_FILE).exists():
        bundle.kick_table = read_kick_table(directory)
    return bundle
