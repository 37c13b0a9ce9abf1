"""
export command module.
"""
from pathlib import Path
from typing import Optional, Union
import click
from api.commands import (out_dir_option, preset_option, resolve_out_dir,
                          resolve_preset, seed_option)
from core.config import get_setting
from db.artifacts import read_policy, write_ensemble, write_grid
from helper.helper import config_hash
from models.phase_space import Ensemble, SphereGrid
from schemas.experiment import ExperimentPreset, QuasiProbKind
from schemas.policy import KickPolicy
from services.experiments import export_classical, export_quasiprob

CLASSICAL: str = "classical"


@click.command("export")
@preset_option("superradiant-samples")
@seed_option
@out_dir_option
@click.option("--kind", type=click.Choice(
    [kind.value for kind in QuasiProbKind] + [CLASSICAL]),
    default=QuasiProbKind.WIGNER.value, show_default=True)
@click.option("--policy-file", type=click.Path(
    exists=True, dir_okay=False, path_type=Path), default=None,
    help="Policy to replay, the unkicked top when omitted.")
@click.option("--n-theta", type=click.IntRange(min=1), default=40,
              show_default=True)
@click.option("--n-phi", type=click.IntRange(min=1), default=80,
              show_default=True)
@click.option("--frames", is_flag=True, help="One file per grid time.")
@click.option("--size", type=click.IntRange(min=1), default=None,
              help="Classical ensemble size, defaults to ENSEMBLE_SIZE.")
def export(preset_name: str, seed: Optional[int], out_dir: Optional[Path],
           kind: str, policy_file: Optional[Path], n_theta: int, n_phi: int,
           frames: bool, size: Optional[int]) -> None:
    """
    Quasi-probability grids or classical ensembles of a replayed policy.
    """
    setting = get_setting()
    preset: ExperimentPreset = resolve_preset(preset_name, seed, None)
    config = preset.trainer.env
    policy: KickPolicy = read_policy(policy_file)[0] if policy_file \
        else KickPolicy()
    directory: Path = resolve_out_dir(out_dir, preset.name, "export")
    digest: str = config_hash(preset)
    if kind == CLASSICAL:
        result: Union[Ensemble, list[Ensemble]] = export_classical(
            policy, config, size or setting.ENSEMBLE_SIZE,
            preset.trainer.rng_seed, frames)
        snapshots: list[Ensemble] = result if frames else [result]
        for index, ensemble in enumerate(snapshots):
            write_ensemble(directory / _name(kind, index, frames), ensemble,
                           digest)
        click.echo(f"wrote {len(snapshots)} ensemble file(s) to {directory}")
        return
    grids: Union[SphereGrid, list[SphereGrid]] = export_quasiprob(
        (policy, config), (n_theta, n_phi), QuasiProbKind(kind), frames)
    snapshots_grid: list[SphereGrid] = grids if frames else [grids]
    for index, grid in enumerate(snapshots_grid):
        write_grid(directory / _name(kind, index, frames), grid, digest)
    click.echo(f"wrote {len(snapshots_grid)} grid file(s) to {directory}")


def _name(kind: str, index: int, frames: bool) -> str:
    return f"{kind}_frame{index:04d}.csv" if frames else f"{kind}_final.csv"
