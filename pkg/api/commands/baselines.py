"""
baselines command module.
"""
import logging
from pathlib import Path
from typing import Optional
import click
from api.commands import (out_dir_option, preset_option, resolve_out_dir,
                          resolve_preset, reward_mode_option, seed_option)
from db.artifacts import write_curve
from helper.helper import config_hash
from schemas.experiment import ExperimentPreset
from services.experiments import run_baselines

logger: logging.Logger = logging.getLogger(__name__)


@click.command("baselines")
@preset_option("gains")
@seed_option
@out_dir_option
@reward_mode_option
def baselines(preset_name: str, seed: Optional[int],
              out_dir: Optional[Path], reward_mode: Optional[str]) -> None:
    """
    QFI curves of the top and of the periodically kicked top.
    """
    preset: ExperimentPreset = resolve_preset(preset_name, seed, reward_mode)
    directory: Path = resolve_out_dir(out_dir, preset.name, "baselines")
    digest: str = config_hash(preset)
    for name, curve in run_baselines(preset).items():
        write_curve(directory / f"{name}.csv", curve, digest)
        click.echo(f"{name}: max QFI {curve.qfi.max():.6g}, "
                   f"QFI at T_opt {curve.final:.6g}")
