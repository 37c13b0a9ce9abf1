"""
sweep command module.
"""
from pathlib import Path
from typing import Optional
import click
from api.commands import (float_list, jobs_option, out_dir_option,
                          preset_option, resolve_jobs, resolve_out_dir,
                          resolve_preset, reward_mode_option, seed_option)
from db.artifacts import write_gain_rows
from helper.helper import config_hash
from schemas.experiment import ExperimentPreset, GainRow
from services.experiments import run_gain_sweep


@click.command("sweep")
@preset_option("gains")
@seed_option
@out_dir_option
@jobs_option
@reward_mode_option
@click.option("--gammas", callback=float_list, default="",
              help="Comma separated superradiant rates.")
@click.option("--agents", "n_agents", type=click.IntRange(min=1),
              default=None, help="Override the number of agents.")
def sweep(preset_name: str, seed: Optional[int], out_dir: Optional[Path],
          jobs: Optional[int], reward_mode: Optional[str],
          gammas: tuple[float, ...], n_agents: Optional[int]) -> None:
    """
    Gains over the top and the plateau for several superradiant rates.
    """
    preset: ExperimentPreset = resolve_preset(
        preset_name, seed, reward_mode, n_agents=n_agents)
    rows: list[GainRow] = run_gain_sweep(preset, gammas, resolve_jobs(jobs))
    path: Path = resolve_out_dir(out_dir, preset.name, "gains.csv")
    write_gain_rows(path, rows, config_hash(preset))
    for row in rows:
        click.echo(f"gamma_sr={row.gamma_sr}: {row.gain_unkicked:.4g} over "
                   f"the top, {row.gain_plateau:.4g} over the plateau")
