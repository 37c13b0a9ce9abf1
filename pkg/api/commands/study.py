"""
study command module.
"""
from pathlib import Path
from typing import Optional
import click
from api.commands import (int_list, jobs_option, out_dir_option,
                          preset_option, resolve_jobs, resolve_out_dir,
                          resolve_preset, reward_mode_option, seed_option)
from core.config import get_setting
from db.artifacts import write_study_rows
from helper.helper import config_hash
from schemas.experiment import ExperimentPreset
from schemas.trainer import StudyRow
from services.trainer import stability_study


@click.command("study")
@preset_option("learning-curve")
@seed_option
@out_dir_option
@jobs_option
@reward_mode_option
@click.option("--iteration-grid", callback=int_list, default="50,100,300",
              show_default=True, help="Comma separated iteration counts.")
@click.option("--episode-grid", callback=int_list, default="",
              help="Comma separated episodes per iteration.")
@click.option("--episodes-per-agent", type=click.IntRange(min=1),
              default=None, help="Sampled episodes per trained agent.")
def study(preset_name: str, seed: Optional[int], out_dir: Optional[Path],
          jobs: Optional[int], reward_mode: Optional[str],
          iteration_grid: tuple[int, ...], episode_grid: tuple[int, ...],
          episodes_per_agent: Optional[int]) -> None:
    """
    Mean and spread of rewards over agents along training grids.
    """
    if not iteration_grid and not episode_grid:
        raise click.UsageError("give --iteration-grid or --episode-grid")
    preset: ExperimentPreset = resolve_preset(preset_name, seed, reward_mode)
    rows: list[StudyRow] = stability_study(
        preset.trainer, iteration_grid, episode_grid,
        episodes_per_agent or get_setting().STUDY_EPISODES_PER_AGENT,
        resolve_jobs(jobs))
    path: Path = resolve_out_dir(out_dir, preset.name, "study.csv")
    write_study_rows(path, rows, config_hash(preset))
    for row in rows:
        click.echo(f"{row.axis}={row.value}: mean {row.mean_reward:.6g} "
                   f"std {row.std_reward:.6g}")
