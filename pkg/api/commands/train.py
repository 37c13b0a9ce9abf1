"""
train command module.
"""
from pathlib import Path
from typing import Optional
import click
from api.commands import (jobs_option, out_dir_option, preset_option,
                          resolve_jobs, resolve_out_dir, resolve_preset,
                          reward_mode_option, seed_option)
from models.bundle import RunArtifactBundle
from schemas.experiment import ExperimentPreset
from services.experiments import run_training


@click.command("train")
@preset_option("gains")
@seed_option
@out_dir_option
@jobs_option
@reward_mode_option
@click.option("--agents", "n_agents", type=click.IntRange(min=1),
              default=None, help="Override the number of agents.")
@click.option("--iterations", "n_iterations", type=click.IntRange(min=0),
              default=None, help="Override the number of iterations.")
@click.option("--episodes", "n_episodes", type=click.IntRange(min=1),
              default=None, help="Override the episodes per iteration.")
def train(preset_name: str, seed: Optional[int], out_dir: Optional[Path],
          jobs: Optional[int], reward_mode: Optional[str],
          n_agents: Optional[int], n_iterations: Optional[int],
          n_episodes: Optional[int]) -> None:
    """
    Train the agents of a preset and store the run artifacts.
    """
    preset: ExperimentPreset = resolve_preset(
        preset_name, seed, reward_mode, n_agents=n_agents,
        n_iterations=n_iterations, n_episodes=n_episodes)
    directory: Path = resolve_out_dir(out_dir, preset.name, "train")
    bundle: RunArtifactBundle = run_training(
        preset, resolve_jobs(jobs), directory)
    click.echo(f"best agent {bundle.agent}: reward {bundle.reward!r} with "
               f"{len(bundle.policy)} kicks, stored in {directory}")
