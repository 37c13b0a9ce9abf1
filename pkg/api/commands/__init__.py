"""
Shared options of the command line verbs.
"""
from pathlib import Path
from typing import Any, Callable, Optional
import click
from core.config import get_setting
from schemas.environment import RewardMode
from schemas.experiment import ExperimentPreset
from services.experiments import PRESETS, customize, get_preset

Decorator = Callable[[Callable[..., Any]], Callable[..., Any]]


def preset_option(default: str) -> Decorator:
    """
    --preset choice among the preset table
    """
    return click.option("--preset", "preset_name", default=default,
                        show_default=True,
                        type=click.Choice(sorted(PRESETS)),
                        help="Named experiment preset.")


seed_option: Decorator = click.option(
    "--seed", type=int, default=None,
    help="Base seed; agent a uses seed + a. Defaults to the preset seed.")
out_dir_option: Decorator = click.option(
    "--out-dir", type=click.Path(file_okay=False, path_type=Path),
    default=None, help="Output directory, defaults to OUTPUT_DIR.")
jobs_option: Decorator = click.option(
    "--jobs", type=click.IntRange(min=1), default=None,
    help="Parallel rollout workers, defaults to JOBS.")
reward_mode_option: Decorator = click.option(
    "--reward-mode", type=click.Choice([mode.value for mode in RewardMode]),
    default=None, help="Override the reward of the preset.")


def float_list(_: click.Context, __: click.Parameter, value: Optional[str]
               ) -> tuple[float, ...]:
    """
    Parse a comma separated list of floats
    """
    if not value:
        return ()
    try:
        return tuple(float(item) for item in value.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"not a list of numbers: {value}") from exc


def int_list(_: click.Context, __: click.Parameter, value: Optional[str]
             ) -> tuple[int, ...]:
    """
    Parse a comma separated list of integers
    """
    if not value:
        return ()
    try:
        return tuple(int(item) for item in value.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"not a list of integers: {value}") from exc


def resolve_preset(name: str, seed: Optional[int],
                   reward_mode: Optional[str], **trainer: Any
                   ) -> ExperimentPreset:
    """
    Preset with the command line overrides applied
    """
    overrides: dict[str, Any] = {key: value for key, value in trainer.items()
                                 if value is not None}
    return customize(get_preset(name), seed,
                     RewardMode(reward_mode) if reward_mode else None,
                     **overrides)


def resolve_out_dir(out_dir: Optional[Path], *parts: str) -> Path:
    """
    Output directory below OUTPUT_DIR unless given explicitly
    """
    base: Path = out_dir if out_dir is not None else get_setting().OUTPUT_DIR
    return base.joinpath(*parts)


def resolve_jobs(jobs: Optional[int]) -> int:
    """
    Number of rollout workers, JOBS by default
    """
    return jobs if jobs is not None else get_setting().JOBS
