"""
Main script to execute the command line.
"""
import logging
from typing import Optional
import click
from api.commands.baselines import baselines
from api.commands.export import export
from api.commands.presets import presets
from api.commands.replay import replay
from api.commands.study import study
from api.commands.sweep import sweep
from api.commands.train import train
from core import config
from core.logging_config import setup_logging
from middleware.error_handler import ErrorHandler

logger: logging.Logger = logging.getLogger(__name__)


@click.group(cls=ErrorHandler)
@click.option("--log-level", default=None,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"],
                                case_sensitive=False),
              help="Override LOG_LEVEL.")
def cli(log_level: Optional[str]) -> None:
    """
    Reinforcement-learned kicks for a spin sensor under decoherence.
    """
    setting: config.Settings = config.get_setting()
    setup_logging(setting, log_level)
    logger.debug("%s: output below %s, %d job(s)", setting.PROJECT_NAME,
                 setting.OUTPUT_DIR, setting.JOBS)


for command in (presets, baselines, train, study, replay, export, sweep):
    cli.add_command(command)


if __name__ == "__main__":
    cli()
