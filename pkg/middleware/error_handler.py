"""
Error Handler script for the command line.
"""
import logging
from typing import Any
import click
from pydantic import ValidationError
from core.exceptions import KickedTopError

logger: logging.Logger = logging.getLogger(__name__)


class ErrorHandler(click.Group):
    """
    Error Handler class based on the click command group
    """

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (KickedTopError, ValidationError) as exc:
            logger.debug("command failed", exc_info=True)
            message: str = str(exc).replace("\n", "; ")
            raise click.ClickException(
                f"{type(exc).__name__}: {message}") from exc
