"""
Logging setup for the command line and the workers.
"""
import logging
import logging.config
from core import config


def setup_logging(setting: config.Settings, level: str | None = None
                  ) -> None:
    """
    Configure the root logger from settings.
    :param setting: settings object with LOG_LEVEL and LOG_FORMAT
    :type setting: Settings
    :param level: optional override of the configured level
    :type level: str
    :return: None
    :rtype: NoneType
    """
    logging.config.dictConfig({
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {"default": {"format": setting.LOG_FORMAT}},
        "handlers": {
            "console": {
                "class": "logging.StreamHandler",
                "formatter": "default",
                "stream": "ext://sys.stderr",
            },
        },
        "root": {"level": (level or setting.LOG_LEVEL).upper(),
                 "handlers": ["console"]},
    })
