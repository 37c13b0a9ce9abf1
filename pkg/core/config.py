"""
Config script
"""
from functools import lru_cache
from pathlib import Path
from pydantic import BaseSettings, validator


class Settings(BaseSettings):
    """
    Settings class based on Pydantic Base Settings
    """

    class Config:
        """
        Config class for Settings
        """
        env_file: str = ".env"
        env_file_encoding: str = 'utf-8'

    PROJECT_NAME: str = "kicked-top-sensor"
    ENCODING: str = "UTF-8"
    OUTPUT_DIR: Path = Path("results")
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s %(levelname)s [%(name)s] %(message)s"
    JOBS: int = 1

    # numerics
    QFI_EPSILON: float = 1e-10
    PLATEAU_SHARE: float = 0.2
    CLAMP_TOLERANCE: float = 1e-10
    HERMITIAN_TOLERANCE: float = 1e-12

    # reinforcement learning
    STUDY_EPISODES_PER_AGENT: int = 20

    ENSEMBLE_SIZE: int = 1_000_000

    @validator("QFI_EPSILON", "CLAMP_TOLERANCE", "HERMITIAN_TOLERANCE",
               allow_reuse=True)
    def check_positive(cls, v: float) -> float:
        """
        Positive numeric setting validator.
        :param v: value to check
        :type v: float
        :return: the same value
        :rtype: float
        """
        if v <= 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    @validator("PLATEAU_SHARE", allow_reuse=True)
    def check_share(cls, v: float) -> float:
        """
        Share validator, a share lies in (0, 1].
        :param v: value to check
        :type v: float
        :return: the same value
        :rtype: float
        """
        if not 0 < v <= 1:
            raise ValueError(f"share must lie in (0, 1], got {v}")
        return v

    @validator("JOBS", "STUDY_EPISODES_PER_AGENT", "ENSEMBLE_SIZE",
               allow_reuse=True)
    def check_count(cls, v: int) -> int:
        """
        Count validator.
        :param v: value to check
        :type v: int
        :return: the same value
        :rtype: int
        """
        if v < 1:
            raise ValueError(f"must be at least 1, got {v}")
        return v


@lru_cache()
def get_setting() -> Settings:
    """
    Get settings cached
    :return: settings object
    :rtype: Settings
    """
    return Settings()
