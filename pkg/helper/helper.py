"""
Helpers shared by the services, persistence and command line.
"""
import hashlib
from typing import Any
import numpy as np
import orjson
from pydantic import BaseModel

ROLLOUT_STREAM: int = 0
SHUFFLE_STREAM: int = 1
EXTRACTION_STREAM: int = 2
STUDY_STREAM: int = 3


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """
    Independent random stream for (seed, keys), e.g. per episode
    :param seed: base seed of the run
    :type seed: int
    :param keys: stream identifiers such as (stream, iteration, episode)
    :type keys: int
    :return: random generator
    :rtype: np.random.Generator
    """
    return np.random.default_rng(
        np.random.SeedSequence([int(seed), *map(int, keys)]))


def model_payload(model: BaseModel) -> dict[str, Any]:
    """
    JSON-compatible content of a pydantic model, enums as values
    :param model: pydantic model
    :type model: BaseModel
    :return: plain dictionary
    :rtype: dict[str, Any]
    """
    return orjson.loads(model.json())


def config_hash(model: BaseModel | dict[str, Any]) -> str:
    """
    Short SHA-256 of the canonical JSON of a configuration
    :param model: configuration
    :type model: BaseModel | dict[str, Any]
    :return: 12 hex digits
    :rtype: str
    """
    payload: dict[str, Any] = model_payload(model) \
        if isinstance(model, BaseModel) else model
    digest: str = hashlib.sha256(
        orjson.dumps(payload, option=orjson.OPT_SORT_KEYS)).hexdigest()
    return digest[:12]


def format_float(value: float) -> str:
    """
    Shortest decimal text that parses back to the same float
    """
    return repr(float(value))
