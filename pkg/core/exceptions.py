"""
Exceptions raised by the kicked top sensor package.
"""


class KickedTopError(Exception):
    """
    Base class for every domain error of this package.
    """


class InvalidSpinError(KickedTopError, ValueError):
    """
    Spin size is not a positive half-integer.
    """


class NonHermitianError(KickedTopError, ValueError):
    """
    A matrix expected to be Hermitian is not, beyond tolerance.
    """


class DimensionMismatchError(KickedTopError, ValueError):
    """
    Array shape does not match the expected dimension.
    """


class PropagationError(KickedTopError, ArithmeticError):
    """
    A propagator could not be computed or produced an invalid state.
    """


class EpisodeFinishedError(KickedTopError, RuntimeError):
    """
    Step requested on an episode that already reached its horizon.
    """


class KickRejectedError(KickedTopError):
    """
    KICK requested while masked by the kick budget or the per-slot cap.
    """


class OffGridPolicyError(KickedTopError, ValueError):
    """
    A kick policy holds a time that is not on the environment grid.
    """


class EmptyBatchError(KickedTopError, ValueError):
    """
    Training requested on an empty batch.
    """


class BaselineError(KickedTopError, ValueError):
    """
    Gain requested against a vanishing or degenerate baseline curve.
    """


class ArtifactError(KickedTopError, OSError):
    """
    Run artifact is missing, unreadable or inconsistent.
    """
