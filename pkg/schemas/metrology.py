"""
Metrology schema script.
"""
from typing import Any, Optional
from pydantic import BaseModel, Field, root_validator


class QfiReport(BaseModel):
    """
    Quantum Fisher information of a state at a given time.
    """
    qfi: float = Field(..., title='QFI', ge=0.0)
    time: float = Field(..., title='Time', ge=0.0)
    rescaled: Optional[float] = Field(
        None, title='Rescaled QFI', description='qfi/time, None at time 0')
    crlb_single_shot: Optional[float] = Field(
        None, title='Cramer-Rao bound',
        description='Variance bound 1/qfi for a single repetition')

    @root_validator(skip_on_failure=True, allow_reuse=True)
    def derive_fields(cls, values: dict[str, Any]) -> dict[str, Any]:
        """
        Fill the rescaled QFI and the single-shot bound.
        :param values: field values
        :type values: dict[str, Any]
        :return: field values
        :rtype: dict[str, Any]
        """
        qfi: float = values["qfi"]
        time: float = values["time"]
        values["rescaled"] = qfi / time if time > 0 else None
        values["crlb_single_shot"] = 1.0 / qfi if qfi > 0 else None
        return values
