"""
Experiment schema script.
"""
from enum import Enum
from pydantic import BaseModel, Field
from schemas.trainer import TrainerConfig


class Baseline(str, Enum):
    """
    Reference models compared against the optimized kicked top
    """
    TOP: str = 'top'
    PERIODIC_K30: str = 'periodic_k30'


class QuasiProbKind(str, Enum):
    """
    Quasi-probability distributions on the sphere
    """
    HUSIMI: str = 'husimi'
    WIGNER: str = 'wigner'


class ExperimentPreset(BaseModel):
    """
    Named experiment: training hyperparameters and requested outputs.
    """
    name: str = Field(..., title='Preset name', min_length=1)
    description: str = Field('', title='Description')
    trainer: TrainerConfig = Field(..., title='Trainer configuration')
    baselines: tuple[Baseline, ...] = Field(
        (Baseline.TOP, Baseline.PERIODIC_K30), title='Baselines')
    outputs: tuple[str, ...] = Field(
        ('curves', 'policy', 'network', 'trace', 'kick_table',
         'quasiprob'), title='Outputs')
    gamma_sweep: tuple[float, ...] = Field(
        (), title='Superradiant rates of the gain sweep')

    class Config:
        """
        Config class for ExperimentPreset
        """
        frozen: bool = True


class GainRow(BaseModel):
    """
    Gains of the optimized policy for one superradiant rate.
    """
    gamma_sr: float = Field(..., title='Superradiant rate', gt=0.0)
    rl_qfi: float = Field(..., title='Optimized QFI at T_opt')
    top_max_qfi: float = Field(..., title='Maximum QFI of the top')
    plateau_qfi: float = Field(..., title='Plateau of periodic kicking')
    gain_unkicked: float
    gain_plateau: float
