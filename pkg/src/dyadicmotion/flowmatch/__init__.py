"""Flow-matching generative core."""

from .checkpoint import load_checkpoint, save_checkpoint
from .dit import ATTENTION_VARIANTS, DiT, FlowModelConfig, RMSNorm
from .loss import cfm_loss
from .model import FlowModel
from .sampler import cfg_combine, sample_ode
from .schedule import Schedule, interpolant, target_velocity
from .training import TrainConfig, TrainResult, eval_loss, load_model, save_model, train

__all__ = [
    "load_checkpoint",
    "save_checkpoint",
    "ATTENTION_VARIANTS",
    "DiT",
    "FlowModelConfig",
    "RMSNorm",
    "cfm_loss",
    "FlowModel",
    "cfg_combine",
    "sample_ode",
    "Schedule",
    "interpolant",
    "target_velocity",
    "TrainConfig",
    "TrainResult",
    "eval_loss",
    "load_model",
    "save_model",
    "train",
]
