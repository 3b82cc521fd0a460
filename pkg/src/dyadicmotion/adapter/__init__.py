"""Codebook prediction over frozen speech-model hidden states."""

from .hidden import FrozenSpeechEncoder, HiddenStates, interpolate_hidden
from .metrics import group_3class, macro_prf
from .model import EMOTION_BINS, STREAMS, AdapterHead, CodePrediction
from .training import AdapterTrainResult, train_adapter

__all__ = [
    "FrozenSpeechEncoder",
    "HiddenStates",
    "interpolate_hidden",
    "group_3class",
    "macro_prf",
    "EMOTION_BINS",
    "STREAMS",
    "AdapterHead",
    "CodePrediction",
    "AdapterTrainResult",
    "train_adapter",
]
