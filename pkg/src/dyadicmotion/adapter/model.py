"""Adapter head: MLP over interpolated hidden states producing code logits.

One adapter predicts one code stream: 12 valence tokens, 12 arousal
tokens, or the gesture vocabulary plus its null class. The underlying
speech model stays frozen; only the adapter trains.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from ..errors import ConfigError, ShapeError

STREAMS = ("valence", "arousal", "gesture")
EMOTION_BINS = 12


@dataclass
class CodePrediction:
    stream: str
    logits: np.ndarray  # (windows, vocab)
    rate: float  # tokens per second

    def __post_init__(self):
        if self.stream not in STREAMS:
            raise ConfigError(f"unknown stream {self.stream!r}")
        self.logits = np.asarray(self.logits, dtype=np.float64)
        if self.logits.ndim != 2:
            raise ShapeError("logits must be (windows, vocab)")

    @property
    def ids(self) -> np.ndarray:
        return self.logits.argmax(axis=1)


class AdapterHead(nn.Module):
    """Two hidden GELU layers, then a projection onto the codebook."""

    def __init__(self, d_model: int, vocab: int, stream: str, width: int = 512):
        super().__init__()
        if stream not in STREAMS:
            raise ConfigError(f"unknown stream {stream!r}")
        self.stream = stream
        self.vocab = vocab
        self.mlp = nn.Sequential(
            nn.Linear(d_model, width),
            nn.GELU(),
            nn.Linear(width, width),
            nn.GELU(),
        )
        self.project = nn.Linear(width, vocab)

    def forward(self, states: torch.Tensor) -> torch.Tensor:
        return self.project(self.mlp(states))

    def predict(self, states: np.ndarray, rate: float) -> CodePrediction:
        x = torch.as_tensor(np.asarray(states), dtype=torch.float32)
        if x.ndim != 2 or x.shape[1] != self.mlp[0].in_features:
            raise ShapeError(
                f"expected (L, {self.mlp[0].in_features}) states, got {tuple(x.shape)}"
            )
        with torch.no_grad():
            logits = self.forward(x).numpy()
        return CodePrediction(stream=self.stream, logits=logits, rate=rate)
