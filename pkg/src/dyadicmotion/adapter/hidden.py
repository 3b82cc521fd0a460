"""Frozen speech-model hidden states and their rate conversion.

The adapter consumes final-layer hidden states of a frozen speech model
at the model's token rate and re-times them to the adapter's code rate
with linear interpolation. A tiny frozen GRU over speech tokens stands
in for the real model so the pipeline runs without external weights;
any (L, d_model) array plugs in the same way.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from ..errors import DomainError, ShapeError


@dataclass
class HiddenStates:
    states: np.ndarray  # (L, d_model)
    source_rate: float  # tokens per second

    def __post_init__(self):
        self.states = np.asarray(self.states, dtype=np.float64)
        if self.states.ndim != 2 or self.states.shape[0] < 1:
            raise ShapeError(f"hidden states must be (L>=1, d), got {self.states.shape}")
        if not np.isfinite(self.states).all():
            raise DomainError("hidden states contain non-finite values")
        if self.source_rate <= 0:
            raise DomainError(f"source_rate must be positive, got {self.source_rate}")

    @property
    def d_model(self) -> int:
        return self.states.shape[1]


def interpolate_hidden(hidden: HiddenStates, target_rate: float) -> HiddenStates:
    """Linear re-timing of hidden states to ``target_rate``.

    Output length L' = round(L * target_rate / source_rate). Output step
    j samples the source at the window midpoint (j + 0.5) * L / L' - 0.5
    with linear interpolation, extrapolating linearly past the ends so
    down-then-up rate round trips are exact on linear signals.
    """
    if target_rate <= 0:
        raise DomainError(f"target_rate must be positive, got {target_rate}")
    length = hidden.states.shape[0]
    new_length = int(round(length * target_rate / hidden.source_rate))
    if new_length < 1:
        raise DomainError(
            f"target rate {target_rate} collapses {length} states to zero length"
        )
    if new_length == length:
        return HiddenStates(states=hidden.states.copy(), source_rate=target_rate)

    positions = (np.arange(new_length) + 0.5) * (length / new_length) - 0.5
    if length == 1:
        return HiddenStates(
            states=np.repeat(hidden.states, new_length, axis=0), source_rate=target_rate
        )
    idx0 = np.clip(np.floor(positions).astype(int), 0, length - 2)
    frac = positions - idx0  # may leave [0, 1] at the edges: linear extrapolation
    out = (1.0 - frac)[:, None] * hidden.states[idx0] + frac[:, None] * hidden.states[idx0 + 1]
    return HiddenStates(states=out, source_rate=target_rate)


class FrozenSpeechEncoder(nn.Module):
    """Stand-in frozen speech model: embedding + GRU, parameters fixed."""

    def __init__(self, vocab_size: int, d_model: int = 64, seed: int = 0):
        super().__init__()
        torch.manual_seed(seed)
        self.embed = nn.Embedding(vocab_size, d_model)
        self.gru = nn.GRU(d_model, d_model, batch_first=True)
        for p in self.parameters():
            p.requires_grad_(False)
        self.eval()

    @torch.no_grad()
    def hidden_states(self, tokens: np.ndarray, source_rate: float = 12.5) -> HiddenStates:
        ids = torch.as_tensor(np.asarray(tokens), dtype=torch.long)[None]
        out, _ = self.gru(self.embed(ids))
        return HiddenStates(states=out[0].numpy(), source_rate=source_rate)
