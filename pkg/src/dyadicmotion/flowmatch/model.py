"""FlowModel: condition encoder + DiT velocity network."""

from __future__ import annotations

import torch
from torch import nn

from ..conditioning.encoder import CondBatch, ConditionEncoder
from .dit import DiT, FlowModelConfig


class FlowModel(nn.Module):
    def __init__(self, config: FlowModelConfig):
        super().__init__()
        self.config = config
        self.encoder = ConditionEncoder(config.cond, config.hidden_dim)
        self.dit = DiT(config)

    def forward(
        self,
        x_t: torch.Tensor,
        t: torch.Tensor,
        cond: CondBatch,
        unconditional: bool = False,
    ) -> torch.Tensor:
        cond_embedding = self.encoder(cond, unconditional=unconditional)
        return self.dit(x_t, t, cond_embedding.to(x_t.dtype))

    def velocity_closure(self, cond: CondBatch):
        """Bind a condition batch; returns fn(x, t, unconditional) -> velocity."""

        def velocity(x: torch.Tensor, t: torch.Tensor, unconditional: bool = False):
            return self.forward(x, t, cond, unconditional=unconditional)

        return velocity
