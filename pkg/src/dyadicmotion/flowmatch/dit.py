"""Diffusion-transformer velocity network.

RMSNorm throughout, key-query normalization before the attention dot
product, and four conditioning variants:

* ``self``: condition embeddings are added to the projected motion
  tokens and the blocks run plain self-attention;
* ``cross``: motion tokens form the queries, the condition stream forms
  keys/values;
* ``windowed_self`` / ``windowed_cross``: attention is restricted to
  non-overlapping windows of ``window`` frames.

Frame positions are encoded sinusoidally; windowed variants encode the
position within the window, so attention behaves identically in every
window and reduces exactly to the standard variant once the window
covers the whole sequence. The flow time t enters as a sinusoidal
feature mapped through an MLP and added to every token.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import torch
from torch import nn
import torch.nn.functional as F

from ..conditioning.encoder import CondSpec
from ..errors import ConfigError, ShapeError
from .schedule import Schedule

ATTENTION_VARIANTS = ("self", "cross", "windowed_self", "windowed_cross")


@dataclass
class FlowModelConfig:
    motion_dim: int
    cond: CondSpec
    layers: int = 4
    hidden_dim: int = 256
    ffn_dim: int = 1024
    heads: int = 4
    attention: str = "self"
    window: int = 30
    schedule: Schedule = field(default_factory=Schedule)

    def __post_init__(self):
        if self.attention not in ATTENTION_VARIANTS:
            raise ConfigError(
                f"attention must be one of {ATTENTION_VARIANTS}, got {self.attention!r}"
            )
        if self.hidden_dim % self.heads != 0:
            raise ConfigError(
                f"hidden_dim {self.hidden_dim} must be divisible by heads {self.heads}"
            )
        if self.windowed and self.window < 1:
            raise ConfigError(f"window must be >= 1, got {self.window}")
        if self.motion_dim < 1 or self.layers < 1:
            raise ConfigError("motion_dim and layers must be positive")

    @property
    def windowed(self) -> bool:
        return self.attention.startswith("windowed")

    @property
    def cross(self) -> bool:
        return self.attention.endswith("cross")

    def to_dict(self) -> dict:
        return {
            "motion_dim": self.motion_dim,
            "cond": self.cond.to_dict(),
            "layers": self.layers,
            "hidden_dim": self.hidden_dim,
            "ffn_dim": self.ffn_dim,
            "heads": self.heads,
            "attention": self.attention,
            "window": self.window,
            "sigma_min": self.schedule.sigma_min,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "FlowModelConfig":
        return cls(
            motion_dim=obj["motion_dim"],
            cond=CondSpec.from_dict(obj["cond"]),
            layers=obj["layers"],
            hidden_dim=obj["hidden_dim"],
            ffn_dim=obj["ffn_dim"],
            heads=obj["heads"],
            attention=obj["attention"],
            window=obj["window"],
            schedule=Schedule(sigma_min=obj.get("sigma_min", 1e-4)),
        )


class RMSNorm(nn.Module):
    def __init__(self, dim: int, eps: float = 1e-6):
        super().__init__()
        self.eps = eps
        self.weight = nn.Parameter(torch.ones(dim))

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        rms = torch.rsqrt(x.pow(2).mean(dim=-1, keepdim=True) + self.eps)
        return x * rms * self.weight


def sinusoidal_features(positions: torch.Tensor, dim: int, max_period: float = 10000.0):
    """Standard sin/cos features; positions is any float tensor, output (*, dim)."""
    half = dim // 2
    freqs = torch.exp(
        -math.log(max_period)
        * torch.arange(half, dtype=positions.dtype, device=positions.device)
        / max(half, 1)
    )
    args = positions[..., None] * freqs
    feats = torch.cat([torch.sin(args), torch.cos(args)], dim=-1)
    if dim % 2:
        feats = F.pad(feats, (0, 1))
    return feats


def window_mask(n: int, window: int, device) -> torch.Tensor:
    """(n, n) boolean mask, True where attention is allowed."""
    ids = torch.arange(n, device=device) // window
    return ids[:, None] == ids[None, :]


class KQNormAttention(nn.Module):
    """Multi-head attention with RMSNorm applied to queries and keys."""

    def __init__(self, hidden_dim: int, heads: int):
        super().__init__()
        self.heads = heads
        self.head_dim = hidden_dim // heads
        self.q_proj = nn.Linear(hidden_dim, hidden_dim)
        self.k_proj = nn.Linear(hidden_dim, hidden_dim)
        self.v_proj = nn.Linear(hidden_dim, hidden_dim)
        self.out_proj = nn.Linear(hidden_dim, hidden_dim)
        self.q_norm = RMSNorm(self.head_dim)
        self.k_norm = RMSNorm(self.head_dim)

    def forward(
        self, query: torch.Tensor, kv: torch.Tensor, mask: torch.Tensor | None = None
    ) -> torch.Tensor:
        b, n, _ = query.shape
        m = kv.shape[1]
        q = self.q_proj(query).view(b, n, self.heads, self.head_dim).transpose(1, 2)
        k = self.k_proj(kv).view(b, m, self.heads, self.head_dim).transpose(1, 2)
        v = self.v_proj(kv).view(b, m, self.heads, self.head_dim).transpose(1, 2)
        q = self.q_norm(q)
        k = self.k_norm(k)
        attn_mask = mask if mask is None else mask[None, None]
        out = F.scaled_dot_product_attention(q, k, v, attn_mask=attn_mask)
        out = out.transpose(1, 2).reshape(b, n, -1)
        return self.out_proj(out)


class DiTBlock(nn.Module):
    def __init__(self, config: FlowModelConfig):
        super().__init__()
        self.attn = KQNormAttention(config.hidden_dim, config.heads)
        self.attn_norm = RMSNorm(config.hidden_dim)
        self.cross = config.cross
        if self.cross:
            self.kv_norm = RMSNorm(config.hidden_dim)
        self.ffn_norm = RMSNorm(config.hidden_dim)
        self.ffn = nn.Sequential(
            nn.Linear(config.hidden_dim, config.ffn_dim),
            nn.SiLU(),
            nn.Linear(config.ffn_dim, config.hidden_dim),
        )

    def forward(self, h: torch.Tensor, cond: torch.Tensor | None, mask) -> torch.Tensor:
        q = self.attn_norm(h)
        kv = self.kv_norm(cond) if self.cross else q
        h = h + self.attn(q, kv, mask)
        h = h + self.ffn(self.ffn_norm(h))
        return h


class DiT(nn.Module):
    """Velocity network: (x_t, t, cond_embedding) -> velocity."""

    def __init__(self, config: FlowModelConfig):
        super().__init__()
        self.config = config
        self.in_proj = nn.Linear(config.motion_dim, config.hidden_dim)
        self.time_mlp = nn.Sequential(
            nn.Linear(config.hidden_dim, config.hidden_dim),
            nn.SiLU(),
            nn.Linear(config.hidden_dim, config.hidden_dim),
        )
        self.blocks = nn.ModuleList(DiTBlock(config) for _ in range(config.layers))
        self.out_norm = RMSNorm(config.hidden_dim)
        self.out_proj = nn.Linear(config.hidden_dim, config.motion_dim)
        nn.init.zeros_(self.out_proj.weight)
        nn.init.zeros_(self.out_proj.bias)

    def _positions(self, n: int, dtype, device) -> torch.Tensor:
        idx = torch.arange(n, dtype=dtype, device=device)
        if self.config.windowed:
            idx = torch.remainder(idx, self.config.window)
        return idx

    def forward(
        self, x_t: torch.Tensor, t: torch.Tensor, cond_embedding: torch.Tensor
    ) -> torch.Tensor:
        if x_t.ndim != 3 or x_t.shape[-1] != self.config.motion_dim:
            raise ShapeError(
                f"x_t must be (B, N, {self.config.motion_dim}), got {tuple(x_t.shape)}"
            )
        b, n, _ = x_t.shape
        if cond_embedding.shape[:2] != (b, n):
            raise ShapeError(
                f"condition embedding must be (B, N, hidden) aligned with motion; "
                f"got {tuple(cond_embedding.shape)} vs motion {tuple(x_t.shape)}"
            )
        t = torch.as_tensor(t, dtype=x_t.dtype, device=x_t.device)
        if t.ndim == 0:
            t = t.expand(b)

        pos = sinusoidal_features(
            self._positions(n, x_t.dtype, x_t.device), self.config.hidden_dim
        )
        t_emb = self.time_mlp(sinusoidal_features(t, self.config.hidden_dim))[:, None, :]

        h = self.in_proj(x_t) + pos[None] + t_emb
        if self.config.cross:
            cond_stream = cond_embedding + pos[None] + t_emb
        else:
            h = h + cond_embedding
            cond_stream = None

        mask = None
        if self.config.windowed and self.config.window < n:
            mask = window_mask(n, self.config.window, x_t.device)
        for block in self.blocks:
            h = block(h, cond_stream, mask)
        return self.out_proj(self.out_norm(h))
