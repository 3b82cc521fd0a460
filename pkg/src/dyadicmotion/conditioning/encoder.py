"""Condition embedding: from bundles to the model's feature space.

Speech channels share one token embedding table; channel identity is
restored with an additive learned tag. Discrete control blocks get their
own tables, continuous blocks a linear map. Per-block embeddings are
concatenated and projected to the transformer width. Every block owns a
learned null embedding used both for condition dropout during training
and for the unconditioned pass of classifier-free guidance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import torch
from torch import nn

from ..errors import ConfigError, ShapeError
from .bundle import SPEECH_A1, SPEECH_A2, ConditionBundle

SPEECH_BLOCKS = (SPEECH_A1, SPEECH_A2)


@dataclass(frozen=True)
class CondBlockSpec:
    """One conditioning block.

    kind: "speech_tokens" (shared table), "tokens" (own table), or
    "continuous". width = vocabulary size for token kinds, feature
    dimension for continuous kinds.
    """

    name: str
    kind: str
    width: int
    embed_dim: int = 32

    def __post_init__(self):
        if self.kind not in ("speech_tokens", "tokens", "continuous"):
            raise ConfigError(f"unknown block kind {self.kind!r}")
        if self.width < 1 or self.embed_dim < 1:
            raise ConfigError(f"bad block widths for {self.name!r}")


@dataclass(frozen=True)
class CondSpec:
    blocks: tuple[CondBlockSpec, ...]

    def __post_init__(self):
        names = [b.name for b in self.blocks]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate block names: {names}")
        vocabs = {b.width for b in self.blocks if b.kind == "speech_tokens"}
        if len(vocabs) > 1:
            raise ConfigError("speech channels must share one vocabulary")

    def names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.blocks)

    def to_dict(self) -> dict:
        return {
            "blocks": [
                {
                    "name": b.name,
                    "kind": b.kind,
                    "width": b.width,
                    "embed_dim": b.embed_dim,
                }
                for b in self.blocks
            ]
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "CondSpec":
        return cls(blocks=tuple(CondBlockSpec(**b) for b in obj["blocks"]))


def spec_for_mode(
    mode: str,
    speech_vocab: int,
    visual_dim: int = 0,
    control_blocks: tuple[CondBlockSpec, ...] = (),
    speech_embed_dim: int = 32,
) -> CondSpec:
    """Condition spec matching what build_condition emits for a mode."""
    blocks = [CondBlockSpec(SPEECH_A1, "speech_tokens", speech_vocab, speech_embed_dim)]
    if mode in ("dyadic", "av_dyadic"):
        blocks.append(CondBlockSpec(SPEECH_A2, "speech_tokens", speech_vocab, speech_embed_dim))
    if mode == "av_dyadic":
        if visual_dim <= 0:
            raise ConfigError("av_dyadic spec needs visual_dim > 0")
        blocks.append(CondBlockSpec("visual_v2", "continuous", visual_dim, speech_embed_dim))
    blocks.extend(control_blocks)
    return CondSpec(blocks=tuple(blocks))


@dataclass
class CondBatch:
    """Stacked bundles ready for the encoder."""

    n_frames: int
    blocks: dict[str, torch.Tensor]  # (B, N) long or (B, N, W) float
    dropped: dict[str, torch.Tensor] = field(default_factory=dict)  # (B,) bool

    @property
    def batch_size(self) -> int:
        return next(iter(self.blocks.values())).shape[0]


def batch_bundles(
    spec: CondSpec,
    bundles: list[ConditionBundle],
    dtype: torch.dtype = torch.float32,
    device: torch.device | str = "cpu",
) -> CondBatch:
    """Stack equal-length bundles into tensors in the block-spec order."""
    if not bundles:
        raise ConfigError("batch_bundles needs at least one bundle")
    n = bundles[0].n_frames
    if any(b.n_frames != n for b in bundles):
        raise ShapeError("all bundles in a batch must share the frame count")
    blocks: dict[str, torch.Tensor] = {}
    dropped: dict[str, torch.Tensor] = {}
    for block in spec.blocks:
        missing = [i for i, b in enumerate(bundles) if block.name not in b.blocks]
        if missing:
            raise ConfigError(
                f"bundle(s) {missing} missing required block {block.name!r}"
            )
        stacked = np.stack([b.blocks[block.name] for b in bundles])
        if block.kind == "continuous":
            tensor = torch.as_tensor(stacked, dtype=dtype, device=device)
            if tensor.ndim != 3 or tensor.shape[-1] != block.width:
                raise ShapeError(
                    f"block {block.name!r}: expected (B, N, {block.width}), got "
                    f"{tuple(tensor.shape)}"
                )
        else:
            tensor = torch.as_tensor(stacked, dtype=torch.long, device=device)
            if tensor.ndim != 2:
                raise ShapeError(f"token block {block.name!r} must be (B, N)")
            if tensor.numel() and (tensor.min() < 0 or tensor.max() >= block.width):
                raise ShapeError(
                    f"block {block.name!r}: token ids outside [0, {block.width})"
                )
        blocks[block.name] = tensor
        dropped[block.name] = torch.tensor(
            [bool(b.dropout_mask.get(block.name, False)) for b in bundles],
            dtype=torch.bool,
            device=device,
        )
    return CondBatch(n_frames=n, blocks=blocks, dropped=dropped)


class ConditionEncoder(nn.Module):
    """Embeds a CondBatch to (B, N, hidden)."""

    def __init__(self, spec: CondSpec, hidden_dim: int):
        super().__init__()
        self.spec = spec
        speech_blocks = [b for b in spec.blocks if b.kind == "speech_tokens"]
        if speech_blocks:
            vocab = speech_blocks[0].width
            dim = speech_blocks[0].embed_dim
            self.speech_table = nn.Embedding(vocab, dim)
            self.channel_tags = nn.ParameterDict(
                {b.name: nn.Parameter(torch.zeros(dim)) for b in speech_blocks}
            )
        self.token_tables = nn.ModuleDict(
            {
                b.name: nn.Embedding(b.width, b.embed_dim)
                for b in spec.blocks
                if b.kind == "tokens"
            }
        )
        self.continuous_maps = nn.ModuleDict(
            {
                b.name: nn.Linear(b.width, b.embed_dim)
                for b in spec.blocks
                if b.kind == "continuous"
            }
        )
        self.null_embeddings = nn.ParameterDict(
            {b.name: nn.Parameter(torch.randn(b.embed_dim) * 0.02) for b in spec.blocks}
        )
        total = sum(b.embed_dim for b in spec.blocks)
        self.project = nn.Linear(total, hidden_dim)

    def null_embedding(self, name: str) -> torch.Tensor:
        return self.null_embeddings[name]

    def block_embedding(self, batch: CondBatch, name: str) -> torch.Tensor:
        """(B, N, embed_dim) for one block, nulls substituted where dropped."""
        block = next(b for b in self.spec.blocks if b.name == name)
        values = batch.blocks[name]
        if block.kind == "speech_tokens":
            emb = self.speech_table(values) + self.channel_tags[name]
        elif block.kind == "tokens":
            emb = self.token_tables[name](values)
        else:
            emb = self.continuous_maps[name](values)
        dropped = batch.dropped.get(name)
        if dropped is not None and bool(dropped.any()):
            null = self.null_embeddings[name].to(emb.dtype)
            emb = torch.where(dropped[:, None, None], null.expand_as(emb), emb)
        return emb

    def forward(self, batch: CondBatch, unconditional: bool = False) -> torch.Tensor:
        parts = []
        for block in self.spec.blocks:
            if unconditional:
                b = batch.batch_size
                null = self.null_embeddings[block.name]
                parts.append(
                    null.view(1, 1, -1).expand(b, batch.n_frames, block.embed_dim)
                )
            else:
                parts.append(self.block_embedding(batch, block.name))
        stacked = torch.cat(parts, dim=-1)
        return self.project(stacked.to(self.project.weight.dtype))
