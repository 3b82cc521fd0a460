"""Seed-deterministic training loop for flow models."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch

from ..conditioning.bundle import ConditionBundle, condition_dropout
from ..conditioning.encoder import batch_bundles
from ..errors import NumericError, ValidationError
from .checkpoint import load_checkpoint, save_checkpoint
from .dit import FlowModelConfig
from .loss import cfm_loss
from .model import FlowModel

logger = logging.getLogger(__name__)


@dataclass
class TrainConfig:
    steps: int = 1000
    batch_size: int = 16
    lr: float = 1e-3
    weight_decay: float = 0.0
    condition_dropout: float = 0.2
    grad_clip: float = 1.0
    lr_min_factor: float = 0.1  # cosine decay floor relative to lr
    seed: int = 0
    log_every: int = 100


@dataclass
class TrainResult:
    losses: list[float] = field(default_factory=list)

    @property
    def final_loss(self) -> float:
        return self.losses[-1] if self.losses else float("nan")


def train(
    model: FlowModel,
    examples: list[tuple],  # (motion (N, D) array, ConditionBundle)
    cfg: TrainConfig,
    example_transform=None,
) -> TrainResult:
    """Minimize the flow-matching loss over fixed-length windows.

    ``examples`` pair normalized motion windows with their condition
    bundles; all windows must share the frame count. Batch order, time
    draws, noise draws, and condition dropout all derive from cfg.seed,
    so two runs with the same seed produce identical loss curves.

    ``example_transform(motion, bundle, rng)``, when given, re-derives
    each drawn example before batching; gesture training uses it to
    re-randomize temporal condition drops on every draw.
    """
    if not examples:
        raise ValidationError("training needs at least one example")
    generator = torch.Generator().manual_seed(cfg.seed)
    drop_rng_seed = torch.randint(0, 2**31 - 1, (1,), generator=generator).item()
    drop_rng = np.random.default_rng(drop_rng_seed)

    optimizer = torch.optim.AdamW(
        model.parameters(), lr=cfg.lr, weight_decay=cfg.weight_decay
    )
    scheduler = torch.optim.lr_scheduler.CosineAnnealingLR(
        optimizer, T_max=max(cfg.steps, 1), eta_min=cfg.lr * cfg.lr_min_factor
    )
    dtype = next(model.parameters()).dtype
    result = TrainResult()
    n = len(examples)
    model.train()
    for step in range(cfg.steps):
        idx = torch.randint(0, n, (cfg.batch_size,), generator=generator).tolist()
        motions, bundles = [], []
        for i in idx:
            motion, bundle = examples[i]
            if example_transform is not None:
                motion, bundle = example_transform(motion, bundle, drop_rng)
            if cfg.condition_dropout > 0:
                bundle = condition_dropout(bundle, cfg.condition_dropout, drop_rng)
            motions.append(torch.as_tensor(motion, dtype=dtype))
            bundles.append(bundle)
        x = torch.stack(motions)
        cond = batch_bundles(model.config.cond, bundles, dtype=dtype)

        loss = cfm_loss(model.velocity_closure(cond), x, generator, model.config.schedule)
        if not torch.isfinite(loss):
            raise NumericError(
                f"training diverged at step {step}: loss={float(loss.item())}"
            )
        optimizer.zero_grad()
        loss.backward()
        if cfg.grad_clip > 0:
            torch.nn.utils.clip_grad_norm_(model.parameters(), cfg.grad_clip)
        optimizer.step()
        scheduler.step()
        result.losses.append(float(loss.item()))
        if cfg.log_every and step % cfg.log_every == 0:
            logger.info("step %d loss %.5f", step, result.losses[-1])
    model.eval()
    return result


def save_model(path: str | Path, model: FlowModel) -> Path:
    return save_checkpoint(path, model.config.to_dict(), model.state_dict())


def load_model(path: str | Path) -> FlowModel:
    config_dict, state_dict = load_checkpoint(path)
    config = FlowModelConfig.from_dict(config_dict)
    model = FlowModel(config)
    target_dtype = next(iter(state_dict.values())).dtype
    model.to(target_dtype)
    model.load_state_dict(state_dict)
    model.eval()
    return model


def eval_loss(
    model: FlowModel, examples: list[tuple], seed: int = 0, batch_size: int = 16
) -> float:
    """Mean flow-matching loss over all examples with frozen draws."""
    generator = torch.Generator().manual_seed(seed)
    dtype = next(model.parameters()).dtype
    total, count = 0.0, 0
    model.eval()
    with torch.no_grad():
        for start in range(0, len(examples), batch_size):
            chunk = examples[start : start + batch_size]
            x = torch.stack([torch.as_tensor(m, dtype=dtype) for m, _ in chunk])
            cond = batch_bundles(model.config.cond, [b for _, b in chunk], dtype=dtype)
            loss = cfm_loss(model.velocity_closure(cond), x, generator, model.config.schedule)
            total += float(loss.item()) * len(chunk)
            count += len(chunk)
    return total / max(count, 1)
