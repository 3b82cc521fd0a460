"""VQ-VAE over body-pose frames for discrete gesture conditioning.

A frame-wise (kernel-1 temporal convolution) encoder maps pose vectors
to latents which are quantized against an EMA-updated codebook; a
matching decoder reconstructs pose frames. Code id |C| is reserved as
the null condition for temporal dropping and never appears in encoder
output; decoding it is an error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch
from torch import nn

from ..errors import ConfigError, DomainError, ValidationError


@dataclass
class GestureCodebook:
    size: int
    embeddings: np.ndarray  # (size, latent_dim)

    def __post_init__(self):
        if self.size < 2:
            raise ConfigError(f"codebook size must be >= 2, got {self.size}")
        self.embeddings = np.asarray(self.embeddings, dtype=np.float64)
        if self.embeddings.shape[0] != self.size:
            raise ConfigError("embedding count must equal codebook size")

    @property
    def null_id(self) -> int:
        return self.size


class VQGestureModel(nn.Module):
    """Encoder + EMA codebook + decoder over (N, pose_dim) sequences."""

    def __init__(self, pose_dim: int, codebook_size: int, latent_dim: int = 32):
        super().__init__()
        if codebook_size < 2:
            raise ConfigError(f"codebook size must be >= 2, got {codebook_size}")
        self.pose_dim = pose_dim
        self.codebook_size = codebook_size
        self.latent_dim = latent_dim
        self.encoder = nn.Conv1d(pose_dim, latent_dim, kernel_size=1)
        self.decoder = nn.Conv1d(latent_dim, pose_dim, kernel_size=1)
        self.register_buffer("codebook", torch.randn(codebook_size, latent_dim) * 0.1)
        self.register_buffer("ema_counts", torch.ones(codebook_size))
        self.register_buffer("ema_sums", self.codebook.clone())

    @property
    def null_id(self) -> int:
        return self.codebook_size

    def _encode_latent(self, frames: torch.Tensor) -> torch.Tensor:
        return self.encoder(frames.T[None]).squeeze(0).T  # (N, latent)

    def _nearest_codes(self, latents: torch.Tensor) -> torch.Tensor:
        dist = torch.cdist(latents, self.codebook)
        return dist.argmin(dim=1)

    def encode(self, sequence: np.ndarray) -> np.ndarray:
        """Nearest-codebook assignment of each frame's latent; (N,) ids < |C|."""
        frames = self._to_tensor(sequence)
        with torch.no_grad():
            latents = self._encode_latent(frames)
            return self._nearest_codes(latents).numpy()

    def decode(self, ids: np.ndarray) -> np.ndarray:
        """Reconstruct (N, pose_dim) frames from code ids."""
        ids = np.asarray(ids)
        if ids.size and (ids.min() < 0 or ids.max() > self.codebook_size):
            raise DomainError(f"code ids must lie in [0, {self.codebook_size}]")
        if np.any(ids == self.null_id):
            raise DomainError(
                f"null id {self.null_id} is condition-only and cannot be decoded"
            )
        with torch.no_grad():
            z = self.codebook[torch.as_tensor(ids, dtype=torch.long)]
            out = self.decoder(z.T[None]).squeeze(0).T
        return out.numpy().astype(np.float64)

    def _to_tensor(self, sequence: np.ndarray) -> torch.Tensor:
        sequence = np.asarray(sequence, dtype=np.float32)
        if sequence.ndim != 2 or sequence.shape[1] != self.pose_dim:
            raise ValidationError(
                f"expected (N, {self.pose_dim}) pose frames, got {sequence.shape}"
            )
        return torch.as_tensor(sequence)


def vq_fit(
    sequences: list[np.ndarray],
    codebook_size: int,
    seed: int,
    latent_dim: int = 32,
    epochs: int = 60,
    lr: float = 1e-2,
    commitment_weight: float = 0.25,
    ema_decay: float = 0.95,
) -> tuple[VQGestureModel, dict]:
    """Train a VQ model on pose sequences; returns (model, loss log).

    Straight-through gradients train encoder/decoder against the
    reconstruction + commitment objective; the codebook follows EMA
    cluster statistics, with dead codes re-seeded from batch latents.
    """
    if not sequences:
        raise ValidationError("vq_fit needs training sequences")
    torch.manual_seed(seed)
    pose_dim = np.asarray(sequences[0]).shape[1]
    model = VQGestureModel(pose_dim, codebook_size, latent_dim)
    frames = torch.as_tensor(
        np.concatenate([np.asarray(s, dtype=np.float32) for s in sequences]), dtype=torch.float32
    )
    with torch.no_grad():
        # seed the codebook from encoded data so clusters start on-manifold
        latents = model._encode_latent(frames)
        perm = torch.randperm(latents.shape[0])[:codebook_size]
        model.codebook.copy_(latents[perm])
        model.ema_sums.copy_(model.codebook.clone())
        model.ema_counts.fill_(1.0)

    optimizer = torch.optim.Adam(
        list(model.encoder.parameters()) + list(model.decoder.parameters()), lr=lr
    )
    log = {"reconstruction": [], "commitment": []}
    generator = torch.Generator().manual_seed(seed + 1)
    for _ in range(epochs):
        latents = model._encode_latent(frames)
        ids = model._nearest_codes(latents.detach())
        quantized = model.codebook[ids]
        # straight-through estimator
        decoder_in = latents + (quantized - latents).detach()
        recon = model.decoder(decoder_in.T[None]).squeeze(0).T
        rec_loss = torch.mean((recon - frames) ** 2)
        commit = torch.mean((latents - quantized.detach()) ** 2)
        loss = rec_loss + commitment_weight * commit
        optimizer.zero_grad()
        loss.backward()
        optimizer.step()

        with torch.no_grad():
            latents = model._encode_latent(frames)
            ids = model._nearest_codes(latents)
            one_hot = torch.zeros(len(ids), codebook_size)
            one_hot[torch.arange(len(ids)), ids] = 1.0
            counts = one_hot.sum(dim=0)
            sums = one_hot.T @ latents
            model.ema_counts.mul_(ema_decay).add_(counts, alpha=1 - ema_decay)
            model.ema_sums.mul_(ema_decay).add_(sums, alpha=1 - ema_decay)
            denom = model.ema_counts + 1e-5
            model.codebook.copy_(model.ema_sums / denom[:, None])
            dead = model.ema_counts < 0.5
            if bool(dead.any()):
                refill = torch.randint(
                    0, latents.shape[0], (int(dead.sum()),), generator=generator
                )
                model.codebook[dead] = latents[refill]
                model.ema_sums[dead] = latents[refill]
                model.ema_counts[dead] = 1.0

        log["reconstruction"].append(float(rec_loss.item()))
        log["commitment"].append(float(commit.item()))
    model.eval()
    return model, log


def reconstruction_error(model: VQGestureModel, sequences: list[np.ndarray]) -> float:
    total, count = 0.0, 0
    for seq in sequences:
        recon = model.decode(model.encode(seq))
        total += float(np.sum((recon - np.asarray(seq)) ** 2))
        count += np.asarray(seq).size
    return total / max(count, 1)
