"""Condition stacks for the motion models.

A :class:`ConditionBundle` carries every conditioning block for one
sample, all resampled/aligned to the N motion frames: the two speech
token channels, optional user visual features, and optional named
control blocks (emotion buckets, gesture conditions, ...). Block
dropout state travels with the bundle so training and classifier-free
guidance use the same learned null embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, ShapeError
from ..features.containers import SpeechTokenStream
from ..features.processing import MOTION_FPS, SPEECH_HZ, resample_condition

MODES = ("monadic", "dyadic", "av_dyadic")

SPEECH_A1 = "speech_a1"  # agent's own audio channel
SPEECH_A2 = "speech_a2"  # user's audio channel
VISUAL_V2 = "visual_v2"  # user's visual features


@dataclass
class ConditionBundle:
    n_frames: int
    blocks: dict[str, np.ndarray] = field(default_factory=dict)
    dropout_mask: dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        for name, values in self.blocks.items():
            if values.shape[0] != self.n_frames:
                raise ShapeError(
                    f"block {name!r} has length {values.shape[0]}, expected {self.n_frames}"
                )
        for name in self.blocks:
            self.dropout_mask.setdefault(name, False)

    def block_names(self) -> tuple[str, ...]:
        return tuple(self.blocks)

    def replace_block(self, name: str, values: np.ndarray) -> "ConditionBundle":
        if name not in self.blocks:
            raise ConfigError(f"bundle has no block {name!r}")
        blocks = dict(self.blocks)
        blocks[name] = values
        return ConditionBundle(
            n_frames=self.n_frames, blocks=blocks, dropout_mask=dict(self.dropout_mask)
        )

    def with_block(self, name: str, values: np.ndarray) -> "ConditionBundle":
        blocks = dict(self.blocks)
        blocks[name] = np.asarray(values)
        mask = dict(self.dropout_mask)
        mask.setdefault(name, False)
        return ConditionBundle(n_frames=self.n_frames, blocks=blocks, dropout_mask=mask)


def build_condition(
    a1: SpeechTokenStream,
    a2: SpeechTokenStream | None = None,
    v2: np.ndarray | None = None,
    mode: str = "dyadic",
    n_frames: int | None = None,
    control: dict[str, np.ndarray] | None = None,
    speech_hz: float = SPEECH_HZ,
    fps: float = MOTION_FPS,
) -> ConditionBundle:
    """Assemble an aligned condition bundle for one sample.

    Speech token streams are resampled from the token rate onto the
    motion frame rate with the nearest-previous map; visual features are
    expected at the frame rate already. Mode decides which blocks are
    required: monadic needs a1, dyadic a1+a2, av_dyadic a1+a2+v2.
    """
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}")
    if n_frames is None or n_frames <= 0:
        raise ConfigError("n_frames must be a positive frame count")
    if mode in ("dyadic", "av_dyadic") and a2 is None:
        raise ConfigError(f"mode {mode!r} requires the user speech channel a2")
    if mode == "av_dyadic" and v2 is None:
        raise ConfigError("mode 'av_dyadic' requires user visual features v2")

    blocks: dict[str, np.ndarray] = {
        SPEECH_A1: resample_condition(a1.tokens, n_frames, speech_hz, fps)
    }
    if mode in ("dyadic", "av_dyadic"):
        blocks[SPEECH_A2] = resample_condition(a2.tokens, n_frames, speech_hz, fps)
    if mode == "av_dyadic":
        v2 = np.asarray(v2, dtype=np.float64)
        if v2.shape[0] != n_frames:
            raise ShapeError(
                f"visual features must already be frame-aligned: got {v2.shape[0]} "
                f"frames, expected {n_frames}"
            )
        blocks[VISUAL_V2] = v2
    for name, values in (control or {}).items():
        values = np.asarray(values)
        if values.shape[0] != n_frames:
            raise ShapeError(f"control block {name!r} is not frame-aligned")
        blocks[name] = values
    return ConditionBundle(n_frames=n_frames, blocks=blocks)


def condition_dropout(
    bundle: ConditionBundle, rho: float = 0.2, rng: np.random.Generator | None = None
) -> ConditionBundle:
    """Independently mark each block dropped with probability rho.

    Dropped blocks keep their values; the model's condition encoder
    substitutes the learned per-block null embedding wherever the mask is
    set, so the same mechanism serves training dropout and the
    unconditioned CFG pass.
    """
    if not 0.0 <= rho <= 1.0:
        raise ConfigError(f"dropout rate must be in [0, 1], got {rho}")
    if rng is None:
        rng = np.random.default_rng()
    mask = {name: bool(rng.random() < rho) for name in bundle.blocks}
    return ConditionBundle(
        n_frames=bundle.n_frames, blocks=dict(bundle.blocks), dropout_mask=mask
    )


def joint_concat(face: np.ndarray, body: np.ndarray) -> np.ndarray:
    """Concatenate face (N, 137) and body (N, 258) into joint (N, 395)."""
    face = np.asarray(face)
    body = np.asarray(body)
    if face.ndim != 2 or body.ndim != 2:
        raise ShapeError("joint_concat expects 2-d feature matrices")
    if face.shape[0] != body.shape[0]:
        raise ShapeError(
            f"frame counts differ: face {face.shape[0]} vs body {body.shape[0]}"
        )
    return np.concatenate([face, body], axis=1)


def joint_split(joint: np.ndarray, face_dim: int = 137) -> tuple[np.ndarray, np.ndarray]:
    joint = np.asarray(joint)
    if joint.ndim != 2 or joint.shape[1] <= face_dim:
        raise ShapeError(f"joint features must be (N, >{face_dim}), got {joint.shape}")
    return joint[:, :face_dim], joint[:, face_dim:]
