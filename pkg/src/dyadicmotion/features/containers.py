"""Typed containers for face, body, and speech feature streams.

Widths are fixed by the feature contracts:

* face: 128-d expression code + 3-d head rotation + 6-d head/body
  translations = 137 per frame;
* body: 43 upper-body joints (legs excluded) x 6D rotation = 258;
* joint: face and body concatenated = 395.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import IntegrityError, ShapeError

EXPRESSION_DIM = 128
HEAD_ROTATION_DIM = 3
TRANSLATION_DIM = 6
FACE_DIM = EXPRESSION_DIM + HEAD_ROTATION_DIM + TRANSLATION_DIM  # 137

BODY_JOINTS = 43
ROT6D = 6
BODY_DIM = BODY_JOINTS * ROT6D  # 258

JOINT_DIM = FACE_DIM + BODY_DIM  # 395

# Slices into the assembled face vector.
EXPRESSION_SLICE = slice(0, EXPRESSION_DIM)
HEAD_ROTATION_SLICE = slice(EXPRESSION_DIM, EXPRESSION_DIM + HEAD_ROTATION_DIM)
TRANSLATION_SLICE = slice(EXPRESSION_DIM + HEAD_ROTATION_DIM, FACE_DIM)
HEAD_PITCH_INDEX = EXPRESSION_DIM  # first head-rotation component


def _check_finite(name: str, x: np.ndarray) -> None:
    if not np.isfinite(x).all():
        raise IntegrityError(f"{name} contains non-finite values")


@dataclass
class FaceFeatures:
    """Per-frame facial features in the assembled 137-d layout."""

    expression: np.ndarray  # (N, 128)
    head_rotation: np.ndarray  # (N, 3) radians
    translations: np.ndarray  # (N, 6)

    def __post_init__(self):
        self.expression = np.asarray(self.expression, dtype=np.float64)
        self.head_rotation = np.asarray(self.head_rotation, dtype=np.float64)
        self.translations = np.asarray(self.translations, dtype=np.float64)
        n = self.expression.shape[0]
        if self.expression.shape != (n, EXPRESSION_DIM):
            raise ShapeError(f"expression must be (N, {EXPRESSION_DIM})")
        if self.head_rotation.shape != (n, HEAD_ROTATION_DIM):
            raise ShapeError(f"head_rotation must be (N, {HEAD_ROTATION_DIM})")
        if self.translations.shape != (n, TRANSLATION_DIM):
            raise ShapeError(f"translations must be (N, {TRANSLATION_DIM})")
        for name in ("expression", "head_rotation", "translations"):
            _check_finite(name, getattr(self, name))

    @property
    def assembled(self) -> np.ndarray:
        return np.concatenate(
            [self.expression, self.head_rotation, self.translations], axis=1
        )

    @classmethod
    def from_assembled(cls, assembled: np.ndarray) -> "FaceFeatures":
        assembled = np.asarray(assembled, dtype=np.float64)
        if assembled.ndim != 2 or assembled.shape[1] != FACE_DIM:
            raise ShapeError(f"assembled face features must be (N, {FACE_DIM})")
        return cls(
            expression=assembled[:, EXPRESSION_SLICE],
            head_rotation=assembled[:, HEAD_ROTATION_SLICE],
            translations=assembled[:, TRANSLATION_SLICE],
        )


@dataclass
class BodyFeatures:
    """Per-frame joint rotations in 6D encoding, legs excluded."""

    joint_rotations_6d: np.ndarray  # (N, 43, 6)

    def __post_init__(self):
        self.joint_rotations_6d = np.asarray(self.joint_rotations_6d, dtype=np.float64)
        if (
            self.joint_rotations_6d.ndim != 3
            or self.joint_rotations_6d.shape[1:] != (BODY_JOINTS, ROT6D)
        ):
            raise ShapeError(
                f"joint rotations must be (N, {BODY_JOINTS}, {ROT6D}), "
                f"got {self.joint_rotations_6d.shape}"
            )
        _check_finite("joint_rotations_6d", self.joint_rotations_6d)

    @property
    def assembled(self) -> np.ndarray:
        n = self.joint_rotations_6d.shape[0]
        return self.joint_rotations_6d.reshape(n, BODY_DIM)

    @classmethod
    def from_assembled(cls, assembled: np.ndarray) -> "BodyFeatures":
        assembled = np.asarray(assembled, dtype=np.float64)
        if assembled.ndim != 2 or assembled.shape[1] != BODY_DIM:
            raise ShapeError(f"assembled body features must be (N, {BODY_DIM})")
        return cls(joint_rotations_6d=assembled.reshape(-1, BODY_JOINTS, ROT6D))


@dataclass
class SpeechTokenStream:
    """Discrete speech tokens at 12.5 Hz; token 0 is the silence unit."""

    tokens: np.ndarray  # (N,) ints
    vocab_size: int

    def __post_init__(self):
        self.tokens = np.asarray(self.tokens, dtype=np.int64)
        if self.tokens.ndim != 1:
            raise ShapeError(f"tokens must be 1-d, got shape {self.tokens.shape}")
        if self.vocab_size < 1:
            raise IntegrityError(f"vocab_size must be >= 1, got {self.vocab_size}")
        if self.tokens.size and (
            self.tokens.min() < 0 or self.tokens.max() >= self.vocab_size
        ):
            raise IntegrityError(
                f"tokens must lie in [0, {self.vocab_size}), got range "
                f"[{self.tokens.min()}, {self.tokens.max()}]"
            )

    def __len__(self) -> int:
        return len(self.tokens)

    def activity(self) -> np.ndarray:
        """Boolean voice-activity track (token != silence)."""
        return self.tokens != 0
