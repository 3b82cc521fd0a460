"""Expressivity control signals.

Control signals are per-frame tracks extracted from video: 3-d head
rotation (pitch, yaw, roll), averaged eyebrow and mouth facial-action
values (1-d each), and 2-d eye gaze. Conditioning usually works on their
motion dynamism, the absolute frame-to-frame difference, after a moving
average suppresses outliers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, ShapeError

# Per-kind dimensionality of the value track.
CONTROL_KINDS = {
    "head_rotation": 3,
    "eyebrows": 1,
    "mouth": 1,
    "gaze": 2,
}

# The full facial-action vector is 46-d; which units average into the
# eyebrow and mouth signals is configuration, not hardcoded truth. The
# defaults pick 3 brow-region and 20 mouth-region indices.
FAU_DIM = 46
DEFAULT_EYEBROW_FAUS = (0, 1, 3)
DEFAULT_MOUTH_FAUS = tuple(range(9, 29))


@dataclass
class ControlSignal:
    kind: str
    values: np.ndarray  # (N, dim)

    def __post_init__(self):
        if self.kind not in CONTROL_KINDS:
            raise DomainError(f"unknown control kind {self.kind!r}")
        self.values = np.atleast_2d(np.asarray(self.values, dtype=np.float64))
        if self.values.shape[1] != CONTROL_KINDS[self.kind]:
            raise ShapeError(
                f"{self.kind} signal must be (N, {CONTROL_KINDS[self.kind]}), "
                f"got {self.values.shape}"
            )


@dataclass
class AVSequence:
    """Arousal and valence tracks in [-1, 1]."""

    arousal: np.ndarray
    valence: np.ndarray

    def __post_init__(self):
        self.arousal = np.asarray(self.arousal, dtype=np.float64)
        self.valence = np.asarray(self.valence, dtype=np.float64)
        if self.arousal.shape != self.valence.shape or self.arousal.ndim != 1:
            raise ShapeError("arousal and valence must be equal-length 1-d tracks")
        for name, track in (("arousal", self.arousal), ("valence", self.valence)):
            if not np.isfinite(track).all():
                raise DomainError(f"{name} contains non-finite values")
            if track.size and (track.min() < -1.0 or track.max() > 1.0):
                raise DomainError(f"{name} must lie in [-1, 1]")

    def __len__(self) -> int:
        return len(self.arousal)


def dynamism(signal: np.ndarray) -> np.ndarray:
    """Absolute first difference along time; the first frame is defined as 0."""
    signal = np.asarray(signal, dtype=np.float64)
    if signal.shape[0] < 1:
        raise DomainError("dynamism needs at least one frame")
    out = np.zeros_like(signal)
    if signal.shape[0] > 1:
        out[1:] = np.abs(np.diff(signal, axis=0))
    return out


def moving_average(signal: np.ndarray, window: int = 5) -> np.ndarray:
    """Centered moving average with edge truncation."""
    signal = np.asarray(signal, dtype=np.float64)
    if window < 1:
        raise DomainError(f"window must be >= 1, got {window}")
    if window == 1:
        return signal.copy()
    squeeze = signal.ndim == 1
    x = signal[:, None] if squeeze else signal
    n = x.shape[0]
    half = window // 2
    csum = np.cumsum(np.vstack([np.zeros((1, x.shape[1])), x]), axis=0)
    starts = np.maximum(np.arange(n) - half, 0)
    stops = np.minimum(np.arange(n) + (window - half), n)
    out = (csum[stops] - csum[starts]) / (stops - starts)[:, None]
    return out[:, 0] if squeeze else out
