"""Feature transforms between extractor outputs and model tensors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import savgol_filter

from ..errors import DomainError, ShapeError

SPEECH_HZ = 12.5
MOTION_FPS = 30.0

# Dimensions with (near-)constant values get their std floored so
# z-scoring never divides by ~0.
STD_FLOOR = 1e-6


def smooth_savgol(x: np.ndarray, window: int = 9, polyorder: int = 2) -> np.ndarray:
    """Per-dimension Savitzky-Golay smoothing along the first axis.

    Edge frames are filled from a polynomial fit to the truncated edge
    window. Signals of degree <= polyorder pass through exactly.
    """
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    if window % 2 == 0:
        raise DomainError(f"window must be odd, got {window}")
    if window > n:
        raise DomainError(f"window {window} exceeds signal length {n}")
    if polyorder >= window:
        raise DomainError(f"polyorder {polyorder} must be < window {window}")
    return savgol_filter(x, window_length=window, polyorder=polyorder, axis=0, mode="interp")


def resample_condition(
    values: np.ndarray,
    n_frames: int,
    source_rate: float = SPEECH_HZ,
    target_rate: float = MOTION_FPS,
) -> np.ndarray:
    """Nearest-previous resampling of a condition stream onto motion frames.

    Frame i maps to source index floor(i * source_rate / target_rate),
    clamped into range, so the output has exactly ``n_frames`` entries.
    Appropriate for categorical streams (tokens, bucket ids); use linear
    interpolation for continuous signals instead.
    """
    values = np.asarray(values)
    if n_frames <= 0:
        raise DomainError(f"n_frames must be positive, got {n_frames}")
    if len(values) < 1:
        raise DomainError("resample_condition needs a nonempty source")
    idx = np.floor(np.arange(n_frames) * (source_rate / target_rate)).astype(np.int64)
    idx = np.clip(idx, 0, len(values) - 1)
    return values[idx]


@dataclass
class NormStats:
    """Per-dimension mean and floored standard deviation from the train split."""

    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=np.float64)
        self.std = np.asarray(self.std, dtype=np.float64)
        if self.mean.shape != self.std.shape:
            raise ShapeError(
                f"mean/std shapes differ: {self.mean.shape} vs {self.std.shape}"
            )
        if np.any(self.std <= 0):
            raise ShapeError("std must be positive after flooring")

    @classmethod
    def fit(cls, x: np.ndarray) -> "NormStats":
        x = np.asarray(x, dtype=np.float64)
        std = x.std(axis=0)
        return cls(mean=x.mean(axis=0), std=np.maximum(std, STD_FLOOR))


def normalize(x: np.ndarray, stats: NormStats) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != stats.mean.shape[-1]:
        raise ShapeError(
            f"feature width {x.shape[-1]} does not match stats width {stats.mean.shape[-1]}"
        )
    return (x - stats.mean) / stats.std


def denormalize(z: np.ndarray, stats: NormStats) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1] != stats.mean.shape[-1]:
        raise ShapeError(
            f"feature width {z.shape[-1]} does not match stats width {stats.mean.shape[-1]}"
        )
    return z * stats.std + stats.mean
