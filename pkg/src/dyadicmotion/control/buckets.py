"""Bucketized conditioning for continuous control values.

Dynamism-style signals are discretized against thresholds fitted on
corpus statistics (quantiles by default); emotion tracks are quantized
per one-second window into equal-width bins. Bucket ids then condition
the model in place of raw values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import DomainError, ValidationError
from .signals import AVSequence

BUCKET_SCHEMES = ("quartile", "quantile")


@dataclass
class BucketSpec:
    thresholds: np.ndarray  # (k - 1,) ascending
    k: int

    def __post_init__(self):
        self.thresholds = np.asarray(self.thresholds, dtype=np.float64)
        if self.k < 2:
            raise ValidationError(f"bucket count must be >= 2, got {self.k}")
        if self.thresholds.shape != (self.k - 1,):
            raise ValidationError(
                f"expected {self.k - 1} thresholds for k={self.k}, "
                f"got {self.thresholds.shape}"
            )
        if np.any(np.diff(self.thresholds) <= 0):
            raise ValidationError("thresholds must be strictly ascending")

    def to_json(self) -> str:
        return json.dumps({"k": self.k, "thresholds": self.thresholds.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "BucketSpec":
        obj = json.loads(text)
        return cls(thresholds=np.asarray(obj["thresholds"]), k=obj["k"])

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "BucketSpec":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def fit_thresholds(samples: np.ndarray, k: int = 4, scheme: str = "quantile") -> BucketSpec:
    """Thresholds at the k-1 interior empirical quantiles.

    The quartile scheme is the k=4 special case kept for the common
    min/quartiles/max statistics run.
    """
    if scheme not in BUCKET_SCHEMES:
        raise ValidationError(f"scheme must be one of {BUCKET_SCHEMES}")
    if scheme == "quartile":
        k = 4
    samples = np.asarray(samples, dtype=np.float64).ravel()
    if samples.size == 0:
        raise ValidationError("fit_thresholds needs nonempty samples")
    if np.all(samples == samples[0]):
        raise DomainError("degenerate distribution: all samples equal")
    qs = np.linspace(0.0, 1.0, k + 1)[1:-1]
    thresholds = np.quantile(samples, qs)
    if np.any(np.diff(thresholds) <= 0):
        # heavy ties can collapse quantiles; nudge apart deterministically
        spread = max(1e-9, 1e-9 * max(1.0, float(np.abs(thresholds).max())))
        thresholds = thresholds + np.arange(k - 1) * spread
    return BucketSpec(thresholds=thresholds, k=k)


def bucketize(x: np.ndarray, spec: BucketSpec) -> np.ndarray:
    """b = sum_i 1(x > tau_i); monotone ids in [0, k-1]."""
    x = np.asarray(x, dtype=np.float64)
    return (x[..., None] > spec.thresholds).sum(axis=-1).astype(np.int64)


def av_tokens(
    av: AVSequence,
    bins: int = 12,
    window_s: float = 1.0,
    fps: float = 30.0,
    value_range: tuple[float, float] = (-1.0, 1.0),
) -> np.ndarray:
    """Per-window (valence_token, arousal_token) pairs.

    Values are averaged over each window, then quantized into
    ``bins`` equal-width intervals over ``value_range``; the top edge
    clamps into the last bin. Trailing frames that do not fill a window
    are dropped. Returns (n_windows, 2) ints.
    """
    if bins < 2:
        raise ValidationError(f"bins must be >= 2, got {bins}")
    window = int(round(window_s * fps))
    if window < 1 or len(av) < window:
        raise DomainError(
            f"need at least one full window ({window} frames), got {len(av)}"
        )
    lo, hi = value_range
    if not lo < hi:
        raise ValidationError(f"bad value range {value_range}")
    n_windows = len(av) // window

    def tokenize(track: np.ndarray) -> np.ndarray:
        means = track[: n_windows * window].reshape(n_windows, window).mean(axis=1)
        ids = np.floor((means - lo) / (hi - lo) * bins).astype(np.int64)
        return np.clip(ids, 0, bins - 1)

    return np.stack([tokenize(av.valence), tokenize(av.arousal)], axis=1)
