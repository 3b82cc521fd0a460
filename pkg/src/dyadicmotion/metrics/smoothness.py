"""Jerk and boundary smoothness on keypoint tracks.

Jerk is the third temporal derivative of keypoint position, realized as
the forward third finite difference (x_{t+3} - 3 x_{t+2} + 3 x_{t+1} -
x_t) / dt^3, exact on cubics. Boundary smoothness maps the window-
averaged jerk magnitude through exp(-J/sigma) around each gesture
condition transition (15 frames each side), averaging ON-to-OFF and
OFF-to-ON transitions alike.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError, ShapeError, ValidationError


@dataclass
class KeypointTrack:
    positions: np.ndarray  # (T, N, 3)
    fps: float

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=np.float64)
        if self.positions.ndim != 3 or self.positions.shape[2] != 3:
            raise ShapeError(f"positions must be (T, N, 3), got {self.positions.shape}")
        if self.fps <= 0:
            raise ValidationError(f"fps must be positive, got {self.fps}")

    @property
    def n_frames(self) -> int:
        return self.positions.shape[0]

    def window(self, start: int, stop: int) -> "KeypointTrack":
        return KeypointTrack(positions=self.positions[start:stop], fps=self.fps)


def jerk(track: KeypointTrack) -> np.ndarray:
    """Per-frame, per-keypoint jerk magnitudes, shape (T - 3, N)."""
    p = track.positions
    if p.shape[0] < 4:
        raise DomainError(f"jerk needs at least 4 frames, got {p.shape[0]}")
    dt = 1.0 / track.fps
    third = (p[3:] - 3.0 * p[2:-1] + 3.0 * p[1:-2] - p[:-3]) / dt**3
    return np.linalg.norm(third, axis=2)


def mean_jerk(track: KeypointTrack) -> float:
    """Temporal and spatial average of jerk magnitudes."""
    return float(jerk(track).mean())


def boundary_smoothness(
    track: KeypointTrack,
    boundaries: list[int],
    sigma: float = 100.0,
    window: int = 30,
) -> float:
    """Mean of exp(-mean_jerk(window)/sigma) over condition boundaries.

    Each boundary index gets a ``window``-frame span centered on it
    (window/2 frames before and after). Boundaries too close to the track
    ends are a margin error.
    """
    if sigma <= 0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    if window < 4:
        raise ValidationError(f"window must cover >= 4 frames, got {window}")
    if not boundaries:
        raise ValidationError("boundary_smoothness needs at least one boundary")
    half = window // 2
    scores = []
    for b in boundaries:
        lo, hi = b - half, b + (window - half)
        if lo < 0 or hi > track.n_frames:
            raise DomainError(
                f"boundary {b} needs {half} frames margin on each side "
                f"(track has {track.n_frames} frames)"
            )
        scores.append(np.exp(-mean_jerk(track.window(lo, hi)) / sigma))
    return float(np.mean(scores))
