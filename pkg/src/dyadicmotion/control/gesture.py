"""Temporal gesture-condition dropping.

During training each frame of the gesture condition is independently
kept with probability 1 - p_drop or replaced by the null condition: the
zero vector for continuous pose frames, the reserved null id for VQ code
sequences. Speech conditions are never dropped here, so the model keeps
its rhythmic grounding and learns to bridge gaps in the gesture signal.
"""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError


def temporal_gesture_drop(
    gesture: np.ndarray,
    p_drop: float,
    rng: np.random.Generator,
    null_id: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Randomly null out frames of a gesture condition.

    ``gesture`` is (N, D) continuous pose frames or (N,) integer code
    ids; for ids, ``null_id`` must be the reserved null code. Returns
    (dropped_sequence, kept_mask).
    """
    if not 0.0 <= p_drop <= 1.0:
        raise ValidationError(f"p_drop must be in [0, 1], got {p_drop}")
    gesture = np.asarray(gesture)
    keep = rng.random(gesture.shape[0]) >= p_drop
    out = gesture.copy()
    if gesture.ndim == 1:
        if null_id is None:
            raise ValidationError("code sequences need the reserved null_id")
        out[~keep] = null_id
    else:
        out[~keep] = 0
    return out, keep
