"""Condition-following error for gesture control.

Mean squared L2 norm of the per-frame difference between generated and
conditioned ground-truth gestures over the conditioned window, in either
pose-parameter space or forward-kinematics keypoint space.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError, ValidationError
from ..features.containers import BODY_JOINTS, ROT6D
from ..features.skeleton import forward_kinematics

SPACES = ("smpl_params", "keypoints")


def condition_following(
    generated: np.ndarray,
    ground_truth: np.ndarray,
    t_start: int,
    t_end: int,
    space: str = "smpl_params",
) -> float:
    if space not in SPACES:
        raise ValidationError(f"space must be one of {SPACES}")
    generated = np.asarray(generated, dtype=np.float64)
    ground_truth = np.asarray(ground_truth, dtype=np.float64)
    if generated.shape != ground_truth.shape:
        raise ShapeError(
            f"generated and ground truth shapes differ: {generated.shape} vs "
            f"{ground_truth.shape}"
        )
    if not 0 <= t_start < t_end <= generated.shape[0]:
        raise ValidationError(
            f"conditioned window [{t_start}, {t_end}) is empty or out of range"
        )
    gen = generated[t_start:t_end]
    gt = ground_truth[t_start:t_end]
    if space == "keypoints":
        gen = forward_kinematics(gen.reshape(-1, BODY_JOINTS, ROT6D)).reshape(len(gen), -1)
        gt = forward_kinematics(gt.reshape(-1, BODY_JOINTS, ROT6D)).reshape(len(gt), -1)
    per_frame = np.sum((gen - gt) ** 2, axis=1)
    return float(per_frame.mean())
