"""Upper-body kinematic tree for the 43-joint body representation.

The body feature vector covers the 51 SMPL-H pose joints minus the 8 leg
joints (hips, knees, ankles, feet). Joint order follows the standard
SMPL-H pose layout: 21 body joints, then 15 left-hand and 15 right-hand
joints. Forward kinematics here uses a fixed offset table with rough
adult proportions (the shared zero body shape), which is sufficient for
keypoint-space metrics; it does not reproduce any particular mesh model.
"""

from __future__ import annotations

import numpy as np

from ..errors import ShapeError
from .rotations import from_6d

# 51 pose joints in SMPL-H order (pelvis/global orientation excluded).
SMPLH_POSE_JOINTS = (
    "left_hip", "right_hip", "spine1", "left_knee", "right_knee", "spine2",
    "left_ankle", "right_ankle", "spine3", "left_foot", "right_foot",
    "neck", "left_collar", "right_collar", "head",
    "left_shoulder", "right_shoulder", "left_elbow", "right_elbow",
    "left_wrist", "right_wrist",
    # left hand
    "left_index1", "left_index2", "left_index3",
    "left_middle1", "left_middle2", "left_middle3",
    "left_pinky1", "left_pinky2", "left_pinky3",
    "left_ring1", "left_ring2", "left_ring3",
    "left_thumb1", "left_thumb2", "left_thumb3",
    # right hand
    "right_index1", "right_index2", "right_index3",
    "right_middle1", "right_middle2", "right_middle3",
    "right_pinky1", "right_pinky2", "right_pinky3",
    "right_ring1", "right_ring2", "right_ring3",
    "right_thumb1", "right_thumb2", "right_thumb3",
)

LEG_JOINTS = (
    "left_hip", "right_hip", "left_knee", "right_knee",
    "left_ankle", "right_ankle", "left_foot", "right_foot",
)

# The 43 joints actually carried in body features, in pose order.
BODY_FEATURE_JOINTS = tuple(j for j in SMPLH_POSE_JOINTS if j not in LEG_JOINTS)

JOINT_INDEX = {name: i for i, name in enumerate(BODY_FEATURE_JOINTS)}

# Parent of each kept joint; "pelvis" is the virtual root at the origin.
_PARENTS = {
    "spine1": "pelvis", "spine2": "spine1", "spine3": "spine2",
    "neck": "spine3", "head": "neck",
    "left_collar": "spine3", "right_collar": "spine3",
    "left_shoulder": "left_collar", "right_shoulder": "right_collar",
    "left_elbow": "left_shoulder", "right_elbow": "right_shoulder",
    "left_wrist": "left_elbow", "right_wrist": "right_elbow",
}
for _side, _sign in (("left", 1.0), ("right", -1.0)):
    for _finger in ("index", "middle", "pinky", "ring", "thumb"):
        _PARENTS[f"{_side}_{_finger}1"] = f"{_side}_wrist"
        _PARENTS[f"{_side}_{_finger}2"] = f"{_side}_{_finger}1"
        _PARENTS[f"{_side}_{_finger}3"] = f"{_side}_{_finger}2"

# Rest offsets (meters) from parent, in the parent frame. x: left, y: up,
# z: forward.
_OFFSETS = {
    "spine1": (0.0, 0.12, 0.0),
    "spine2": (0.0, 0.14, 0.0),
    "spine3": (0.0, 0.14, 0.0),
    "neck": (0.0, 0.12, 0.0),
    "head": (0.0, 0.10, 0.0),
    "left_collar": (0.04, 0.10, 0.0),
    "right_collar": (-0.04, 0.10, 0.0),
    "left_shoulder": (0.13, 0.0, 0.0),
    "right_shoulder": (-0.13, 0.0, 0.0),
    "left_elbow": (0.28, 0.0, 0.0),
    "right_elbow": (-0.28, 0.0, 0.0),
    "left_wrist": (0.26, 0.0, 0.0),
    "right_wrist": (-0.26, 0.0, 0.0),
}
_FINGER_BASE = {
    "index": (0.09, 0.0, 0.03),
    "middle": (0.095, 0.0, 0.01),
    "ring": (0.09, 0.0, -0.01),
    "pinky": (0.08, 0.0, -0.03),
    "thumb": (0.03, 0.0, 0.04),
}
for _side, _sign in (("left", 1.0), ("right", -1.0)):
    for _finger, (_bx, _by, _bz) in _FINGER_BASE.items():
        _OFFSETS[f"{_side}_{_finger}1"] = (_sign * _bx, _by, _bz)
        _OFFSETS[f"{_side}_{_finger}2"] = (_sign * 0.035, 0.0, 0.0)
        _OFFSETS[f"{_side}_{_finger}3"] = (_sign * 0.025, 0.0, 0.0)

# Default keypoint subset for jerk-style metrics: torso chain, head,
# both arm chains, and the middle-finger bases as hand tips (15 points).
UPPER_BODY_KEYPOINTS = (
    "spine1", "spine2", "spine3", "neck", "head",
    "left_collar", "right_collar",
    "left_shoulder", "right_shoulder",
    "left_elbow", "right_elbow",
    "left_wrist", "right_wrist",
    "left_middle1", "right_middle1",
)

IDENTITY_6D = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0])


def neutral_pose_6d(n_frames: int) -> np.ndarray:
    """(n_frames, 43, 6) identity rotations."""
    return np.tile(IDENTITY_6D, (n_frames, len(BODY_FEATURE_JOINTS), 1))


def forward_kinematics(
    rotations_6d: np.ndarray,
    keypoints: tuple[str, ...] = UPPER_BODY_KEYPOINTS,
) -> np.ndarray:
    """Positions of ``keypoints`` for each frame.

    ``rotations_6d`` is (N, 43, 6); the pelvis root is fixed at the
    origin with identity orientation. Returns (N, len(keypoints), 3).
    """
    rotations_6d = np.asarray(rotations_6d, dtype=np.float64)
    if rotations_6d.ndim != 3 or rotations_6d.shape[1:] != (len(BODY_FEATURE_JOINTS), 6):
        raise ShapeError(
            f"rotations must be (N, {len(BODY_FEATURE_JOINTS)}, 6), got {rotations_6d.shape}"
        )
    n = rotations_6d.shape[0]
    local = from_6d(rotations_6d)  # (N, 43, 3, 3)

    world_rot = {"pelvis": np.broadcast_to(np.eye(3), (n, 3, 3))}
    world_pos = {"pelvis": np.zeros((n, 3))}
    for name in BODY_FEATURE_JOINTS:  # pose order is already parent-before-child
        parent = _PARENTS[name]
        offset = np.asarray(_OFFSETS[name])
        parent_rot = world_rot[parent]
        world_pos[name] = world_pos[parent] + parent_rot @ offset
        world_rot[name] = parent_rot @ local[:, JOINT_INDEX[name]]

    missing = [k for k in keypoints if k not in world_pos]
    if missing:
        raise ShapeError(f"unknown keypoints: {missing}")
    return np.stack([world_pos[k] for k in keypoints], axis=1)


def body_dims_for_joints(names: tuple[str, ...]) -> np.ndarray:
    """Flat indices into the 258-d body vector covering the named joints."""
    dims = []
    for name in names:
        j = JOINT_INDEX[name]
        dims.extend(range(j * 6, j * 6 + 6))
    return np.asarray(dims, dtype=np.int64)
