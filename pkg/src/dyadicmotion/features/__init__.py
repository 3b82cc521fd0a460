"""Feature contracts and transforms."""

from .containers import (
    BODY_DIM,
    BODY_JOINTS,
    EXPRESSION_DIM,
    FACE_DIM,
    HEAD_PITCH_INDEX,
    HEAD_ROTATION_SLICE,
    JOINT_DIM,
    BodyFeatures,
    FaceFeatures,
    SpeechTokenStream,
)
from .processing import (
    MOTION_FPS,
    SPEECH_HZ,
    NormStats,
    denormalize,
    normalize,
    resample_condition,
    smooth_savgol,
)
from .rotations import from_6d, random_rotations, to_6d
from .skeleton import (
    BODY_FEATURE_JOINTS,
    UPPER_BODY_KEYPOINTS,
    body_dims_for_joints,
    forward_kinematics,
    neutral_pose_6d,
)

__all__ = [
    "BODY_DIM",
    "BODY_JOINTS",
    "EXPRESSION_DIM",
    "FACE_DIM",
    "HEAD_PITCH_INDEX",
    "HEAD_ROTATION_SLICE",
    "JOINT_DIM",
    "BodyFeatures",
    "FaceFeatures",
    "SpeechTokenStream",
    "MOTION_FPS",
    "SPEECH_HZ",
    "NormStats",
    "denormalize",
    "normalize",
    "resample_condition",
    "smooth_savgol",
    "from_6d",
    "random_rotations",
    "to_6d",
    "BODY_FEATURE_JOINTS",
    "UPPER_BODY_KEYPOINTS",
    "body_dims_for_joints",
    "forward_kinematics",
    "neutral_pose_6d",
]
