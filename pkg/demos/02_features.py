"""Feature transforms: 6D rotations, smoothing, resampling, kinematics."""

import numpy as np

from dyadicmotion.features import (
    NormStats,
    forward_kinematics,
    from_6d,
    neutral_pose_6d,
    normalize,
    random_rotations,
    resample_condition,
    smooth_savgol,
    to_6d,
)
from dyadicmotion.features.skeleton import JOINT_INDEX, UPPER_BODY_KEYPOINTS

rng = np.random.default_rng(0)

# 6D encoding round trip on random rotations
rotations = random_rotations(5, rng)
error = np.abs(from_6d(to_6d(rotations)) - rotations).max()
print(f"6D round-trip error over 5 random rotations: {error:.2e}")

# Savitzky-Golay smoothing kills frame jitter, keeps slow structure
t = np.linspace(0, 4, 120)
clean = np.sin(2 * np.pi * 0.8 * t)
noisy = clean + 0.15 * rng.normal(size=t.shape)
smooth = smooth_savgol(noisy[:, None], window=9, polyorder=2)[:, 0]
print(f"jitter rms before {np.std(noisy - clean):.3f} after {np.std(smooth - clean):.3f}")

# speech tokens live at 12.5 Hz, motion at 30 fps
token_index = np.arange(25)  # 2 seconds of audio
frames = resample_condition(token_index, 60)
print(f"25 tokens -> {len(frames)} frames; frame 0 reads token {frames[0]}, "
      f"frame 59 reads token {frames[59]}")

# z-scoring with train statistics
data = rng.normal(3.0, 2.5, size=(400, 6))
stats = NormStats.fit(data)
z = normalize(data, stats)
print(f"normalized moments: mean {z.mean():.2e}, std {z.std():.3f}")

# raise the left arm and watch the wrist keypoint move
pose = neutral_pose_6d(1)
pose[0, JOINT_INDEX["left_shoulder"]] = [0, 1, 0, -1, 0, 0]  # 90 degrees about z
rest = forward_kinematics(neutral_pose_6d(1))[0]
raised = forward_kinematics(pose)[0]
wrist = list(UPPER_BODY_KEYPOINTS).index("left_wrist")
print(f"left wrist at rest {np.round(rest[wrist], 3)} -> raised {np.round(raised[wrist], 3)}")
