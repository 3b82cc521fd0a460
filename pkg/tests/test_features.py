"""Rotation encoding, smoothing, resampling, normalization, skeleton."""

import numpy as np
import pytest

from dyadicmotion.corpus import read_feature_file, write_feature_file
from dyadicmotion.errors import DegenerateInputError, DomainError, ShapeError
from dyadicmotion.features import (
    BODY_DIM,
    FACE_DIM,
    JOINT_DIM,
    BodyFeatures,
    FaceFeatures,
    NormStats,
    SpeechTokenStream,
    denormalize,
    forward_kinematics,
    from_6d,
    neutral_pose_6d,
    normalize,
    random_rotations,
    resample_condition,
    smooth_savgol,
    to_6d,
)
from dyadicmotion.features.skeleton import BODY_FEATURE_JOINTS, UPPER_BODY_KEYPOINTS


class TestRotation6D:
    def test_identity(self):
        np.testing.assert_allclose(to_6d(np.eye(3)), [1, 0, 0, 0, 1, 0])

    def test_roundtrip_1000_random(self):
        rng = np.random.default_rng(0)
        rotations = random_rotations(1000, rng)
        recovered = from_6d(to_6d(rotations))
        assert np.abs(recovered - rotations).max() < 1e-6

    def test_scale_removed(self):
        np.testing.assert_allclose(from_6d(np.array([2, 0, 0, 0, 3, 0.0])), np.eye(3), atol=1e-12)

    def test_parallel_columns_degenerate(self):
        with pytest.raises(DegenerateInputError):
            from_6d(np.array([1.0, 0, 0, 2.0, 0, 0]))

    def test_output_is_rotation(self):
        rng = np.random.default_rng(1)
        vecs = rng.normal(size=(200, 6))
        rots = from_6d(vecs)
        gram = np.einsum("nij,nkj->nik", rots, rots)
        assert np.abs(gram - np.eye(3)).max() < 1e-6
        assert np.abs(np.linalg.det(rots) - 1).max() < 1e-6

    def test_non_orthonormal_rejected(self):
        with pytest.raises(DomainError):
            to_6d(np.eye(3) * 2.0)


class TestSavgol:
    def test_constant_unchanged(self):
        x = np.full((50, 3), 7.0)
        np.testing.assert_allclose(smooth_savgol(x), x)

    def test_quadratic_exact(self):
        t = np.arange(40, dtype=float)
        x = (1.5 * t**2 - 3 * t + 2)[:, None]
        np.testing.assert_allclose(smooth_savgol(x, window=9, polyorder=2), x, atol=1e-9)

    def test_noise_variance_reduced(self):
        # Monte-Carlo over 100 seeds: smoothing must shrink white-noise variance
        reduced = 0
        for seed in range(100):
            rng = np.random.default_rng(seed)
            x = rng.normal(size=(200, 1))
            y = smooth_savgol(x, window=9, polyorder=2)
            if y.var() < x.var():
                reduced += 1
        assert reduced == 100

    def test_parameter_errors(self):
        x = np.zeros((10, 1))
        with pytest.raises(DomainError):
            smooth_savgol(x, window=4)
        with pytest.raises(DomainError):
            smooth_savgol(x, window=11)


class TestResample:
    def test_two_seconds(self):
        tokens = np.arange(25)  # 2 s at 12.5 Hz
        frames = resample_condition(tokens, 60)  # 2 s at 30 fps
        assert len(frames) == 60
        assert frames[0] == 0
        assert frames[59] == 24

    def test_round_number(self):
        frames = resample_condition(np.arange(25), 60)
        assert frames[12] == 5  # floor(12 * 12.5 / 30) = floor(5.0)

    def test_single_source(self):
        np.testing.assert_array_equal(resample_condition(np.array([7]), 10), np.full(10, 7))

    def test_identity_at_equal_rates(self):
        x = np.arange(40)
        np.testing.assert_array_equal(
            resample_condition(x, 40, source_rate=30.0, target_rate=30.0), x
        )

    def test_bad_target(self):
        with pytest.raises(DomainError):
            resample_condition(np.arange(5), 0)


class TestNormalization:
    def test_mean_maps_to_zero(self):
        rng = np.random.default_rng(0)
        x = rng.normal(3.0, 2.0, size=(500, 4))
        stats = NormStats.fit(x)
        z = normalize(np.tile(stats.mean, (3, 1)), stats)
        np.testing.assert_allclose(z, 0.0, atol=1e-12)

    def test_roundtrip(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=(100, 6))
        stats = NormStats.fit(x)
        np.testing.assert_allclose(denormalize(normalize(x, stats), stats), x, atol=1e-6)

    def test_train_moments(self):
        rng = np.random.default_rng(2)
        x = rng.normal(5.0, 3.0, size=(2000, 3))
        stats = NormStats.fit(x)
        z = normalize(x, stats)
        np.testing.assert_allclose(z.mean(axis=0), 0.0, atol=1e-10)
        np.testing.assert_allclose(z.std(axis=0), 1.0, atol=1e-10)

    def test_dimension_mismatch(self):
        stats = NormStats.fit(np.zeros((10, 3)) + np.arange(3))
        with pytest.raises(ShapeError):
            normalize(np.zeros((5, 4)), stats)

    def test_constant_dim_floored(self):
        x = np.zeros((10, 2))
        stats = NormStats.fit(x)
        assert (stats.std > 0).all()


class TestContainers:
    def test_face_width(self):
        n = 5
        face = FaceFeatures(
            expression=np.zeros((n, 128)),
            head_rotation=np.zeros((n, 3)),
            translations=np.zeros((n, 6)),
        )
        assert face.assembled.shape == (n, FACE_DIM)
        back = FaceFeatures.from_assembled(face.assembled)
        np.testing.assert_array_equal(back.assembled, face.assembled)

    def test_body_width(self):
        body = BodyFeatures(joint_rotations_6d=neutral_pose_6d(4))
        assert body.assembled.shape == (4, BODY_DIM)
        assert FACE_DIM + BODY_DIM == JOINT_DIM == 395

    def test_body_neutral_blocks_decode(self):
        body = BodyFeatures(joint_rotations_6d=neutral_pose_6d(2))
        rots = from_6d(body.joint_rotations_6d)
        np.testing.assert_allclose(rots, np.broadcast_to(np.eye(3), rots.shape), atol=1e-12)

    def test_token_range_checked(self):
        with pytest.raises(Exception):
            SpeechTokenStream(tokens=np.array([0, 5]), vocab_size=4)


class TestSkeleton:
    def test_joint_count(self):
        assert len(BODY_FEATURE_JOINTS) == 43

    def test_fk_shapes_and_neutral_pose(self):
        pose = neutral_pose_6d(3)
        points = forward_kinematics(pose)
        assert points.shape == (3, len(UPPER_BODY_KEYPOINTS), 3)
        # neutral pose is static
        assert np.abs(points[0] - points[1]).max() == 0.0
        # head sits above the spine base
        names = list(UPPER_BODY_KEYPOINTS)
        head = points[0, names.index("head")]
        spine1 = points[0, names.index("spine1")]
        assert head[1] > spine1[1]
        # arms are left/right symmetric at rest
        lw = points[0, names.index("left_wrist")]
        rw = points[0, names.index("right_wrist")]
        np.testing.assert_allclose(lw[1:], rw[1:], atol=1e-12)
        assert lw[0] == pytest.approx(-rw[0])

    def test_fk_moves_children(self):
        pose = neutral_pose_6d(1)
        # rotate the left shoulder 90 degrees about z: wrist position changes
        from dyadicmotion.features.skeleton import JOINT_INDEX

        rot = np.array([0.0, 1.0, 0.0, -1.0, 0.0, 0.0])  # 90deg z rotation, 6d
        pose[0, JOINT_INDEX["left_shoulder"]] = rot
        moved = forward_kinematics(pose)
        rest = forward_kinematics(neutral_pose_6d(1))
        names = list(UPPER_BODY_KEYPOINTS)
        assert not np.allclose(
            moved[0, names.index("left_wrist")], rest[0, names.index("left_wrist")]
        )
        np.testing.assert_allclose(
            moved[0, names.index("right_wrist")], rest[0, names.index("right_wrist")]
        )


class TestFeatureFiles:
    def test_roundtrip_face(self, tmp_path):
        rng = np.random.default_rng(0)
        values = rng.normal(size=(20, FACE_DIM)).astype(np.float32)
        path = write_feature_file(tmp_path / "x.bin", values, channel="face", fps=30.0)
        loaded, descriptor = read_feature_file(path)
        np.testing.assert_array_equal(loaded, values)
        assert descriptor == {
            "shape": [20, FACE_DIM],
            "fps": 30.0,
            "channel": "face",
            "dtype": "f4",
        }

    def test_speech_tokens_int32(self, tmp_path):
        tokens = np.array([0, 3, 5, 1])
        path = write_feature_file(tmp_path / "t.bin", tokens, channel="speech_a", fps=12.5)
        loaded, descriptor = read_feature_file(path)
        assert loaded.dtype == np.dtype("<i4")
        np.testing.assert_array_equal(loaded, tokens)
        assert descriptor["fps"] == 12.5

    def test_wrong_width_rejected(self, tmp_path):
        with pytest.raises(ShapeError):
            write_feature_file(tmp_path / "b.bin", np.zeros((5, 10)), channel="body", fps=30)
