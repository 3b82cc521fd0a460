"""Controllability: dynamism, buckets, temporal dropping, VQ codebook."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadicmotion.control import (
    AVSequence,
    BucketSpec,
    av_tokens,
    bucketize,
    dynamism,
    fit_thresholds,
    moving_average,
    reconstruction_error,
    temporal_gesture_drop,
    vq_fit,
)
from dyadicmotion.errors import DomainError, ValidationError


class TestDynamism:
    def test_constant_zero(self):
        np.testing.assert_array_equal(dynamism(np.full((10, 2), 3.0)), np.zeros((10, 2)))

    def test_hand_case(self):
        np.testing.assert_array_equal(dynamism(np.array([0.0, 1.0, 3.0])), [0.0, 1.0, 2.0])

    def test_ramp_constant_slope(self):
        ramp = np.arange(20) * -0.5
        d = dynamism(ramp)
        assert d[0] == 0.0
        np.testing.assert_allclose(d[1:], 0.5)


class TestThresholds:
    def test_uniform_quartiles(self):
        rng = np.random.default_rng(0)
        samples = rng.uniform(0, 1, 100_000)
        spec = fit_thresholds(samples, k=4)
        np.testing.assert_allclose(spec.thresholds, [0.25, 0.5, 0.75], atol=0.02)

    def test_k2_median(self):
        rng = np.random.default_rng(1)
        samples = rng.normal(size=10_000)
        spec = fit_thresholds(samples, k=2)
        assert spec.thresholds.shape == (1,)
        assert abs(spec.thresholds[0] - np.median(samples)) < 1e-9

    def test_deterministic(self):
        rng = np.random.default_rng(2)
        samples = rng.normal(size=1000)
        a = fit_thresholds(samples, k=5)
        b = fit_thresholds(samples.copy(), k=5)
        np.testing.assert_array_equal(a.thresholds, b.thresholds)

    def test_degenerate_rejected(self):
        with pytest.raises(DomainError):
            fit_thresholds(np.ones(100), k=4)

    def test_spec_file_roundtrip(self, tmp_path):
        spec = BucketSpec(np.array([0.1, 0.5]), 3)
        spec.save(tmp_path / "b.json")
        loaded = BucketSpec.load(tmp_path / "b.json")
        assert loaded.k == 3
        np.testing.assert_array_equal(loaded.thresholds, spec.thresholds)


class TestBucketize:
    def test_bounds(self):
        spec = BucketSpec(np.array([0.0, 1.0, 2.0]), 4)
        assert bucketize(np.array([-5.0]), spec)[0] == 0
        assert bucketize(np.array([99.0]), spec)[0] == 3

    def test_hand_case(self):
        spec = BucketSpec(np.array([0.5]), 2)
        assert bucketize(np.array([0.7]), spec)[0] == 1

    @given(st.lists(st.floats(-100, 100), min_size=2, max_size=30))
    @settings(max_examples=60)
    def test_monotone(self, values):
        spec = BucketSpec(np.array([-1.0, 0.5, 3.0]), 4)
        x = np.sort(np.asarray(values))
        ids = bucketize(x, spec)
        assert (np.diff(ids) >= 0).all()

    @given(st.floats(0.1, 5.0), st.floats(-3, 3))
    @settings(max_examples=60)
    def test_invariant_to_monotone_transform(self, scale, shift):
        # applying x -> scale * x + shift to both values and thresholds
        # leaves bucket ids unchanged
        spec = BucketSpec(np.array([-1.0, 0.5, 3.0]), 4)
        rng = np.random.default_rng(0)
        x = rng.uniform(-5, 6, 50)
        transformed = BucketSpec(spec.thresholds * scale + shift, 4)
        np.testing.assert_array_equal(
            bucketize(x, spec), bucketize(x * scale + shift, transformed)
        )


class TestAvTokens:
    def test_lower_bound_token_zero(self):
        av = AVSequence(arousal=np.full(30, -1.0), valence=np.full(30, -1.0))
        np.testing.assert_array_equal(av_tokens(av)[0], [0, 0])

    def test_upper_bound_clamps_to_11(self):
        av = AVSequence(arousal=np.full(30, 1.0), valence=np.full(30, 1.0))
        np.testing.assert_array_equal(av_tokens(av)[0], [11, 11])

    def test_midpoint_token_six(self):
        av = AVSequence(arousal=np.full(30, 0.5), valence=np.full(30, 0.5))
        np.testing.assert_array_equal(
            av_tokens(av, value_range=(0.0, 1.0))[0], [6, 6]
        )

    def test_reversal_symmetry(self):
        rng = np.random.default_rng(3)
        n = 30 * 7  # full windows only
        av = AVSequence(arousal=rng.uniform(-1, 1, n), valence=rng.uniform(-1, 1, n))
        rev = AVSequence(arousal=av.arousal[::-1].copy(), valence=av.valence[::-1].copy())
        np.testing.assert_array_equal(av_tokens(av), av_tokens(rev)[::-1])

    def test_too_short_rejected(self):
        av = AVSequence(arousal=np.zeros(10), valence=np.zeros(10))
        with pytest.raises(DomainError):
            av_tokens(av)


class TestTemporalDrop:
    def test_p_zero_identity(self):
        g = np.arange(30.0).reshape(10, 3)
        out, keep = temporal_gesture_drop(g, 0.0, np.random.default_rng(0))
        np.testing.assert_array_equal(out, g)
        assert keep.all()

    def test_p_one_all_null(self):
        ids = np.arange(10)
        out, keep = temporal_gesture_drop(ids, 1.0, np.random.default_rng(0), null_id=99)
        assert (out == 99).all() and not keep.any()

    def test_retained_frames_bitwise_equal(self):
        rng = np.random.default_rng(1)
        g = rng.normal(size=(500, 4))
        out, keep = temporal_gesture_drop(g, 0.5, rng)
        np.testing.assert_array_equal(out[keep], g[keep])
        assert (out[~keep] == 0).all()

    def test_drop_fraction_binomial(self):
        rng = np.random.default_rng(2)
        n = 10_000
        _, keep = temporal_gesture_drop(np.zeros((n, 2)), 0.3, rng)
        dropped = 1 - keep.mean()
        # 4-sigma binomial bound
        assert abs(dropped - 0.3) < 4 * np.sqrt(0.3 * 0.7 / n)

    def test_codes_need_null_id(self):
        with pytest.raises(ValidationError):
            temporal_gesture_drop(np.arange(5), 0.5, np.random.default_rng(0))


def two_cluster_sequences(rng, n_seq=8, frames=40, dim=12, separation=6.0):
    out, labels = [], []
    for i in range(n_seq):
        center = separation * (i % 2) * np.ones(dim)
        out.append(center + 0.1 * rng.normal(size=(frames, dim)))
        labels.append(i % 2)
    return out, labels


class TestVq:
    def test_two_clusters_pure(self):
        rng = np.random.default_rng(0)
        sequences, labels = two_cluster_sequences(rng)
        model, _ = vq_fit(sequences, codebook_size=2, seed=0)
        purity_ok = True
        for seq, label in zip(sequences, labels):
            ids = model.encode(seq)
            assert (ids == ids[0]).all()  # one cluster per sequence
        code_of_label = {}
        for seq, label in zip(sequences, labels):
            code = int(model.encode(seq)[0])
            code_of_label.setdefault(label, code)
            purity_ok &= code_of_label[label] == code
        assert purity_ok and code_of_label[0] != code_of_label[1]

    def test_quantizer_fixed_point(self):
        # one well-separated cluster per code: re-encoding a model's own
        # reconstruction must come back to the same code
        rng = np.random.default_rng(1)
        sequences = []
        for i in range(12):
            center = np.zeros(12)
            center[3 * (i % 4) : 3 * (i % 4) + 3] = 6.0
            sequences.append(center + 0.1 * rng.normal(size=(40, 12)))
        model, _ = vq_fit(sequences, codebook_size=4, seed=1, epochs=120)
        for seq in sequences:
            ids = model.encode(seq)
            again = model.encode(model.decode(ids))
            np.testing.assert_array_equal(ids, again)

    def test_reconstruction_improves_with_codebook_size(self):
        rng = np.random.default_rng(2)
        sequences = [rng.normal(size=(60, 8)).cumsum(axis=0) * 0.1 for _ in range(6)]
        errors = []
        for size in (4, 16, 64):
            model, _ = vq_fit(sequences, codebook_size=size, seed=3)
            errors.append(reconstruction_error(model, sequences))
        assert errors[0] > errors[1] > errors[2]

    def test_encode_never_emits_null(self):
        rng = np.random.default_rng(3)
        sequences, _ = two_cluster_sequences(rng)
        model, _ = vq_fit(sequences, codebook_size=8, seed=4)
        for seq in sequences:
            assert model.encode(seq).max() < 8

    def test_decode_null_rejected(self):
        rng = np.random.default_rng(4)
        sequences, _ = two_cluster_sequences(rng)
        model, _ = vq_fit(sequences, codebook_size=4, seed=5)
        with pytest.raises(DomainError):
            model.decode(np.array([0, model.null_id]))


class TestMovingAverage:
    def test_constant(self):
        np.testing.assert_allclose(moving_average(np.full(20, 2.0), 5), 2.0)

    def test_window_one_identity(self):
        x = np.arange(10.0)
        np.testing.assert_array_equal(moving_average(x, 1), x)

    def test_spike_peak(self):
        x = np.zeros(41)
        x[20] = 7.0
        assert moving_average(x, 7).max() == pytest.approx(1.0)
