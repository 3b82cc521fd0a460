"""Condition bundles, dropout, joint features, and cascades."""

import numpy as np
import pytest
import torch

from dyadicmotion.conditioning import (
    CascadeSpec,
    ConditionBundle,
    ConditionEncoder,
    STAGE_COND_BLOCK,
    batch_bundles,
    build_condition,
    condition_dropout,
    joint_concat,
    joint_split,
    run_cascade,
    spec_for_mode,
    stage1_to_condition,
    stage_block_spec,
)
from dyadicmotion.errors import ConfigError, ShapeError
from dyadicmotion.features import SpeechTokenStream
from dyadicmotion.flowmatch import FlowModel, FlowModelConfig


def streams(n_tokens=25, vocab=16):
    rng = np.random.default_rng(0)
    a1 = SpeechTokenStream(rng.integers(0, vocab, n_tokens), vocab)
    a2 = SpeechTokenStream(rng.integers(0, vocab, n_tokens), vocab)
    return a1, a2


class TestBuildCondition:
    def test_monadic_single_block(self):
        a1, _ = streams()
        bundle = build_condition(a1, mode="monadic", n_frames=60)
        assert bundle.block_names() == ("speech_a1",)

    def test_dyadic_resampling_lengths(self):
        a1, a2 = streams(25)  # 2 s of audio
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=60)
        assert all(v.shape[0] == 60 for v in bundle.blocks.values())

    def test_av_requires_visual(self):
        a1, a2 = streams()
        with pytest.raises(ConfigError):
            build_condition(a1, a2, mode="av_dyadic", n_frames=60)

    def test_dyadic_requires_partner(self):
        a1, _ = streams()
        with pytest.raises(ConfigError):
            build_condition(a1, mode="dyadic", n_frames=60)

    def test_visual_must_be_frame_aligned(self):
        a1, a2 = streams()
        with pytest.raises(ShapeError):
            build_condition(a1, a2, np.zeros((10, 137)), mode="av_dyadic", n_frames=60)


class TestConditionDropout:
    def test_rho_zero_identity(self):
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=30)
        out = condition_dropout(bundle, 0.0, np.random.default_rng(0))
        assert not any(out.dropout_mask.values())

    def test_rho_one_all_null(self):
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=30)
        out = condition_dropout(bundle, 1.0, np.random.default_rng(0))
        assert all(out.dropout_mask.values())

    def test_drop_rate_binomial_bound(self):
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=30)
        rng = np.random.default_rng(7)
        counts = {"speech_a1": 0, "speech_a2": 0}
        n = 10_000
        for _ in range(n):
            out = condition_dropout(bundle, 0.2, rng)
            for name in counts:
                counts[name] += out.dropout_mask[name]
        for name, count in counts.items():
            assert abs(count / n - 0.2) < 0.02, name


class TestJointFeatures:
    def test_roundtrip_bitwise(self):
        rng = np.random.default_rng(0)
        face, body = rng.normal(size=(10, 137)), rng.normal(size=(10, 258))
        joint = joint_concat(face, body)
        assert joint.shape == (10, 395)
        f, b = joint_split(joint)
        assert np.array_equal(f, face) and np.array_equal(b, body)

    def test_zero_frames(self):
        joint = joint_concat(np.zeros((0, 137)), np.zeros((0, 258)))
        assert joint.shape == (0, 395)

    def test_width_mismatch(self):
        with pytest.raises(ShapeError):
            joint_concat(np.zeros((5, 137)), np.zeros((4, 258)))


class TestNullEmbedding:
    def test_dropped_block_uses_registered_null(self):
        spec = spec_for_mode("dyadic", speech_vocab=16, speech_embed_dim=8)
        encoder = ConditionEncoder(spec, hidden_dim=12)
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=6)
        dropped = ConditionBundle(
            6, dict(bundle.blocks), {"speech_a1": True, "speech_a2": False}
        )
        batch = batch_bundles(spec, [dropped])
        emb = encoder.block_embedding(batch, "speech_a1")
        null = encoder.null_embedding("speech_a1").detach()
        assert torch.allclose(emb[0], null.expand(6, -1))
        assert not torch.allclose(null, torch.zeros_like(null))  # learned, not zeros

    def test_unconditional_pass_uses_nulls_everywhere(self):
        spec = spec_for_mode("dyadic", speech_vocab=16, speech_embed_dim=8)
        encoder = ConditionEncoder(spec, hidden_dim=12)
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=6)
        all_dropped = ConditionBundle(
            6, dict(bundle.blocks), {name: True for name in bundle.blocks}
        )
        batch = batch_bundles(spec, [bundle])
        batch_dropped = batch_bundles(spec, [all_dropped])
        out_uncond = encoder(batch, unconditional=True)
        out_dropped = encoder(batch_dropped)
        assert torch.allclose(out_uncond, out_dropped)


def cascade_models(order="face2body", variant="full_imitator", hidden=16):
    spec1_channel = 137 if order == "face2body" else 258
    spec2_channel = 258 if order == "face2body" else 137
    spec1 = spec_for_mode("dyadic", speech_vocab=16, speech_embed_dim=8)
    block = stage_block_spec(order, variant, embed_dim=8)
    spec2 = spec_for_mode("dyadic", speech_vocab=16, speech_embed_dim=8, control_blocks=(block,))
    m1 = FlowModel(FlowModelConfig(motion_dim=spec1_channel, cond=spec1, layers=1,
                                   hidden_dim=hidden, ffn_dim=32, heads=2))
    m2 = FlowModel(FlowModelConfig(motion_dim=spec2_channel, cond=spec2, layers=1,
                                   hidden_dim=hidden, ffn_dim=32, heads=2))
    return m1, m2


class TestCascade:
    def test_head_rotation_variant_passes_three_dims(self):
        spec = CascadeSpec(order="face2body", face_cond_variant="head_rotation_only")
        face = np.arange(4 * 137, dtype=float).reshape(4, 137)
        cond = stage1_to_condition(spec, face)
        assert cond.shape == (4, 3)
        np.testing.assert_array_equal(cond, face[:, 128:131])
        assert stage_block_spec(spec.order, spec.face_cond_variant).width == 3

    def test_full_variant_passes_137(self):
        spec = CascadeSpec(order="face2body", face_cond_variant="full_imitator")
        face = np.zeros((4, 137))
        assert stage1_to_condition(spec, face).shape == (4, 137)
        assert stage_block_spec(spec.order).width == 137

    def test_variant_only_for_face2body(self):
        with pytest.raises(ConfigError):
            CascadeSpec(order="body2face", face_cond_variant="head_rotation_only")

    def test_mismatched_stage2_rejected(self):
        m1, m2 = cascade_models(variant="full_imitator")
        spec = CascadeSpec(order="face2body", face_cond_variant="head_rotation_only")
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=8)
        with pytest.raises(ConfigError, match="width"):
            run_cascade(spec, m1, m2, bundle, n_frames=8, seed=0, steps=2)

    def test_deterministic_given_seed(self):
        m1, m2 = cascade_models()
        spec = CascadeSpec(order="face2body")
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=8)
        face_a, body_a = run_cascade(spec, m1, m2, bundle, n_frames=8, seed=3, steps=4)
        face_b, body_b = run_cascade(spec, m1, m2, bundle, n_frames=8, seed=3, steps=4)
        np.testing.assert_array_equal(face_a, face_b)
        np.testing.assert_array_equal(body_a, body_b)

    def test_oracle_stage1_reduces_to_conditional_stage2(self):
        # pin stage-1 output via a zero-velocity oracle: the cascade output
        # equals plain conditional generation of stage 2 given that face
        m1, m2 = cascade_models()
        with torch.no_grad():
            for p in m1.parameters():
                p.zero_()  # stage 1 becomes the identity flow x = eps
        spec = CascadeSpec(order="face2body")
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=8)
        face, body = run_cascade(spec, m1, m2, bundle, n_frames=8, seed=5, steps=4)

        from dyadicmotion.flowmatch import sample_ode

        gen1 = torch.Generator().manual_seed(5)
        eps = torch.randn(1, 8, 137, generator=gen1)
        np.testing.assert_allclose(face, eps[0].numpy(), atol=1e-6)
        bundle2 = bundle.with_block(STAGE_COND_BLOCK, face)
        cond2 = batch_bundles(m2.config.cond, [bundle2])
        direct = sample_ode(
            m2.velocity_closure(cond2), (1, 8, 258), steps=4, cfg_weight=1.5,
            generator=torch.Generator().manual_seed(6),
        )[0].numpy()
        np.testing.assert_allclose(body, direct, atol=1e-5)

    def test_body2face_symmetric(self):
        m1, m2 = cascade_models(order="body2face")
        spec = CascadeSpec(order="body2face")
        a1, a2 = streams()
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=8)
        face, body = run_cascade(spec, m1, m2, bundle, n_frames=8, seed=1, steps=2)
        assert face.shape == (8, 137) and body.shape == (8, 258)
