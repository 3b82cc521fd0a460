"""Experiment harness wiring at minimum scale."""

import numpy as np
import pytest
import torch

from dyadicmotion.corpus import SyntheticConfig, generate_synthetic_corpus
from dyadicmotion.experiments import (
    ToyScale,
    build_windows,
    evaluate_generation,
    fit_norm_stats,
    listener_ffd,
    load_agent_streams,
    run_condition_ablation,
    write_generation,
)
from dyadicmotion.experiments.ablation import load_system, save_system, train_system

torch.set_num_threads(2)

TINY = ToyScale(
    window=32, stride=32, layers=1, hidden_dim=16, ffn_dim=32, heads=2,
    train_steps=5, batch_size=4, sample_steps=3, max_eval_streams=2,
    max_eval_frames=60, embed_dim=8,
)


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    cfg = SyntheticConfig(
        dyads=4, interactions_per_dyad=2, duration_range_s=(6, 8),
        coupling=0.8, test_fraction=0.25, dev_fraction=0.0,
    )
    manifest = generate_synthetic_corpus(cfg, seed=1, out_dir=root)
    return manifest, root


def test_streams_and_windows(corpus):
    manifest, root = corpus
    streams = load_agent_streams(manifest, root, channel="joint", split="train")
    assert streams and streams[0].motion.shape[1] == 395
    stats = fit_norm_stats(streams)
    dataset = build_windows(streams, stats, window=32, stride=16, mode="av_dyadic",
                            channel="joint", visual_stats=stats)
    motion, bundle = dataset.examples[0]
    assert motion.shape == (32, 395)
    assert set(bundle.blocks) == {"speech_a1", "speech_a2", "visual_v2"}
    # normalized train windows have roughly unit scale
    pooled = np.concatenate([m for m, _ in dataset.examples])
    assert abs(pooled.mean()) < 0.2 and 0.5 < pooled.std() < 1.5


def test_condition_ablation_all_six_systems(corpus):
    manifest, root = corpus
    table = run_condition_ablation(manifest, root, seed=0, runs=1, scale=TINY)
    assert [row.system for row in table.rows] == [
        "Dyadic Face2Body",
        "AV Dyadic Face2Body",
        "Dyadic Body2Face",
        "Monadic Face+Body",
        "Dyadic Face+Body",
        "AV Dyadic Face+Body",
    ]
    assert [row.condition for row in table.rows] == [
        "A1+A2", "A1+A2+V2", "A1+A2", "A1", "A1+A2", "A1+A2+V2",
    ]
    for row in table.rows:
        assert row.face_ffd[0] >= 0 and np.isfinite(row.face_ffd[0])
        assert row.body_fgd[0] >= 0 and np.isfinite(row.body_fgd[0])
        assert row.unavailable == ("sync_c", "sync_d", "fid")


def test_system_checkpoint_roundtrip(corpus, tmp_path):
    manifest, root = corpus
    system = train_system(manifest, root, "dyadic", "face", TINY, seed=0, vocab=64)
    test_streams = load_agent_streams(manifest, root, channel="face", split="test")
    from dyadicmotion.experiments import generate_streams

    before = generate_streams(system, test_streams, TINY, seed=9)
    save_system(tmp_path / "sys.ckpt", system)
    loaded = load_system(tmp_path / "sys.ckpt")
    after = generate_streams(loaded, test_streams, TINY, seed=9)
    for a, b in zip(before, after):
        np.testing.assert_array_equal(a, b)
    assert listener_ffd(before, test_streams) == listener_ffd(after, test_streams)


def test_generation_dir_evaluation(corpus, tmp_path):
    manifest, root = corpus
    streams = load_agent_streams(manifest, root, channel="face", split="test")
    gen_dir = tmp_path / "gen"
    for stream in streams[:2]:
        write_generation(gen_dir, stream.interaction_id, stream.side, "face",
                         stream.motion[:50])
    report = evaluate_generation(gen_dir, manifest, root)
    # ground truth copied back in scores (near) zero distance
    assert report.face_ffd == pytest.approx(0.0, abs=1e-6)
    assert report.n_sequences == 2
    assert report.external == {"fid": None, "sync_c": None, "sync_d": None}
