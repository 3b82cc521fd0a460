"""Controllability plumbing: buckets, emotion tokens, gesture conditions."""

import numpy as np

from dyadicmotion.control import (
    AVSequence,
    av_tokens,
    bucketize,
    dynamism,
    fit_thresholds,
    moving_average,
    reconstruction_error,
    temporal_gesture_drop,
    vq_fit,
)

rng = np.random.default_rng(0)

# dynamism buckets for expressivity control: fit thresholds on corpus
# statistics, then condition on bucket ids instead of raw values
head_pitch = np.cumsum(rng.normal(0, 0.02, size=3000))
speed = dynamism(moving_average(head_pitch, 5))
spec = fit_thresholds(speed, k=4)
ids = bucketize(speed, spec)
print("dynamism bucket thresholds:", np.round(spec.thresholds, 4))
print("bucket occupancy:", np.bincount(ids, minlength=4) / len(ids))

# per-second emotion tokens on the adapter's [0, 1] range
n = 30 * 6
valence = np.clip(0.5 + 0.4 * np.sin(np.linspace(0, 3 * np.pi, n)), 0, 1)
av = AVSequence(arousal=np.full(n, 0.3), valence=valence)
tokens = av_tokens(av, bins=12, value_range=(0.0, 1.0))
print("per-second (valence, arousal) tokens:\n", tokens)

# temporal gesture-condition dropping: null frames teach smooth bridging
gesture = rng.normal(size=(12, 4))
dropped, kept = temporal_gesture_drop(gesture, p_drop=0.5, rng=rng)
print(f"kept {kept.sum()}/12 frames; dropped rows are zero vectors:",
      bool((dropped[~kept] == 0).all()))

# VQ gesture codebook: reconstruction improves with codebook size
sequences = [rng.normal(size=(50, 8)).cumsum(axis=0) * 0.1 for _ in range(6)]
for size in (4, 16, 64):
    model, _ = vq_fit(sequences, codebook_size=size, seed=1)
    print(f"|C|={size:3d}: reconstruction MSE {reconstruction_error(model, sequences):.4f}, "
          f"null id {model.null_id}")
