"""The documented toy training recipe: loss halves within budget."""

import numpy as np
import torch

from dyadicmotion.conditioning import build_condition, spec_for_mode
from dyadicmotion.features import SpeechTokenStream
from dyadicmotion.flowmatch import FlowModel, FlowModelConfig, TrainConfig, train

torch.set_num_threads(2)


def test_toy_task_loss_halves():
    # 64-value windows (16 frames x 4 dims), 1k samples, < 2k steps; the
    # motion is a token-driven signature plus small noise, so the
    # conditional velocity is learnable well below the starting loss
    rng = np.random.default_rng(0)
    torch.manual_seed(0)
    vocab, n_frames, dim = 16, 16, 4
    token_signature = rng.normal(size=(vocab, dim))
    spec = spec_for_mode("dyadic", speech_vocab=vocab, speech_embed_dim=16)
    config = FlowModelConfig(
        motion_dim=dim, cond=spec, layers=2, hidden_dim=32, ffn_dim=64, heads=4
    )
    model = FlowModel(config)

    examples = []
    for _ in range(1000):
        tokens_a1 = rng.integers(0, vocab, 8)
        a1 = SpeechTokenStream(tokens_a1, vocab)
        a2 = SpeechTokenStream(rng.integers(0, vocab, 8), vocab)
        bundle = build_condition(a1, a2, mode="dyadic", n_frames=n_frames)
        motion = token_signature[bundle.blocks["speech_a1"]]
        motion = (motion + 0.05 * rng.normal(size=motion.shape)).astype(np.float32)
        examples.append((motion, bundle))

    result = train(
        model, examples, TrainConfig(steps=1200, batch_size=32, seed=0, log_every=0)
    )
    initial = float(np.mean(result.losses[:20]))
    final = float(np.mean(result.losses[-20:]))
    assert final < 0.5 * initial, f"loss {initial:.3f} -> {final:.3f}"
