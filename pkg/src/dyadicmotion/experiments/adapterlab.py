"""Synthetic fixtures and harness for the codebook adapters.

The gesture fixture plants short token runs (sub-second "trigger words")
inside otherwise random speech; each trigger value maps to one gesture
class, everything else is the null gesture. Hidden states come from the
frozen stand-in speech encoder, are re-timed to the adapter's token
rate, and pair with window-level gold codes (dominant non-null gesture
covering at least half the window). Because triggers last well under a
second, a 2 token/s adapter sees cleaner windows than a 1 token/s one.

The emotion fixture ties arousal/valence levels to token bands so the
12-bin targets are predictable from audio alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from ..adapter.hidden import FrozenSpeechEncoder, HiddenStates, interpolate_hidden
from ..adapter.metrics import macro_prf
from ..adapter.model import AdapterHead
from ..adapter.training import train_adapter
from ..control.buckets import av_tokens
from ..control.signals import AVSequence
from ..errors import ConfigError

SOURCE_RATE = 12.5


@dataclass
class GestureFixture:
    sequences: list[np.ndarray]  # token streams
    frame_labels: list[np.ndarray]  # per-token gesture id or null
    n_gestures: int
    vocab: int

    @property
    def null_id(self) -> int:
        return self.n_gestures


def make_gesture_fixture(
    seed: int,
    n_sequences: int = 24,
    duration_s: float = 24.0,
    n_gestures: int = 4,
    vocab: int = 64,
    trigger_s: tuple[float, float] = (0.4, 0.7),
    triggers_per_sequence: int = 10,
) -> GestureFixture:
    """Token streams with sub-second gesture triggers and per-token labels."""
    if vocab <= n_gestures + 1:
        raise ConfigError("vocab must leave room for background tokens")
    rng = np.random.default_rng(seed)
    n_tok = int(round(duration_s * SOURCE_RATE))
    sequences, labels = [], []
    for _ in range(n_sequences):
        tokens = rng.integers(n_gestures + 1, vocab, size=n_tok)
        frame = np.full(n_tok, n_gestures, dtype=np.int64)  # null
        for _ in range(triggers_per_sequence):
            g = int(rng.integers(0, n_gestures))
            length = int(round(rng.uniform(*trigger_s) * SOURCE_RATE))
            start = int(rng.integers(0, max(n_tok - length, 1)))
            tokens[start : start + length] = g + 1  # token value marks the gesture
            frame[start : start + length] = g
        sequences.append(tokens)
        labels.append(frame)
    return GestureFixture(
        sequences=sequences, frame_labels=labels, n_gestures=n_gestures, vocab=vocab
    )


def window_gold(frame_labels: np.ndarray, rate: float, null_id: int) -> np.ndarray:
    """Dominant non-null label per window (needs >= half the window), else null."""
    n_windows = int(round(len(frame_labels) * rate / SOURCE_RATE))
    if n_windows < 1:
        raise ConfigError("label track too short for the requested rate")
    edges = np.linspace(0, len(frame_labels), n_windows + 1).round().astype(int)
    gold = np.full(n_windows, null_id, dtype=np.int64)
    for w in range(n_windows):
        chunk = frame_labels[edges[w] : edges[w + 1]]
        if len(chunk) == 0:
            continue
        non_null = chunk[chunk != null_id]
        if len(non_null) * 2 >= len(chunk) and len(non_null) > 0:
            values, counts = np.unique(non_null, return_counts=True)
            gold[w] = values[counts.argmax()]
    return gold


def adapter_pairs(
    fixture: GestureFixture,
    encoder: FrozenSpeechEncoder,
    rate: float,
) -> list[tuple[np.ndarray, np.ndarray]]:
    """(interpolated hidden states, window gold codes) per sequence."""
    pairs = []
    for tokens, frame in zip(fixture.sequences, fixture.frame_labels):
        hidden = encoder.hidden_states(tokens, source_rate=SOURCE_RATE)
        states = interpolate_hidden(hidden, rate).states
        gold = window_gold(frame, rate, fixture.null_id)
        n = min(len(states), len(gold))
        pairs.append((states[:n], gold[:n]))
    return pairs


@dataclass
class RateSweepRow:
    rate: float
    precision: float
    recall: float
    f1: float
    accuracy: float


def run_gesture_rate_sweep(
    seed: int,
    rates: tuple[float, ...] = (1.0, 2.0),
    d_model: int = 64,
    epochs: int = 320,
    train_fraction: float = 0.75,
) -> list[RateSweepRow]:
    """Train one gesture adapter per token rate on the shared fixture."""
    fixture = make_gesture_fixture(seed)
    encoder = FrozenSpeechEncoder(fixture.vocab, d_model=d_model, seed=seed)
    rows = []
    for rate in rates:
        pairs = adapter_pairs(fixture, encoder, rate)
        n_train = max(1, int(round(train_fraction * len(pairs))))
        train_pairs, val_pairs = pairs[:n_train], pairs[n_train:]
        torch.manual_seed(seed)  # head init is part of the seed contract
        head = AdapterHead(d_model, fixture.n_gestures + 1, "gesture", width=128)
        train_adapter(
            head,
            train_pairs,
            epochs=epochs,
            seed=seed,
            frozen_modules=(encoder,),
            null_id=fixture.null_id,
        )
        pred = np.concatenate(
            [head.predict(states, rate).ids for states, _ in val_pairs]
        )
        gold = np.concatenate([g for _, g in val_pairs])
        p, r, f1 = macro_prf(pred, gold, exclude={fixture.null_id})
        rows.append(
            RateSweepRow(
                rate=rate,
                precision=p,
                recall=r,
                f1=f1,
                accuracy=float((pred == gold).mean()),
            )
        )
    return rows


def make_emotion_fixture(
    seed: int,
    n_sequences: int = 16,
    duration_s: float = 24.0,
    vocab: int = 64,
    fps: float = 30.0,
) -> tuple[list[np.ndarray], list[AVSequence]]:
    """Token streams whose band (low/mid/high values) sets the A-V level."""
    rng = np.random.default_rng(seed)
    n_tok = int(round(duration_s * SOURCE_RATE))
    n_frames = int(round(duration_s * fps))
    bands = np.array([0.15, 0.5, 0.85])
    streams, avs = [], []
    for _ in range(n_sequences):
        segment_band = rng.integers(0, 3, size=max(1, n_tok // 25))
        band_track = np.repeat(segment_band, 25)[:n_tok]
        lo = 1 + band_track * ((vocab - 1) // 3)
        tokens = (lo + rng.integers(0, max((vocab - 1) // 3, 1), size=n_tok)).clip(1, vocab - 1)
        level = bands[band_track]
        frame_idx = np.clip((np.arange(n_frames) * SOURCE_RATE / fps).astype(int), 0, n_tok - 1)
        value = level[frame_idx] + rng.normal(0, 0.02, size=n_frames)
        value = np.clip(value, 0.0, 1.0)
        streams.append(tokens.astype(np.int64))
        avs.append(AVSequence(arousal=value, valence=1.0 - value))
    return streams, avs


def emotion_gold(av: AVSequence, rate: float = 1.0, fps: float = 30.0) -> np.ndarray:
    """(windows, 2) valence/arousal token targets on the [0, 1] adapter range."""
    return av_tokens(av, bins=12, window_s=1.0 / rate, fps=fps, value_range=(0.0, 1.0))
