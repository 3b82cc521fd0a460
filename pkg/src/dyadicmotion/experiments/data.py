"""Corpus-to-tensor pipeline for model training and evaluation.

Each interaction yields two training streams (either participant as the
generated agent); conditions follow the A1/A2/V2 convention: A1 is the
agent's own speech, A2 the partner's, V2 the partner's visual features.
Motion is z-scored with train-split statistics and cut into fixed-length
windows with deterministic strides.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..conditioning.bundle import SPEECH_A1, SPEECH_A2, VISUAL_V2, ConditionBundle
from ..corpus.featurefile import read_feature_file
from ..corpus.records import CorpusManifest, InteractionRecord
from ..errors import ConfigError
from ..features.processing import NormStats, resample_condition

CHANNEL_KEYS = {"face": ("face_a", "face_b"), "body": ("body_a", "body_b")}


@dataclass
class AgentStream:
    """One participant's view of one interaction, frame-aligned."""

    interaction_id: str
    side: str  # "a" | "b"
    motion: np.ndarray  # (N, D) raw feature space
    tokens_a1: np.ndarray  # (N,) frame-aligned token ids
    tokens_a2: np.ndarray
    partner_motion: np.ndarray  # (N, D_v) raw feature space
    partner_active: np.ndarray  # (N,) bool

    @property
    def n_frames(self) -> int:
        return self.motion.shape[0]


def _load(root: Path, rec: InteractionRecord, key: str) -> np.ndarray:
    values, _ = read_feature_file(root / rec.feature_refs[key])
    return values


def load_agent_streams(
    manifest: CorpusManifest,
    root: str | Path,
    channel: str = "face",
    split: str | None = None,
) -> list[AgentStream]:
    """Frame-aligned streams for every (interaction, side) of a split."""
    if channel not in ("face", "body", "joint"):
        raise ConfigError(f"channel must be face/body/joint, got {channel!r}")
    root = Path(root)
    streams: list[AgentStream] = []
    for rec in manifest.records:
        if split is not None and rec.split != split:
            continue
        face_a, face_b = _load(root, rec, "face_a"), _load(root, rec, "face_b")
        body_a, body_b = _load(root, rec, "body_a"), _load(root, rec, "body_b")
        tok_a, tok_b = _load(root, rec, "speech_a"), _load(root, rec, "speech_b")
        joint_a = np.concatenate([face_a, body_a], axis=1)
        joint_b = np.concatenate([face_b, body_b], axis=1)
        motion = {"face": (face_a, face_b), "body": (body_a, body_b), "joint": (joint_a, joint_b)}
        n = face_a.shape[0]
        frame_tok_a = resample_condition(tok_a, n)
        frame_tok_b = resample_condition(tok_b, n)
        for side, own, partner, own_tok, partner_tok, partner_vis in (
            ("a", motion[channel][0], motion[channel][1], frame_tok_a, frame_tok_b, motion[channel][1]),
            ("b", motion[channel][1], motion[channel][0], frame_tok_b, frame_tok_a, motion[channel][0]),
        ):
            streams.append(
                AgentStream(
                    interaction_id=rec.interaction_id,
                    side=side,
                    motion=own,
                    tokens_a1=own_tok,
                    tokens_a2=partner_tok,
                    partner_motion=partner_vis,
                    partner_active=partner_tok != 0,
                )
            )
            _ = partner
    return streams


def fit_norm_stats(streams: list[AgentStream]) -> NormStats:
    if not streams:
        raise ConfigError("cannot fit stats on an empty stream list")
    pooled = np.concatenate([s.motion for s in streams], axis=0)
    return NormStats.fit(pooled)


def _bundle_for_window(
    stream: AgentStream,
    start: int,
    window: int,
    mode: str,
    visual_stats: NormStats | None,
) -> ConditionBundle:
    sl = slice(start, start + window)
    blocks: dict[str, np.ndarray] = {SPEECH_A1: stream.tokens_a1[sl]}
    if mode in ("dyadic", "av_dyadic"):
        blocks[SPEECH_A2] = stream.tokens_a2[sl]
    if mode == "av_dyadic":
        visual = stream.partner_motion[sl]
        if visual_stats is not None:
            visual = (visual - visual_stats.mean) / visual_stats.std
        blocks[VISUAL_V2] = visual
    return ConditionBundle(n_frames=window, blocks=blocks)


@dataclass
class WindowedDataset:
    examples: list[tuple[np.ndarray, ConditionBundle]]
    stats: NormStats
    window: int
    mode: str
    channel: str
    visual_stats: NormStats | None = None
    gesture_sources: list[np.ndarray] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.examples)


def build_windows(
    streams: list[AgentStream],
    stats: NormStats,
    window: int = 64,
    stride: int | None = None,
    mode: str = "dyadic",
    channel: str = "face",
    visual_stats: NormStats | None = None,
) -> WindowedDataset:
    """Cut normalized motion windows with aligned condition bundles."""
    if stride is None:
        stride = window // 2
    examples = []
    raw_windows = []
    for stream in streams:
        n = stream.n_frames
        for start in range(0, max(n - window + 1, 0), stride):
            motion = (stream.motion[start : start + window] - stats.mean) / stats.std
            bundle = _bundle_for_window(stream, start, window, mode, visual_stats)
            examples.append((motion.astype(np.float32), bundle))
            raw_windows.append(stream.motion[start : start + window])
    return WindowedDataset(
        examples=examples,
        stats=stats,
        window=window,
        mode=mode,
        channel=channel,
        visual_stats=visual_stats,
        gesture_sources=raw_windows,
    )
