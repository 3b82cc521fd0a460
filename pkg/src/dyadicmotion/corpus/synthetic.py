"""Seeded synthetic dyadic corpus.

Stands in for the real recordings at desk scale. The generative process
is deliberately minimal but keeps the structure that matters for the
model ablations:

* Turn-taking: each channel is a two-state talk/silence Markov chain at
  the 12.5 Hz token rate, coupled so turns anti-correlate (starting is
  unlikely while the partner holds the floor, stopping is likely), with
  silent gaps between turns and occasional overlap.
* Speech tokens: silence emits token 0; talk frames draw uniformly from
  the nonzero vocabulary.
* Face motion (30 fps, 137-d): a smoothed Gaussian baseline everywhere;
  a fixed articulation channel group carries own-speech-gated
  oscillations, a disjoint fixed group carries a partner-speech-gated
  listener response (sustained smiles and backchannel expressions), and
  the 3 head-rotation dimensions carry an oscillatory listener "nod".
  The channel groups are population-shared (everyone smiles and nods
  with the same facial machinery); amplitudes, rhythms, and phases vary
  per participant. All listener responses are gated by the *partner's*
  speech and scaled by the coupling strength kappa. Translations stay
  baseline.
* Body motion (258-d): near-identity 6D joint rotations with smooth
  perturbations; arm joints carry own-speech beat gestures; spine/neck/
  head joints carry a kappa-scaled partner-gated sway.

With kappa = 0 the head-rotation channel is independent of partner
speech; with kappa near 1 a listener's head-pitch dynamism rises sharply
whenever the partner talks, which is exactly what dyadic audio
conditioning can exploit and monadic conditioning cannot.

Everything is deterministic per (config, seed): per-interaction RNGs are
spawned from a single seed sequence, and outputs are byte-identical
across repeated runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.ndimage import gaussian_filter1d

from ..errors import ConfigError
from ..features.containers import (
    BODY_DIM,
    EXPRESSION_DIM,
    FACE_DIM,
    HEAD_ROTATION_SLICE,
    TRANSLATION_SLICE,
)
from ..features.skeleton import body_dims_for_joints, neutral_pose_6d
from .featurefile import write_feature_file
from .manifest import save_manifest
from .records import (
    AnnotationRecord,
    CorpusManifest,
    InteractionRecord,
    IPC_OCTANTS,
    ParticipantRecord,
    RELATIONSHIPS,
)

ARM_JOINTS = (
    "left_shoulder", "right_shoulder",
    "left_elbow", "right_elbow",
    "left_wrist", "right_wrist",
)
LISTENER_BODY_JOINTS = ("spine3", "neck", "head")

# Population-shared channel groups inside the 128-d expression code.
# Everyone articulates and smiles with the same facial machinery; style
# varies amplitude and rhythm per participant, not which dimensions move.
ARTICULATION_DIMS = np.arange(0, 16)
LISTEN_EXPR_DIMS = np.arange(96, 112)

_RELATIONSHIP_WEIGHTS = {
    "stranger": 0.45,
    "friends": 0.33,
    "coworkers": 0.07,
    "family-generic": 0.05,
    "familiar-generic": 0.05,
    "romantic": 0.03,
    "classmates": 0.012,
    "siblings": 0.004,
    "parent/child": 0.002,
    "neighbors": 0.001,
    "roommates": 0.001,
}

_PROMPT_POOL = (
    ("Describe a decision you are proud of.", "Ask what made it hard.", "ANCM", None),
    ("Bring up a plan you are unsure about.", "Help weigh the options.", "ALCM", "AMCP"),
    ("Explain a hobby you love.", "Ask for a demonstration.", "AHCH", None),
    ("Recall a time you felt misjudged.", "Listen and respond.", "ANCM", "AMCP"),
    ("Argue for a change at work.", "Push back politely.", "APCN", "AMCN"),
    ("Tell a story about a trip.", "Interrupt with questions.", "AHCH", "AHCL"),
    ("Admit something you find difficult.", "Offer reassurance.", "ALCL", "AMCP"),
    ("Teach a simple game.", "Deliberately get it wrong.", "ANCM", "ALCM"),
)


@dataclass
class SyntheticConfig:
    dyads: int = 8
    interactions_per_dyad: int = 4
    duration_range_s: tuple[float, float] = (8.0, 16.0)
    coupling: float = 0.7
    vocab_size: int = 64
    fps: float = 30.0
    speech_hz: float = 12.5
    dev_fraction: float = 0.125
    test_fraction: float = 0.125
    part: str = "naturalistic"

    def __post_init__(self):
        if self.dyads < 1 or self.interactions_per_dyad < 1:
            raise ConfigError("dyads and interactions_per_dyad must be >= 1")
        lo, hi = self.duration_range_s
        if not (0 < lo <= hi):
            raise ConfigError(f"bad duration range {self.duration_range_s}")
        if not 0.0 <= self.coupling <= 1.0:
            raise ConfigError(f"coupling must be in [0, 1], got {self.coupling}")
        if self.vocab_size < 2:
            raise ConfigError("vocab_size must be >= 2 (token 0 is silence)")
        if not 0.0 <= self.dev_fraction + self.test_fraction < 1.0:
            raise ConfigError("dev_fraction + test_fraction must be < 1")


@dataclass
class _Style:
    """Per-participant latent style."""

    expr_mask: np.ndarray
    expr_freq: float
    expr_phase: float
    listen_mask: np.ndarray
    listen_freq: float
    listen_phase: float
    nod_amp: float
    nod_freq: float
    nod_phase: float
    arm_mask: np.ndarray
    arm_freq: float
    arm_phase: float

    @classmethod
    def draw(cls, rng: np.random.Generator) -> "_Style":
        # fixed channel groups, per-participant amplitudes
        expr_mask = np.zeros(EXPRESSION_DIM)
        expr_mask[ARTICULATION_DIMS] = rng.uniform(0.7, 1.0, size=len(ARTICULATION_DIMS))
        listen_mask = np.zeros(EXPRESSION_DIM)
        listen_mask[LISTEN_EXPR_DIMS] = rng.uniform(0.7, 1.0, size=len(LISTEN_EXPR_DIMS))
        arm_dims = body_dims_for_joints(ARM_JOINTS)
        arm_mask = np.zeros(BODY_DIM)
        arm_mask[arm_dims[::3]] = rng.uniform(0.7, 1.0, size=len(arm_dims[::3]))
        return cls(
            expr_mask=expr_mask,
            expr_freq=rng.uniform(2.5, 4.5),
            expr_phase=rng.uniform(0, 2 * np.pi),
            listen_mask=listen_mask,
            listen_freq=rng.uniform(0.5, 1.2),
            listen_phase=rng.uniform(0, 2 * np.pi),
            nod_amp=rng.uniform(0.55, 0.80),
            nod_freq=rng.uniform(1.8, 2.6),
            nod_phase=rng.uniform(0, 2 * np.pi),
            arm_mask=arm_mask,
            arm_freq=rng.uniform(1.5, 3.0),
            arm_phase=rng.uniform(0, 2 * np.pi),
        )


def _simulate_turns(n_tok: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Coupled talk/silence chains; returns boolean activity per channel.

    Rates are tuned so turns average ~3 s with ~1 s silent gaps between
    them: roughly a quarter of the time neither channel is active, which
    keeps the partner's state genuinely ambiguous given only one channel.
    """
    p_start_quiet, p_start_busy = 0.035, 0.012
    p_stop_quiet, p_stop_busy = 0.025, 0.10
    a = np.zeros(n_tok, dtype=bool)
    b = np.zeros(n_tok, dtype=bool)
    state_a = bool(rng.integers(0, 2))
    state_b = not state_a
    for t in range(n_tok):
        a[t], b[t] = state_a, state_b
        u_a, u_b = rng.random(), rng.random()
        if state_a:
            state_a = u_a >= (p_stop_busy if state_b else p_stop_quiet)
        else:
            state_a = u_a < (p_start_busy if state_b else p_start_quiet)
        if state_b:
            state_b = u_b >= (p_stop_busy if a[t] else p_stop_quiet)
        else:
            state_b = u_b < (p_start_busy if a[t] else p_start_quiet)
    return a, b


def _tokens_from_activity(
    activity: np.ndarray, vocab_size: int, rng: np.random.Generator
) -> np.ndarray:
    tokens = np.zeros(len(activity), dtype=np.int64)
    n_active = int(activity.sum())
    if n_active:
        tokens[activity] = rng.integers(1, vocab_size, size=n_active)
    return tokens


def _smooth_noise(
    rng: np.random.Generator, n: int, dims: int, sigma: float = 3.0
) -> np.ndarray:
    """Unit-variance smoothed Gaussian noise, (n, dims)."""
    noise = rng.normal(size=(n, dims))
    smoothed = gaussian_filter1d(noise, sigma=sigma, axis=0, mode="nearest")
    delta = np.zeros(max(n, int(8 * sigma) + 1))
    delta[len(delta) // 2] = 1.0
    gain = np.sqrt((gaussian_filter1d(delta, sigma=sigma, mode="nearest") ** 2).sum())
    return smoothed / gain


def _activity_to_frames(activity: np.ndarray, n_frames: int, cfg: SyntheticConfig) -> np.ndarray:
    idx = np.floor(np.arange(n_frames) * (cfg.speech_hz / cfg.fps)).astype(np.int64)
    idx = np.clip(idx, 0, len(activity) - 1)
    return activity[idx]


def _face_track(
    n_frames: int,
    talk_self: np.ndarray,
    talk_partner: np.ndarray,
    style: _Style,
    kappa: float,
    fps: float,
    rng: np.random.Generator,
) -> np.ndarray:
    t = np.arange(n_frames) / fps
    face = np.zeros((n_frames, FACE_DIM))
    gate_self = gaussian_filter1d(talk_self.astype(float), sigma=2.0, mode="nearest")
    gate_partner = gaussian_filter1d(talk_partner.astype(float), sigma=2.0, mode="nearest")

    expr = 0.35 * _smooth_noise(rng, n_frames, EXPRESSION_DIM)
    osc = np.sin(2 * np.pi * style.expr_freq * t + style.expr_phase)
    expr += gate_self[:, None] * style.expr_mask[None, :] * (0.9 * osc[:, None] + 0.4)
    # listener response on the expression channel, scaled by the coupling;
    # mostly a sustained shift (smile-like) with a slow modulation
    listen_osc = np.sin(2 * np.pi * style.listen_freq * t + style.listen_phase)
    expr += (
        kappa
        * gate_partner[:, None]
        * style.listen_mask[None, :]
        * (0.45 * listen_osc[:, None] + 0.9)
    )
    face[:, :EXPRESSION_DIM] = expr

    rot = 0.05 * _smooth_noise(rng, n_frames, 3)
    nod = np.sin(2 * np.pi * style.nod_freq * t + style.nod_phase)
    # Listener response: pitch leads, with weaker yaw/roll components.
    rot[:, 0] += kappa * style.nod_amp * gate_partner * nod
    rot[:, 1] += kappa * 0.3 * style.nod_amp * gate_partner * np.sin(
        2 * np.pi * 0.7 * style.nod_freq * t + style.nod_phase + 0.9
    )
    rot[:, 2] += kappa * 0.15 * style.nod_amp * gate_partner * nod
    face[:, HEAD_ROTATION_SLICE] = rot

    face[:, TRANSLATION_SLICE] = 0.08 * _smooth_noise(rng, n_frames, 6)
    return face


def _body_track(
    n_frames: int,
    talk_self: np.ndarray,
    talk_partner: np.ndarray,
    style: _Style,
    kappa: float,
    fps: float,
    rng: np.random.Generator,
) -> np.ndarray:
    t = np.arange(n_frames) / fps
    gate_self = gaussian_filter1d(talk_self.astype(float), sigma=2.0, mode="nearest")
    gate_partner = gaussian_filter1d(talk_partner.astype(float), sigma=2.0, mode="nearest")

    body = neutral_pose_6d(n_frames).reshape(n_frames, BODY_DIM)
    body = body + 0.06 * _smooth_noise(rng, n_frames, BODY_DIM)

    beat = np.sin(2 * np.pi * style.arm_freq * t + style.arm_phase)
    body += gate_self[:, None] * style.arm_mask[None, :] * 0.35 * beat[:, None]

    listener_dims = body_dims_for_joints(LISTENER_BODY_JOINTS)
    sway = np.sin(2 * np.pi * style.nod_freq * t + style.nod_phase)
    body[:, listener_dims] += (
        kappa * 0.25 * (gate_partner * sway)[:, None]
    ) * np.linspace(1.0, 0.5, len(listener_dims))[None, :]
    return body


def generate_synthetic_corpus(
    cfg: SyntheticConfig, seed: int, out_dir: str | Path
) -> CorpusManifest:
    """Generate manifest + feature files under ``out_dir``; returns the manifest."""
    out_dir = Path(out_dir)
    features_dir = out_dir / "features"
    root_seq = np.random.SeedSequence([int(seed), 0xD7AD])
    corpus_rng = np.random.default_rng(root_seq.spawn(1)[0])

    n_dev = int(round(cfg.dev_fraction * cfg.dyads))
    n_test = int(round(cfg.test_fraction * cfg.dyads))
    split_of_dyad = ["train"] * (cfg.dyads - n_dev - n_test) + ["dev"] * n_dev + ["test"] * n_test

    rel_names = list(_RELATIONSHIP_WEIGHTS)
    rel_probs = np.array([_RELATIONSHIP_WEIGHTS[r] for r in rel_names])
    rel_probs = rel_probs / rel_probs.sum()

    records: list[InteractionRecord] = []
    participants: dict[str, ParticipantRecord] = {}

    for dyad_idx in range(cfg.dyads):
        dyad_seq = np.random.SeedSequence([int(seed), 0xD7AD, dyad_idx])
        dyad_rng = np.random.default_rng(dyad_seq)
        pid_a = f"P{2 * dyad_idx:04d}"
        pid_b = f"P{2 * dyad_idx + 1:04d}"
        style = {
            pid_a: _Style.draw(np.random.default_rng(np.random.SeedSequence([int(seed), 1, 2 * dyad_idx]))),
            pid_b: _Style.draw(np.random.default_rng(np.random.SeedSequence([int(seed), 1, 2 * dyad_idx + 1]))),
        }
        for pid in (pid_a, pid_b):
            bfi2 = None
            if dyad_rng.random() < 0.5:
                bfi2 = {
                    trait: float(np.round(dyad_rng.uniform(1.0, 5.0), 2))
                    for trait in (
                        "agreeableness",
                        "conscientiousness",
                        "extraversion",
                        "neuroticism",
                        "openness",
                    )
                }
            participants[pid] = ParticipantRecord(participant_id=pid, bfi2=bfi2)

        relationship = rel_names[int(dyad_rng.choice(len(rel_names), p=rel_probs))]
        if relationship not in RELATIONSHIPS:  # pragma: no cover - table is static
            raise ConfigError(f"bad relationship {relationship}")
        session_id = f"S{dyad_idx:04d}"
        split = split_of_dyad[dyad_idx]

        for int_idx in range(cfg.interactions_per_dyad):
            int_seq = np.random.SeedSequence([int(seed), 0xD7AD, dyad_idx, int_idx])
            rng = np.random.default_rng(int_seq)
            interaction_id = f"I{dyad_idx:04d}_{int_idx:02d}"

            duration = float(rng.uniform(*cfg.duration_range_s))
            n_tok = max(2, int(round(duration * cfg.speech_hz)))
            n_frames = max(2, int(round(duration * cfg.fps)))

            act_a, act_b = _simulate_turns(n_tok, rng)
            tokens_a = _tokens_from_activity(act_a, cfg.vocab_size, rng)
            tokens_b = _tokens_from_activity(act_b, cfg.vocab_size, rng)
            talk_a = _activity_to_frames(act_a, n_frames, cfg)
            talk_b = _activity_to_frames(act_b, n_frames, cfg)

            face_a = _face_track(n_frames, talk_a, talk_b, style[pid_a], cfg.coupling, cfg.fps, rng)
            face_b = _face_track(n_frames, talk_b, talk_a, style[pid_b], cfg.coupling, cfg.fps, rng)
            body_a = _body_track(n_frames, talk_a, talk_b, style[pid_a], cfg.coupling, cfg.fps, rng)
            body_b = _body_track(n_frames, talk_b, talk_a, style[pid_b], cfg.coupling, cfg.fps, rng)

            refs: dict[str, str] = {}
            channel_data = {
                "speech_a": ("speech_a", tokens_a),
                "speech_b": ("speech_b", tokens_b),
                "face_a": ("face", face_a),
                "face_b": ("face", face_b),
                "body_a": ("body", body_a),
                "body_b": ("body", body_b),
            }
            for key, (channel, data) in channel_data.items():
                rel_path = f"features/{interaction_id}.{key}.bin"
                fps = cfg.speech_hz if channel.startswith("speech") else cfg.fps
                write_feature_file(out_dir / rel_path, data, channel=channel, fps=fps)
                refs[key] = rel_path

            prompt_a, prompt_b, ipc_a, ipc_b = _PROMPT_POOL[
                int(rng.integers(0, len(_PROMPT_POOL)))
            ]
            annotations = []
            if rng.random() < 0.1:
                start = float(rng.uniform(0.0, duration * 0.5))
                annotations.append(
                    AnnotationRecord(
                        moi_start_s=start,
                        moi_end_s=start + float(rng.uniform(1.0, 3.0)),
                        kind="3P-V",
                        text="pronounced head nod while listening",
                        target_participant=pid_a,
                    )
                )

            records.append(
                InteractionRecord(
                    interaction_id=interaction_id,
                    session_id=session_id,
                    participant_a=pid_a,
                    participant_b=pid_b,
                    part=cfg.part,
                    split=split,
                    relationship=relationship,
                    interaction_type="ipc_conversation",
                    prompt_a=prompt_a,
                    prompt_b=prompt_b,
                    ipc_a=ipc_a,
                    ipc_b=ipc_b,
                    duration_s=duration,
                    feature_refs=refs,
                    annotations=annotations,
                    extra={"coupling": cfg.coupling, "seed": int(seed)},
                )
            )

    _ = corpus_rng  # reserved for corpus-level draws
    manifest = CorpusManifest(records=records, participants=participants)
    save_manifest(manifest, out_dir)
    _ = features_dir
    return manifest
