"""Semantic gesture-control experiments.

Body models train with a gesture condition block alongside speech:
either raw pose frames or VQ code ids of the same frames, with temporal
condition dropping re-randomized on every training draw. Evaluation
plants a scripted, out-of-distribution gesture into a window of a test
stream, generates with the condition ON only inside that window, and
scores condition following (pose and keypoint space) plus boundary
smoothness at the ON/OFF transitions.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import torch

from ..conditioning.bundle import ConditionBundle
from ..conditioning.encoder import CondBlockSpec, batch_bundles
from ..control.gesture import temporal_gesture_drop
from ..control.vq import VQGestureModel, vq_fit
from ..corpus.records import CorpusManifest
from ..errors import ConfigError
from ..features.containers import BODY_DIM, BODY_JOINTS, ROT6D
from ..features.processing import NormStats, smooth_savgol
from ..features.skeleton import body_dims_for_joints, forward_kinematics, neutral_pose_6d
from ..flowmatch.dit import FlowModelConfig
from ..flowmatch.model import FlowModel
from ..flowmatch.sampler import sample_ode
from ..flowmatch.training import TrainConfig, train
from ..metrics.following import condition_following
from ..metrics.smoothness import KeypointTrack, boundary_smoothness, mean_jerk
from .ablation import ToyScale, make_config
from .data import (
    AgentStream,
    _bundle_for_window,
    build_windows,
    fit_norm_stats,
    load_agent_streams,
)

logger = logging.getLogger(__name__)

GESTURE_BLOCK = "gesture"
GESTURE_VQ_BLOCK = "gesture_vq"

SCRIPT_JOINTS = ("left_shoulder", "left_elbow", "left_wrist")


def scripted_gesture(n_frames: int, fps: float = 30.0, amplitude: float = 0.55) -> np.ndarray:
    """A deterministic one-arm raise outside the corpus gesture family.

    Slow (1 Hz) oscillation plus a sustained offset on the left-arm
    joints over an otherwise neutral pose; (n_frames, 258) raw features.
    """
    t = np.arange(n_frames) / fps
    pose = neutral_pose_6d(n_frames).reshape(n_frames, BODY_DIM)
    dims = body_dims_for_joints(SCRIPT_JOINTS)
    wave = amplitude * (0.6 + 0.4 * np.sin(2 * np.pi * 1.0 * t))
    ramp = np.minimum(1.0, np.minimum(t * fps, (n_frames - 1 - t * fps)) / (0.2 * fps + 1))
    profile = (wave * ramp)[:, None]
    pose[:, dims] += profile * np.linspace(1.0, 0.6, len(dims))[None, :]
    return pose


@dataclass
class GestureSystem:
    model: FlowModel
    stats: NormStats
    use_vq: bool
    p_drop: float
    vq: VQGestureModel | None = None


def train_gesture_system(
    manifest: CorpusManifest,
    root,
    p_drop: float,
    scale: ToyScale,
    seed: int,
    vocab: int = 64,
    use_vq: bool = False,
    codebook_size: int = 32,
) -> GestureSystem:
    streams = load_agent_streams(manifest, root, channel="body", split="train")
    if not streams:
        raise ConfigError("corpus has no train split")
    stats = fit_norm_stats(streams)
    dataset = build_windows(
        streams, stats, window=scale.window, stride=scale.stride, mode="dyadic",
        channel="body",
    )

    vq_model = None
    if use_vq:
        vq_model, _ = vq_fit(
            dataset.gesture_sources[: min(len(dataset.gesture_sources), 200)],
            codebook_size=codebook_size,
            seed=seed,
        )
        block = CondBlockSpec(GESTURE_VQ_BLOCK, "tokens", codebook_size + 1, scale.embed_dim)
    else:
        block = CondBlockSpec(GESTURE_BLOCK, "continuous", BODY_DIM, scale.embed_dim)

    config = make_config("dyadic", "body", scale, vocab, extra_blocks=(block,))
    torch.manual_seed(seed)  # parameter init is part of the seed contract
    model = FlowModel(config)

    # attach per-window gesture conditions (the normalized target motion
    # itself, or its VQ codes); temporal dropping happens per draw
    examples = []
    for (motion, bundle), raw in zip(dataset.examples, dataset.gesture_sources):
        if use_vq:
            codes = vq_model.encode(raw)
            examples.append((motion, bundle.with_block(GESTURE_VQ_BLOCK, codes)))
        else:
            examples.append((motion, bundle.with_block(GESTURE_BLOCK, motion.copy())))

    null_id = codebook_size if use_vq else None
    block_name = GESTURE_VQ_BLOCK if use_vq else GESTURE_BLOCK

    def drop_transform(motion, bundle, rng):
        dropped, _ = temporal_gesture_drop(
            bundle.blocks[block_name], p_drop, rng, null_id=null_id
        )
        return motion, bundle.replace_block(block_name, dropped)

    train(
        model,
        examples,
        TrainConfig(
            steps=scale.train_steps,
            batch_size=scale.batch_size,
            lr=scale.lr,
            condition_dropout=scale.condition_dropout,
            seed=seed,
            log_every=0,
        ),
        example_transform=drop_transform,
    )
    return GestureSystem(model=model, stats=stats, use_vq=use_vq, p_drop=p_drop, vq=vq_model)


@dataclass
class GestureEvalResult:
    condition: str
    p_drop: float
    smpl_l2: float
    keypoint_l2: float
    smoothness: float
    boundary_jerk: float


def evaluate_gesture_control(
    system: GestureSystem,
    streams: list[AgentStream],
    scale: ToyScale,
    seed: int,
    n_frames: int = 180,
    t_start: int = 60,
    t_end: int = 120,
    fps: float = 30.0,
) -> GestureEvalResult:
    """Plant the scripted gesture in [t_start, t_end) and score the output.

    Generated motion passes through the same Savitzky-Golay smoothing the
    feature pipeline applies to extractor outputs before keypoint-space
    metrics; desk-scale models leave frame-level noise that the
    third-difference jerk would otherwise amplify by fps^3.
    """
    if not streams:
        raise ConfigError("no evaluation streams")
    gesture_raw = scripted_gesture(t_end - t_start, fps=fps)
    model = system.model
    dtype = next(model.parameters()).dtype
    generator = torch.Generator().manual_seed(seed)

    smpl_errors, keypoint_errors, smooth_scores, jerks = [], [], [], []
    for stream in streams[: scale.max_eval_streams]:
        if stream.n_frames < n_frames:
            continue
        bundle = _bundle_for_window(stream, 0, n_frames, "dyadic", None)
        if system.use_vq:
            ids = np.full(n_frames, system.vq.null_id, dtype=np.int64)
            ids[t_start:t_end] = system.vq.encode(gesture_raw)
            bundle = bundle.with_block(GESTURE_VQ_BLOCK, ids)
        else:
            cond = np.zeros((n_frames, BODY_DIM))
            cond[t_start:t_end] = (gesture_raw - system.stats.mean) / system.stats.std
            bundle = bundle.with_block(GESTURE_BLOCK, cond)

        cond_batch = batch_bundles(model.config.cond, [bundle], dtype=dtype)
        z = sample_ode(
            model.velocity_closure(cond_batch),
            shape=(1, n_frames, BODY_DIM),
            steps=scale.sample_steps,
            cfg_weight=scale.cfg_weight,
            generator=generator,
            dtype=dtype,
        )[0].numpy()
        generated = z * system.stats.std + system.stats.mean
        generated = smooth_savgol(generated, window=9, polyorder=2)

        reference = generated.copy()
        reference[t_start:t_end] = gesture_raw
        smpl_errors.append(
            condition_following(generated, reference, t_start, t_end, space="smpl_params")
        )
        keypoint_errors.append(
            condition_following(generated, reference, t_start, t_end, space="keypoints")
        )
        keypoints = forward_kinematics(generated.reshape(-1, BODY_JOINTS, ROT6D))
        track = KeypointTrack(positions=keypoints, fps=fps)
        smooth_scores.append(
            boundary_smoothness(track, boundaries=[t_start, t_end], sigma=100.0, window=30)
        )
        jerks.append(
            np.mean(
                [mean_jerk(track.window(b - 15, b + 15)) for b in (t_start, t_end)]
            )
        )
    if not smpl_errors:
        raise ConfigError(f"no evaluation stream reaches {n_frames} frames")
    return GestureEvalResult(
        condition="VQ IDs" if system.use_vq else "SMPL-H",
        p_drop=system.p_drop,
        smpl_l2=float(np.mean(smpl_errors)),
        keypoint_l2=float(np.mean(keypoint_errors)),
        smoothness=float(np.mean(smooth_scores)),
        boundary_jerk=float(np.mean(jerks)),
    )


def run_gesture_control(
    manifest: CorpusManifest,
    root,
    settings: tuple[tuple[str, float], ...] = (
        ("smpl", 0.8),
        ("smpl", 0.6),
        ("smpl", 0.4),
        ("smpl", 0.2),
        ("vq", 0.4),
    ),
    seed: int = 0,
    scale: ToyScale = ToyScale(),
    vocab: int = 64,
) -> list[GestureEvalResult]:
    """Gesture-control comparison rows for the requested (kind, drop) settings."""
    test_streams = load_agent_streams(manifest, root, channel="body", split="test")
    results = []
    for kind, p_drop in settings:
        system = train_gesture_system(
            manifest, root, p_drop, scale, seed, vocab=vocab, use_vq=(kind == "vq")
        )
        result = evaluate_gesture_control(system, test_streams, scale, seed=seed + 500)
        logger.info(
            "%s drop %.1f: SMPL L2 %.4f keypoint L2 %.4f smoothness %.4g jerk %.1f",
            result.condition, p_drop, result.smpl_l2, result.keypoint_l2,
            result.smoothness, result.boundary_jerk,
        )
        results.append(result)
    return results
