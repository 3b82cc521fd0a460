"""Training/generation harness and the conditioning ablations.

The headline comparison trains otherwise-identical face models with
monadic (own speech only) and dyadic (both channels) conditioning on a
coupled synthetic corpus and scores each against held-out listener
motion: the Frechet distance over frames where the partner is speaking.
That is exactly the regime where partner-speech conditioning carries
information a monadic model cannot recover.

``run_condition_ablation`` produces the six-system table (three cascaded
systems, three joint systems) with face/body metrics per seeded
generation run.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import torch

from ..conditioning.bundle import ConditionBundle
from ..conditioning.cascade import (
    STAGE_COND_BLOCK,
    CascadeSpec,
    stage1_to_condition,
    stage_block_spec,
)
from ..conditioning.encoder import batch_bundles, spec_for_mode
from ..corpus.records import CorpusManifest
from ..errors import ConfigError
from ..features.containers import FACE_DIM
from ..features.processing import NormStats
from ..flowmatch.dit import FlowModelConfig
from ..flowmatch.model import FlowModel
from ..flowmatch.sampler import sample_ode
from ..flowmatch.training import TrainConfig, train
from ..metrics.diversity import diversity
from ..metrics.frechet import frechet_distance
from .data import (
    AgentStream,
    WindowedDataset,
    _bundle_for_window,
    build_windows,
    fit_norm_stats,
    load_agent_streams,
)

logger = logging.getLogger(__name__)

CHANNEL_DIMS = {"face": 137, "body": 258, "joint": 395}


@dataclass
class ToyScale:
    """Desk-scale sizing knobs shared by the experiment harnesses."""

    window: int = 60
    stride: int = 30
    layers: int = 2
    hidden_dim: int = 64
    ffn_dim: int = 128
    heads: int = 4
    attention: str = "self"
    embed_dim: int = 32
    train_steps: int = 1200
    batch_size: int = 16
    lr: float = 1e-3
    condition_dropout: float = 0.2
    sample_steps: int = 100
    cfg_weight: float = 1.5
    max_eval_frames: int = 240
    max_eval_streams: int = 12


@dataclass
class TrainedSystem:
    model: FlowModel
    stats: NormStats
    mode: str
    channel: str
    visual_stats: NormStats | None = None


def save_system(path, system: TrainedSystem):
    """Checkpoint a trained system with its normalization statistics."""
    from ..flowmatch.checkpoint import save_checkpoint

    config = {
        "flow": system.model.config.to_dict(),
        "mode": system.mode,
        "channel": system.channel,
        "stats_mean": system.stats.mean.tolist(),
        "stats_std": system.stats.std.tolist(),
        "visual_stats": system.visual_stats is not None,
    }
    return save_checkpoint(path, config, system.model.state_dict())


def load_system(path) -> TrainedSystem:
    from ..flowmatch.checkpoint import load_checkpoint

    config, state_dict = load_checkpoint(path)
    flow_config = FlowModelConfig.from_dict(config["flow"])
    model = FlowModel(flow_config)
    model.load_state_dict(state_dict)
    model.eval()
    stats = NormStats(
        mean=np.asarray(config["stats_mean"]), std=np.asarray(config["stats_std"])
    )
    return TrainedSystem(
        model=model,
        stats=stats,
        mode=config["mode"],
        channel=config["channel"],
        visual_stats=stats if config.get("visual_stats") else None,
    )


def make_config(
    mode: str,
    channel: str,
    scale: ToyScale,
    vocab: int,
    extra_blocks: tuple = (),
    attention: str | None = None,
) -> FlowModelConfig:
    visual_dim = CHANNEL_DIMS[channel] if mode == "av_dyadic" else 0
    spec = spec_for_mode(
        mode,
        speech_vocab=vocab,
        visual_dim=visual_dim,
        control_blocks=tuple(extra_blocks),
        speech_embed_dim=scale.embed_dim,
    )
    return FlowModelConfig(
        motion_dim=CHANNEL_DIMS[channel],
        cond=spec,
        layers=scale.layers,
        hidden_dim=scale.hidden_dim,
        ffn_dim=scale.ffn_dim,
        heads=scale.heads,
        attention=attention or scale.attention,
    )


def train_system(
    manifest: CorpusManifest,
    root,
    mode: str,
    channel: str,
    scale: ToyScale,
    seed: int,
    vocab: int,
    stage_cascade: CascadeSpec | None = None,
    train_split: str = "train",
) -> TrainedSystem:
    """Train one flow model; with ``stage_cascade`` set, the model is the
    cascade's second stage, teacher-forced on ground-truth stage-1 motion."""
    streams = load_agent_streams(manifest, root, channel=channel, split=train_split)
    if not streams:
        raise ConfigError(f"no {train_split!r} streams in the corpus")
    stats = fit_norm_stats(streams)
    visual_stats = stats if mode == "av_dyadic" else None
    dataset = build_windows(
        streams, stats, window=scale.window, stride=scale.stride, mode=mode,
        channel=channel, visual_stats=visual_stats,
    )

    extra_blocks: tuple = ()
    if stage_cascade is not None:
        extra_blocks = (stage_block_spec(stage_cascade.order, stage_cascade.face_cond_variant, scale.embed_dim),)
    config = make_config(mode, channel, scale, vocab, extra_blocks=extra_blocks)
    torch.manual_seed(seed)  # parameter init must be part of the seed contract
    model = FlowModel(config)

    examples = dataset.examples
    if stage_cascade is not None:
        stage_channel = "face" if stage_cascade.order == "face2body" else "body"
        stage_streams = load_agent_streams(manifest, root, channel=stage_channel, split=train_split)
        stage_stats = fit_norm_stats(stage_streams)
        stage_data = build_windows(
            stage_streams, stage_stats, window=scale.window, stride=scale.stride,
            mode=mode, channel=stage_channel, visual_stats=stage_stats if mode == "av_dyadic" else None,
        )
        if len(stage_data.examples) != len(examples):
            raise ConfigError("cascade stages produced misaligned window sets")
        merged = []
        for (motion, bundle), (stage_motion, _) in zip(examples, stage_data.examples):
            cond_values = stage1_to_condition(stage_cascade, np.asarray(stage_motion, dtype=np.float64))
            merged.append((motion, bundle.with_block(STAGE_COND_BLOCK, cond_values)))
        examples = merged

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
    )
    return TrainedSystem(model=model, stats=stats, mode=mode, channel=channel, visual_stats=visual_stats)


def _eval_bundle(stream: AgentStream, n: int, system: TrainedSystem) -> ConditionBundle:
    return _bundle_for_window(stream, 0, n, system.mode, system.visual_stats)


def generate_streams(
    system: TrainedSystem,
    streams: list[AgentStream],
    scale: ToyScale,
    seed: int,
    stage1: TrainedSystem | None = None,
    cascade: CascadeSpec | None = None,
    stage1_streams: list[AgentStream] | None = None,
) -> list[np.ndarray]:
    """Sample denormalized motion for each test stream (full length, capped).

    For cascades, ``stage1_streams`` supplies the stage-1 channel's view of
    the same interactions (index-aligned with ``streams``); stage-1
    conditions, including its visual block, must live in that channel's
    feature space.
    """
    outputs = []
    generator = torch.Generator().manual_seed(seed)
    model = system.model
    dtype = next(model.parameters()).dtype
    for idx, stream in enumerate(streams[: scale.max_eval_streams]):
        n = min(stream.n_frames, scale.max_eval_frames)
        bundle = _eval_bundle(stream, n, system)
        if cascade is not None:
            if stage1 is None:
                raise ConfigError("cascaded generation needs the stage-1 system")
            source = stage1_streams[idx] if stage1_streams is not None else stream
            if (source.interaction_id, source.side) != (stream.interaction_id, stream.side):
                raise ConfigError("stage-1 streams are not aligned with stage-2 streams")
            stage_bundle = _eval_bundle(source, n, stage1)
            cond1 = batch_bundles(stage1.model.config.cond, [stage_bundle], dtype=dtype)
            out1 = sample_ode(
                stage1.model.velocity_closure(cond1),
                shape=(1, n, stage1.model.config.motion_dim),
                steps=scale.sample_steps,
                cfg_weight=scale.cfg_weight,
                generator=generator,
                dtype=dtype,
            )[0].numpy()
            bundle = bundle.with_block(
                STAGE_COND_BLOCK, stage1_to_condition(cascade, out1)
            )
        cond = batch_bundles(model.config.cond, [bundle], dtype=dtype)
        z = sample_ode(
            model.velocity_closure(cond),
            shape=(1, n, model.config.motion_dim),
            steps=scale.sample_steps,
            cfg_weight=scale.cfg_weight,
            generator=generator,
            dtype=dtype,
        )[0].numpy()
        outputs.append(z * system.stats.std + system.stats.mean)
    return outputs


def listener_ffd(
    generated: list[np.ndarray],
    streams: list[AgentStream],
    face_dims: slice = slice(0, FACE_DIM),
) -> float:
    """FFD restricted to frames where the partner is speaking."""
    gen_rows, gt_rows = [], []
    for gen, stream in zip(generated, streams):
        n = gen.shape[0]
        active = stream.partner_active[:n]
        if active.any():
            gen_rows.append(gen[active][:, face_dims])
            gt_rows.append(stream.motion[:n][active][:, face_dims])
    if not gen_rows:
        raise ConfigError("no listening frames found in the evaluation streams")
    return frechet_distance(np.concatenate(gen_rows), np.concatenate(gt_rows))


@dataclass
class DyadicAblationRun:
    seed: int
    monadic_ffd: float
    dyadic_ffd: float

    @property
    def dyadic_wins(self) -> bool:
        return self.dyadic_ffd < self.monadic_ffd


def run_dyadic_ablation(
    manifest: CorpusManifest,
    root,
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4),
    scale: ToyScale = ToyScale(),
    vocab: int = 64,
    gen_repeats: int = 2,
) -> list[DyadicAblationRun]:
    """Train monadic vs dyadic face models per seed; listener FFD on test.

    Both models of a seed consume identical batch orderings and noise
    draws, so the comparison isolates the conditioning. The reported FFD
    averages ``gen_repeats`` seeded generation passes to damp sampler
    noise.
    """
    test_streams = load_agent_streams(manifest, root, channel="face", split="test")
    if not test_streams:
        raise ConfigError("corpus has no test split")
    runs = []
    for seed in seeds:
        monadic = train_system(manifest, root, "monadic", "face", scale, seed, vocab)
        dyadic = train_system(manifest, root, "dyadic", "face", scale, seed, vocab)
        ffd_m, ffd_d = [], []
        for rep in range(gen_repeats):
            gen_seed = seed + 10_000 + rep
            gen_m = generate_streams(monadic, test_streams, scale, seed=gen_seed)
            gen_d = generate_streams(dyadic, test_streams, scale, seed=gen_seed)
            ffd_m.append(listener_ffd(gen_m, test_streams))
            ffd_d.append(listener_ffd(gen_d, test_streams))
        run = DyadicAblationRun(
            seed=seed,
            monadic_ffd=float(np.mean(ffd_m)),
            dyadic_ffd=float(np.mean(ffd_d)),
        )
        logger.info(
            "seed %d: monadic FFD %.4f dyadic FFD %.4f", seed, run.monadic_ffd, run.dyadic_ffd
        )
        runs.append(run)
    return runs


@dataclass
class SystemRow:
    system: str
    condition: str
    face_ffd: tuple[float, float] | None  # (mean, std) over runs
    body_fgd: tuple[float, float] | None
    body_diversity: tuple[float, float] | None
    unavailable: tuple[str, ...] = ("sync_c", "sync_d", "fid")


@dataclass
class ConditionAblation:
    rows: list[SystemRow] = field(default_factory=list)


def _mean_std(values: list[float]) -> tuple[float, float]:
    arr = np.asarray(values)
    return float(arr.mean()), float(arr.std(ddof=1)) if len(arr) > 1 else 0.0


def run_condition_ablation(
    manifest: CorpusManifest,
    root,
    seed: int = 0,
    runs: int = 5,
    scale: ToyScale = ToyScale(),
    vocab: int = 64,
) -> ConditionAblation:
    """Six-system table: cascaded and joint models under the three condition sets."""
    systems = [
        ("Dyadic Face2Body", "A1+A2", "dyadic", "face2body"),
        ("AV Dyadic Face2Body", "A1+A2+V2", "av_dyadic", "face2body"),
        ("Dyadic Body2Face", "A1+A2", "dyadic", "body2face"),
        ("Monadic Face+Body", "A1", "monadic", "joint"),
        ("Dyadic Face+Body", "A1+A2", "dyadic", "joint"),
        ("AV Dyadic Face+Body", "A1+A2+V2", "av_dyadic", "joint"),
    ]
    face_streams = load_agent_streams(manifest, root, channel="face", split="test")
    body_streams = load_agent_streams(manifest, root, channel="body", split="test")
    joint_streams = load_agent_streams(manifest, root, channel="joint", split="test")

    table = ConditionAblation()
    for name, condition, mode, pipeline in systems:
        ffds, fgds, divs = [], [], []
        if pipeline == "joint":
            system = train_system(manifest, root, mode, "joint", scale, seed, vocab)
            for run_idx in range(runs):
                gen = generate_streams(system, joint_streams, scale, seed=seed + 100 + run_idx)
                faces = [g[:, :FACE_DIM] for g in gen]
                bodies = [g[:, FACE_DIM:] for g in gen]
                ffds.append(_ffd_vs_gt(faces, joint_streams, slice(0, FACE_DIM)))
                fgds.append(_ffd_vs_gt(bodies, joint_streams, slice(FACE_DIM, None)))
                divs.append(diversity(bodies, pairs=max(1, min(10, len(bodies) // 2)), seed=run_idx))
        else:
            cascade = CascadeSpec(order=pipeline, face_cond_variant="full_imitator")
            first_channel = "face" if pipeline == "face2body" else "body"
            second_channel = "body" if pipeline == "face2body" else "face"
            stage1 = train_system(manifest, root, mode, first_channel, scale, seed, vocab)
            stage2 = train_system(
                manifest, root, mode, second_channel, scale, seed + 1, vocab, stage_cascade=cascade
            )
            first_streams = face_streams if pipeline == "face2body" else body_streams
            second_streams = body_streams if pipeline == "face2body" else face_streams
            for run_idx in range(runs):
                run_seed = seed + 100 + run_idx
                gen1 = generate_streams(stage1, first_streams, scale, seed=run_seed)
                gen2 = generate_streams(
                    stage2, second_streams, scale, seed=run_seed,
                    stage1=stage1, cascade=cascade, stage1_streams=first_streams,
                )
                faces = gen1 if pipeline == "face2body" else gen2
                bodies = gen2 if pipeline == "face2body" else gen1
                ffds.append(_ffd_vs_gt(faces, face_streams, slice(None)))
                fgds.append(_ffd_vs_gt(bodies, body_streams, slice(None)))
                divs.append(diversity(bodies, pairs=max(1, min(10, len(bodies) // 2)), seed=run_idx))
        table.rows.append(
            SystemRow(
                system=name,
                condition=condition,
                face_ffd=_mean_std(ffds),
                body_fgd=_mean_std(fgds),
                body_diversity=_mean_std(divs),
            )
        )
        logger.info("%s done: FFD %.3f FGD %.3f", name, table.rows[-1].face_ffd[0], table.rows[-1].body_fgd[0])
    return table


def _ffd_vs_gt(generated: list[np.ndarray], streams: list[AgentStream], dims: slice) -> float:
    """FFD of (possibly pre-sliced) generated frames vs the GT dims slice."""
    gen = np.concatenate(generated)
    gt = np.concatenate(
        [s.motion[: g.shape[0]][:, dims] for g, s in zip(generated, streams)]
    )
    return frechet_distance(gen, gt)
