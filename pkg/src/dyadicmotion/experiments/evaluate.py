"""Evaluation of generation directories against ground truth.

A generation directory holds feature files named
``<interaction_id>.<side>.<channel>.bin`` produced by the sampling
command. The evaluator pools generated frames against the matching
ground-truth streams and reports FFD (face), FGD (body), and body
diversity; externally backed metrics (FID, lip sync) appear when a
plugin is registered and as "unavailable" otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..corpus.featurefile import read_feature_file, write_feature_file
from ..corpus.records import CorpusManifest
from ..errors import ConfigError
from ..features.containers import FACE_DIM
from ..metrics.diversity import diversity
from ..metrics.frechet import frechet_distance
from ..metrics.plugins import KNOWN_EXTERNAL_METRICS, get_metric
from .data import AgentStream, load_agent_streams


def write_generation(
    out_dir: str | Path,
    interaction_id: str,
    side: str,
    channel: str,
    values: np.ndarray,
    fps: float = 30.0,
) -> Path:
    out_dir = Path(out_dir)
    path = out_dir / f"{interaction_id}.{side}.{channel}.bin"
    return write_feature_file(path, values, channel=channel, fps=fps)


def read_generation_dir(gen_dir: str | Path) -> dict[tuple[str, str, str], np.ndarray]:
    """(interaction_id, side, channel) -> generated features."""
    gen_dir = Path(gen_dir)
    out = {}
    for path in sorted(gen_dir.glob("*.bin")):
        parts = path.stem.split(".")
        if len(parts) != 3:
            continue
        interaction_id, side, channel = parts
        values, _ = read_feature_file(path)
        out[(interaction_id, side, channel)] = values
    if not out:
        raise ConfigError(f"no generation files found under {gen_dir}")
    return out


@dataclass
class EvalReport:
    face_ffd: float | None = None
    body_fgd: float | None = None
    body_diversity: float | None = None
    n_sequences: int = 0
    n_frames: int = 0
    external: dict[str, float | None] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "face_ffd": self.face_ffd,
            "body_fgd": self.body_fgd,
            "body_diversity": self.body_diversity,
            "n_sequences": self.n_sequences,
            "n_frames": self.n_frames,
            "external": self.external,
        }


def _match_streams(
    generated: dict[tuple[str, str, str], np.ndarray],
    streams: list[AgentStream],
    channel: str,
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    by_key = {(s.interaction_id, s.side): s for s in streams}
    gen_list, gt_list = [], []
    for (interaction_id, side, chan), values in generated.items():
        if chan != channel:
            continue
        stream = by_key.get((interaction_id, side))
        if stream is None:
            continue
        n = min(values.shape[0], stream.n_frames)
        gen_list.append(values[:n])
        gt_list.append(stream.motion[:n])
    return gen_list, gt_list


def evaluate_generation(
    gen_dir: str | Path,
    manifest: CorpusManifest,
    corpus_root: str | Path,
    split: str = "test",
) -> EvalReport:
    generated = read_generation_dir(gen_dir)
    report = EvalReport()

    face_streams = load_agent_streams(manifest, corpus_root, channel="face", split=split)
    gen_faces, gt_faces = _match_streams(generated, face_streams, "face")
    joint_present = any(chan == "joint" for (_, _, chan) in generated)
    if joint_present:
        joint_streams = load_agent_streams(manifest, corpus_root, channel="joint", split=split)
        gen_joint, gt_joint = _match_streams(generated, joint_streams, "joint")
        gen_faces += [g[:, :FACE_DIM] for g in gen_joint]
        gt_faces += [g[:, :FACE_DIM] for g in gt_joint]
        gen_bodies = [g[:, FACE_DIM:] for g in gen_joint]
        gt_bodies = [g[:, FACE_DIM:] for g in gt_joint]
    else:
        body_streams = load_agent_streams(manifest, corpus_root, channel="body", split=split)
        gen_bodies, gt_bodies = _match_streams(generated, body_streams, "body")

    sequences = 0
    frames = 0
    if gen_faces:
        report.face_ffd = frechet_distance(
            np.concatenate(gen_faces), np.concatenate(gt_faces)
        )
        sequences += len(gen_faces)
        frames += int(sum(g.shape[0] for g in gen_faces))
    if len(gen_bodies) >= 2:
        report.body_fgd = frechet_distance(
            np.concatenate(gen_bodies), np.concatenate(gt_bodies)
        )
        report.body_diversity = diversity(
            gen_bodies, pairs=max(1, min(10, len(gen_bodies) // 2)), seed=0
        )
        sequences += len(gen_bodies)
        frames += int(sum(g.shape[0] for g in gen_bodies))
    report.n_sequences = sequences
    report.n_frames = frames

    for name in KNOWN_EXTERNAL_METRICS:
        plugin = get_metric(name)
        if plugin is None:
            report.external[name] = None
        else:
            report.external[name] = float(plugin(gen_faces, gt_faces))
    return report
