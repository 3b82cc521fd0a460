"""Diagnostics for partner-speech coupling in a corpus.

The listener-response channel is the head rotation block of the face
features; its frame-to-frame dynamism is the "nod proxy". These helpers
quantify how strongly that channel depends on the partner's speech
activity: a plug-in mutual-information estimate and a two-sample test of
dynamism during partner speech versus partner silence.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats

from ..features.containers import HEAD_PITCH_INDEX
from .featurefile import read_feature_file
from .records import CorpusManifest


def load_features(root: str | Path, record, key: str) -> np.ndarray:
    """Read one channel of one interaction relative to the corpus root."""
    values, _ = read_feature_file(Path(root) / record.feature_refs[key])
    return values


def _pitch_dynamism(face: np.ndarray) -> np.ndarray:
    pitch = face[:, HEAD_PITCH_INDEX]
    d = np.abs(np.diff(pitch))
    return np.concatenate([[0.0], d])


def _partner_activity_frames(tokens: np.ndarray, n_frames: int) -> np.ndarray:
    # nearest-previous map from the 12.5 Hz token rate onto 30 fps frames
    idx = np.floor(np.arange(n_frames) * (12.5 / 30.0)).astype(int)
    idx = np.clip(idx, 0, len(tokens) - 1)
    return tokens[idx] != 0


def _collect(manifest: CorpusManifest, root: str | Path):
    """Pooled (dynamism, partner_active) frame pairs over both sides."""
    dynamism, active = [], []
    for rec in manifest.records:
        for face_key, partner_speech_key in (("face_a", "speech_b"), ("face_b", "speech_a")):
            if face_key not in rec.feature_refs or partner_speech_key not in rec.feature_refs:
                continue
            face = load_features(root, rec, face_key)
            tokens = load_features(root, rec, partner_speech_key)
            dyn = _pitch_dynamism(face)
            act = _partner_activity_frames(tokens, face.shape[0])
            dynamism.append(dyn)
            active.append(act)
    if not dynamism:
        return np.zeros(0), np.zeros(0, dtype=bool)
    return np.concatenate(dynamism), np.concatenate(active)


def plugin_mutual_information(x: np.ndarray, y: np.ndarray, bins: int = 8) -> float:
    """Plug-in MI (nats) between a continuous x (quantile-binned) and binary y."""
    if len(x) == 0:
        return 0.0
    edges = np.quantile(x, np.linspace(0, 1, bins + 1)[1:-1])
    xq = np.searchsorted(edges, x, side="right")
    joint = np.zeros((bins, 2))
    for value in (0, 1):
        counts = np.bincount(xq[y == bool(value)], minlength=bins)[:bins]
        joint[:, value] = counts
    joint /= joint.sum()
    px = joint.sum(axis=1, keepdims=True)
    py = joint.sum(axis=0, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = joint * np.log(joint / (px * py))
    return float(np.nansum(terms))


@dataclass
class CouplingReport:
    mutual_information_nats: float
    mean_dynamism_partner_talking: float
    mean_dynamism_partner_silent: float
    p_value: float
    n_frames: int

    @property
    def nod_delta(self) -> float:
        return self.mean_dynamism_partner_talking - self.mean_dynamism_partner_silent


def coupling_report(manifest: CorpusManifest, root: str | Path) -> CouplingReport:
    """Quantify listener head-pitch dependence on partner speech."""
    dyn, act = _collect(manifest, root)
    if len(dyn) == 0 or act.all() or not act.any():
        return CouplingReport(0.0, 0.0, 0.0, 1.0, len(dyn))
    talking = dyn[act]
    silent = dyn[~act]
    welch = stats.ttest_ind(talking, silent, equal_var=False, alternative="greater")
    return CouplingReport(
        mutual_information_nats=plugin_mutual_information(dyn, act),
        mean_dynamism_partner_talking=float(talking.mean()),
        mean_dynamism_partner_silent=float(silent.mean()),
        p_value=float(welch.pvalue),
        n_frames=len(dyn),
    )
