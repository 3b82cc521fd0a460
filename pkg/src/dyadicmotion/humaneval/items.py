"""Study item construction.

One item per (sample, unordered system pair): n samples with k systems
yield n * k * (k-1) / 2 items. Left/right placement is randomized per
item from a recorded seed so the raw assignment can be reconstructed;
the canonical pair identity is always the lexicographic ordering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ..errors import ConfigError
from .protocols import PROTOCOL_IDS


@dataclass
class SampleRef:
    """One test segment with its anchor media and per-system candidate media."""

    sample_id: str
    anchor_media: str = ""
    candidate_media: dict[str, str] = field(default_factory=dict)  # system -> path
    vad_segments: list[dict] = field(default_factory=list)  # {channel, start_s, end_s}


@dataclass
class StudyItem:
    item_id: str
    sample_id: str
    protocol: str
    system_left: str
    system_right: str
    anchor_media: str = ""
    candidate_left_media: str = ""
    candidate_right_media: str = ""
    vad_segments: list[dict] = field(default_factory=list)

    def __post_init__(self):
        if self.protocol not in PROTOCOL_IDS:
            raise ConfigError(f"unknown protocol {self.protocol!r}")
        if self.system_left == self.system_right:
            raise ConfigError(f"{self.item_id}: left and right systems are equal")

    @property
    def canonical_pair(self) -> tuple[str, str]:
        return tuple(sorted((self.system_left, self.system_right)))

    @property
    def swapped(self) -> bool:
        """True when the canonical first system sits on the right."""
        return self.system_left != self.canonical_pair[0]

    def to_dict(self) -> dict:
        return {
            "item_id": self.item_id,
            "sample_id": self.sample_id,
            "protocol": self.protocol,
            "system_left": self.system_left,
            "system_right": self.system_right,
            "anchor_media": self.anchor_media,
            "candidate_left_media": self.candidate_left_media,
            "candidate_right_media": self.candidate_right_media,
            "vad_segments": self.vad_segments,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "StudyItem":
        return cls(**obj)


def build_items(
    samples: list[SampleRef],
    systems: list[str],
    protocol: str = "face_dyadic",
    ratings_per_item: int = 5,
    seed: int = 0,
) -> list[StudyItem]:
    """One randomized-orientation item per sample per unordered system pair."""
    if len(systems) < 2:
        raise ConfigError("need at least 2 systems to compare")
    if len(set(systems)) != len(systems):
        raise ConfigError(f"duplicate system ids: {systems}")
    if not samples:
        raise ConfigError("need at least one sample")
    if ratings_per_item < 1:
        raise ConfigError("ratings_per_item must be >= 1")

    rng = np.random.default_rng(seed)
    items: list[StudyItem] = []
    for sample in samples:
        for sys_a, sys_b in combinations(sorted(systems), 2):
            left, right = (sys_a, sys_b) if rng.random() < 0.5 else (sys_b, sys_a)
            items.append(
                StudyItem(
                    item_id=f"{sample.sample_id}__{sys_a}__{sys_b}",
                    sample_id=sample.sample_id,
                    protocol=protocol,
                    system_left=left,
                    system_right=right,
                    anchor_media=sample.anchor_media,
                    candidate_left_media=sample.candidate_media.get(left, ""),
                    candidate_right_media=sample.candidate_media.get(right, ""),
                    vad_segments=list(sample.vad_segments),
                )
            )
    return items
