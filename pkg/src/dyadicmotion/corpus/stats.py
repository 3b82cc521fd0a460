"""Corpus statistics tables.

Each table row carries hours, interaction/session/participant/prompt
counts. Rows are produced overall and per part, per (part, split), per
relationship, and per interaction type, mirroring the standard corpus
summary tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .records import CorpusManifest, InteractionRecord


@dataclass
class StatsRow:
    hours: float = 0.0
    interactions: int = 0
    sessions: int = 0
    participants: int = 0
    prompts: int = 0

    # set unions, kept so rows stay additive across disjoint manifests
    _session_ids: set = field(default_factory=set, repr=False)
    _participant_ids: set = field(default_factory=set, repr=False)
    _prompt_texts: set = field(default_factory=set, repr=False)

    def add(self, rec: InteractionRecord) -> None:
        self.hours += rec.duration_s / 3600.0
        self.interactions += 1
        self._session_ids.add(rec.session_id)
        self._participant_ids.update(rec.participants)
        self._prompt_texts.update(t for t in (rec.prompt_a, rec.prompt_b) if t)
        self._refresh()

    def merge(self, other: "StatsRow") -> "StatsRow":
        out = StatsRow()
        out.hours = self.hours + other.hours
        out.interactions = self.interactions + other.interactions
        out._session_ids = self._session_ids | other._session_ids
        out._participant_ids = self._participant_ids | other._participant_ids
        out._prompt_texts = self._prompt_texts | other._prompt_texts
        out._refresh()
        return out

    def _refresh(self) -> None:
        self.sessions = len(self._session_ids)
        self.participants = len(self._participant_ids)
        self.prompts = len(self._prompt_texts)

    def as_dict(self) -> dict:
        return {
            "hours": round(self.hours, 2),
            "interactions": self.interactions,
            "sessions": self.sessions,
            "participants": self.participants,
            "prompts": self.prompts,
        }


@dataclass
class CorpusStats:
    overall: StatsRow
    by_part: dict[str, StatsRow]
    by_part_split: dict[tuple[str, str], StatsRow]
    by_relationship: dict[str, StatsRow]
    by_interaction_type: dict[str, StatsRow]

    def merge(self, other: "CorpusStats") -> "CorpusStats":
        def merge_maps(a: dict, b: dict) -> dict:
            out = {}
            for key in set(a) | set(b):
                row_a = a.get(key, StatsRow())
                row_b = b.get(key, StatsRow())
                out[key] = row_a.merge(row_b)
            return out

        return CorpusStats(
            overall=self.overall.merge(other.overall),
            by_part=merge_maps(self.by_part, other.by_part),
            by_part_split=merge_maps(self.by_part_split, other.by_part_split),
            by_relationship=merge_maps(self.by_relationship, other.by_relationship),
            by_interaction_type=merge_maps(
                self.by_interaction_type, other.by_interaction_type
            ),
        )


def compute_stats(manifest: CorpusManifest) -> CorpusStats:
    overall = StatsRow()
    by_part: dict[str, StatsRow] = {}
    by_part_split: dict[tuple[str, str], StatsRow] = {}
    by_relationship: dict[str, StatsRow] = {}
    by_interaction_type: dict[str, StatsRow] = {}

    for rec in manifest.records:
        overall.add(rec)
        by_part.setdefault(rec.part, StatsRow()).add(rec)
        by_part_split.setdefault((rec.part, rec.split), StatsRow()).add(rec)
        by_relationship.setdefault(rec.relationship, StatsRow()).add(rec)
        by_interaction_type.setdefault(rec.interaction_type, StatsRow()).add(rec)

    return CorpusStats(
        overall=overall,
        by_part=by_part,
        by_part_split=by_part_split,
        by_relationship=by_relationship,
        by_interaction_type=by_interaction_type,
    )
