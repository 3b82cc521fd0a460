"""Participant-level split validation.

Splits are disjoint at the level of participants, separately within each
corpus part: a participant may appear in exactly one of
train/dev/test/private within the naturalistic part and in exactly one
split within the improvised part. Appearing in different splits across
parts is allowed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .records import CorpusManifest


@dataclass
class SplitViolation:
    participant_id: str
    part: str
    splits: tuple[str, ...]


@dataclass
class SplitReport:
    violations: list[SplitViolation] = field(default_factory=list)
    suspect_durations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_splits(
    manifest: CorpusManifest,
    min_duration_s: float = 5.0,
    max_duration_s: float = 1200.0,
) -> SplitReport:
    """Report every participant that appears in more than one split within a part.

    Also lists interactions with durations outside the plausible
    [min_duration_s, max_duration_s] band; manual time-stamping is known
    to misalign a fraction of interactions, and the validator reports
    rather than corrects them.
    """
    seen: dict[tuple[str, str], set[str]] = {}
    for rec in manifest.records:
        for pid in rec.participants:
            seen.setdefault((pid, rec.part), set()).add(rec.split)

    violations = [
        SplitViolation(participant_id=pid, part=part, splits=tuple(sorted(splits)))
        for (pid, part), splits in sorted(seen.items())
        if len(splits) > 1
    ]
    suspect = [
        rec.interaction_id
        for rec in manifest.records
        if not (min_duration_s <= rec.duration_s <= max_duration_s)
    ]
    return SplitReport(violations=violations, suspect_durations=suspect)
