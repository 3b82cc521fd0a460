"""Domain records for the interaction corpus.

An interaction is a short (minutes-long) prompted exchange between two
participants, cut from an hour-long dyadic session. Records carry the
metadata needed downstream: identity, split assignment, relationship,
prompts with their interpersonal-stance anchors, durations, and
references to per-channel feature files.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import IntegrityError, SchemaError

PARTS = ("naturalistic", "improvised")

SPLITS = ("train", "dev", "test", "private")

RELATIONSHIPS = (
    "friends",
    "coworkers",
    "family-generic",
    "familiar-generic",
    "romantic",
    "classmates",
    "siblings",
    "parent/child",
    "neighbors",
    "roommates",
    "stranger",
)

INTERACTION_TYPES = (
    "ipc_conversation",
    "language_gesture",
    "collaborative_storytelling",
    "silent_charades",
)

# Interpersonal-circumplex octants: each stance is a combination of an
# agency level and a communion level. Codes follow the prompt metadata
# convention: <agency letter>..<communion letter> 4-char mnemonics.
IPC_OCTANTS = (
    "ANCM",  # high agency, moderate communion (confident/determined)
    "AMCP",  # moderate agency, high communion (sympathetic/cooperative)
    "APCN",  # high agency, low-moderate communion (decisive/assertive)
    "ALCM",  # low agency, moderate communion (timid/lazy)
    "AMCN",  # moderate agency, low communion (insensitive/impolite)
    "AHCH",  # high agency, high communion (outgoing/friendly)
    "AHCL",  # high agency, low communion (arrogant/aggressive)
    "ALCL",  # low agency, low communion (distant/inhibited)
)

ANNOTATION_KINDS = ("1P-IS", "1P-R", "3P-IS", "3P-R", "3P-V")

# The seven high-level quality-assurance review categories. Every QA
# source record must answer all of them.
QA_CATEGORIES = (
    "sensitive_material",
    "offensive_material",
    "participant_visibility",
    "audio_comprehension",
    "recording_artifacts",
    "audio_video_sync",
    "participant_engagement",
)

QA_SOURCES = ("human", "text_llm", "vlm")

QA_ANSWERS = ("yes", "no", "unsure")

# Categories whose "yes" answers force removal of the interaction.
QA_REMOVAL_CATEGORIES = ("sensitive_material", "offensive_material")

BFI2_TRAITS = (
    "agreeableness",
    "conscientiousness",
    "extraversion",
    "neuroticism",
    "openness",
)


@dataclass
class AnnotationRecord:
    """A moment-of-interest annotation attached to an interaction."""

    moi_start_s: float
    moi_end_s: float
    kind: str
    text: str
    target_participant: str

    def __post_init__(self):
        if self.kind not in ANNOTATION_KINDS:
            raise IntegrityError(
                f"unknown annotation kind {self.kind!r}; expected one of {ANNOTATION_KINDS}"
            )
        if not self.moi_end_s > self.moi_start_s:
            raise IntegrityError(
                f"moment of interest must have positive extent, got "
                f"[{self.moi_start_s}, {self.moi_end_s}]"
            )


@dataclass
class QaFlagSet:
    """One QA source's answers over the seven review categories."""

    source: str
    flags: dict[str, str]

    def __post_init__(self):
        if self.source not in QA_SOURCES:
            raise SchemaError(f"unknown QA source {self.source!r}")
        missing = [c for c in QA_CATEGORIES if c not in self.flags]
        if missing:
            raise SchemaError(f"QA source {self.source!r} missing categories: {missing}")
        bad = {c: v for c, v in self.flags.items() if v not in QA_ANSWERS}
        if bad:
            raise SchemaError(f"QA answers must be yes/no/unsure, got {bad}")


@dataclass
class InteractionRecord:
    """One corpus row: a prompted two-person interaction."""

    interaction_id: str
    session_id: str
    participant_a: str
    participant_b: str
    part: str
    split: str
    relationship: str
    interaction_type: str
    prompt_a: str
    prompt_b: str
    duration_s: float
    ipc_a: str | None = None
    ipc_b: str | None = None
    feature_refs: dict[str, str] = field(default_factory=dict)
    annotations: list[AnnotationRecord] = field(default_factory=list)
    extra: dict = field(default_factory=dict)  # unknown manifest fields, preserved

    def __post_init__(self):
        if self.part not in PARTS:
            raise IntegrityError(f"{self.interaction_id}: unknown part {self.part!r}")
        if self.split not in SPLITS:
            raise IntegrityError(f"{self.interaction_id}: unknown split {self.split!r}")
        if self.relationship not in RELATIONSHIPS:
            raise IntegrityError(
                f"{self.interaction_id}: unknown relationship {self.relationship!r}"
            )
        if self.interaction_type not in INTERACTION_TYPES:
            raise IntegrityError(
                f"{self.interaction_id}: unknown interaction_type {self.interaction_type!r}"
            )
        if not self.duration_s > 0:
            raise IntegrityError(
                f"{self.interaction_id}: duration_s must be positive, got {self.duration_s}"
            )
        if self.participant_a == self.participant_b:
            raise IntegrityError(
                f"{self.interaction_id}: participants must differ, both are "
                f"{self.participant_a!r}"
            )
        for name, code in (("ipc_a", self.ipc_a), ("ipc_b", self.ipc_b)):
            if code is not None and code not in IPC_OCTANTS:
                raise IntegrityError(
                    f"{self.interaction_id}: {name}={code!r} is not in the 8-octant "
                    f"vocabulary {IPC_OCTANTS}"
                )

    @property
    def participants(self) -> tuple[str, str]:
        return (self.participant_a, self.participant_b)


@dataclass
class ParticipantRecord:
    """Participant-level metadata; trait scores are optional."""

    participant_id: str
    bfi2: dict[str, float] | None = None
    demographics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.bfi2 is not None:
            unknown = set(self.bfi2) - set(BFI2_TRAITS)
            if unknown:
                raise SchemaError(
                    f"{self.participant_id}: unknown BFI-2 traits {sorted(unknown)}"
                )


@dataclass
class CorpusManifest:
    """All interaction records plus participant metadata."""

    records: list[InteractionRecord]
    participants: dict[str, ParticipantRecord] = field(default_factory=dict)

    def __post_init__(self):
        seen: set[str] = set()
        for rec in self.records:
            if rec.interaction_id in seen:
                raise IntegrityError(f"duplicate interaction_id {rec.interaction_id!r}")
            seen.add(rec.interaction_id)
        if self.participants:
            referenced = {p for rec in self.records for p in rec.participants}
            missing = referenced - set(self.participants)
            if missing:
                raise IntegrityError(
                    f"records reference participants absent from the participant "
                    f"table: {sorted(missing)[:5]}"
                )

    def __len__(self) -> int:
        return len(self.records)

    def participant_ids(self) -> set[str]:
        ids = {p for rec in self.records for p in rec.participants}
        ids.update(self.participants)
        return ids

    def subset(self, predicate) -> "CorpusManifest":
        kept = [r for r in self.records if predicate(r)]
        pids = {p for r in kept for p in r.participants}
        parts = {pid: rec for pid, rec in self.participants.items() if pid in pids}
        return CorpusManifest(records=kept, participants=parts)
