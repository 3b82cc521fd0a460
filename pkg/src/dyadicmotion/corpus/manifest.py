"""Manifest ingestion and serialization.

A corpus lives in a directory containing ``interactions.jsonl`` (one
interaction record per line, UTF-8) plus an optional
``participants.jsonl`` with participant metadata. Line-delimited records
keep the manifest greppable, streamable, and diff-friendly.

``load_manifest`` also accepts a direct path to the interactions file.
Unknown fields on a line are preserved verbatim in ``record.extra`` and
round-trip through ``save_manifest``.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..errors import ParseError
from .records import (
    AnnotationRecord,
    CorpusManifest,
    InteractionRecord,
    ParticipantRecord,
)

INTERACTIONS_FILENAME = "interactions.jsonl"
PARTICIPANTS_FILENAME = "participants.jsonl"

_INTERACTION_FIELDS = {
    "interaction_id",
    "session_id",
    "participant_a",
    "participant_b",
    "part",
    "split",
    "relationship",
    "interaction_type",
    "prompt_a",
    "prompt_b",
    "duration_s",
    "ipc_a",
    "ipc_b",
    "feature_refs",
    "annotations",
}

_REQUIRED_FIELDS = (
    "interaction_id",
    "session_id",
    "participant_a",
    "participant_b",
    "part",
    "split",
    "relationship",
    "interaction_type",
    "prompt_a",
    "prompt_b",
    "duration_s",
)


def _record_from_obj(obj: dict, line_number: int) -> InteractionRecord:
    missing = [f for f in _REQUIRED_FIELDS if f not in obj]
    if missing:
        raise ParseError(f"missing required fields {missing}", line_number)
    annotations = [
        AnnotationRecord(
            moi_start_s=a["moi_start_s"],
            moi_end_s=a["moi_end_s"],
            kind=a["kind"],
            text=a.get("text", ""),
            target_participant=a.get("target_participant", ""),
        )
        for a in obj.get("annotations", [])
    ]
    extra = {k: v for k, v in obj.items() if k not in _INTERACTION_FIELDS}
    return InteractionRecord(
        interaction_id=obj["interaction_id"],
        session_id=obj["session_id"],
        participant_a=obj["participant_a"],
        participant_b=obj["participant_b"],
        part=obj["part"],
        split=obj["split"],
        relationship=obj["relationship"],
        interaction_type=obj["interaction_type"],
        prompt_a=obj["prompt_a"],
        prompt_b=obj["prompt_b"],
        duration_s=float(obj["duration_s"]),
        ipc_a=obj.get("ipc_a"),
        ipc_b=obj.get("ipc_b"),
        feature_refs=dict(obj.get("feature_refs", {})),
        annotations=annotations,
        extra=extra,
    )


def _record_to_obj(rec: InteractionRecord) -> dict:
    obj = {
        "interaction_id": rec.interaction_id,
        "session_id": rec.session_id,
        "participant_a": rec.participant_a,
        "participant_b": rec.participant_b,
        "part": rec.part,
        "split": rec.split,
        "relationship": rec.relationship,
        "interaction_type": rec.interaction_type,
        "prompt_a": rec.prompt_a,
        "prompt_b": rec.prompt_b,
        "duration_s": rec.duration_s,
    }
    if rec.ipc_a is not None:
        obj["ipc_a"] = rec.ipc_a
    if rec.ipc_b is not None:
        obj["ipc_b"] = rec.ipc_b
    if rec.feature_refs:
        obj["feature_refs"] = rec.feature_refs
    if rec.annotations:
        obj["annotations"] = [
            {
                "moi_start_s": a.moi_start_s,
                "moi_end_s": a.moi_end_s,
                "kind": a.kind,
                "text": a.text,
                "target_participant": a.target_participant,
            }
            for a in rec.annotations
        ]
    obj.update(rec.extra)
    return obj


def _iter_json_lines(path: Path):
    with path.open("r", encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc.msg}", i) from exc
            if not isinstance(obj, dict):
                raise ParseError("record line must be a JSON object", i)
            yield i, obj


def load_manifest(path: str | Path) -> CorpusManifest:
    """Load and validate a corpus manifest.

    ``path`` may be a corpus directory or the interactions file itself.
    """
    path = Path(path)
    if path.is_dir():
        interactions_path = path / INTERACTIONS_FILENAME
        participants_path = path / PARTICIPANTS_FILENAME
    else:
        interactions_path = path
        participants_path = path.parent / PARTICIPANTS_FILENAME
    if not interactions_path.exists():
        raise ParseError(f"manifest not found: {interactions_path}")

    records = [_record_from_obj(obj, i) for i, obj in _iter_json_lines(interactions_path)]

    participants: dict[str, ParticipantRecord] = {}
    if participants_path.exists():
        for i, obj in _iter_json_lines(participants_path):
            if "participant_id" not in obj:
                raise ParseError("participant line missing participant_id", i)
            rec = ParticipantRecord(
                participant_id=obj["participant_id"],
                bfi2=obj.get("bfi2"),
                demographics=obj.get("demographics", {}),
            )
            participants[rec.participant_id] = rec

    return CorpusManifest(records=records, participants=participants)


def save_manifest(manifest: CorpusManifest, directory: str | Path) -> Path:
    """Write a manifest into ``directory``; returns the interactions path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    interactions_path = directory / INTERACTIONS_FILENAME
    with interactions_path.open("w", encoding="utf-8") as fh:
        for rec in manifest.records:
            fh.write(json.dumps(_record_to_obj(rec), sort_keys=True) + "\n")
    if manifest.participants:
        with (directory / PARTICIPANTS_FILENAME).open("w", encoding="utf-8") as fh:
            for pid in sorted(manifest.participants):
                p = manifest.participants[pid]
                obj: dict = {"participant_id": p.participant_id}
                if p.bfi2 is not None:
                    obj["bfi2"] = p.bfi2
                if p.demographics:
                    obj["demographics"] = p.demographics
                fh.write(json.dumps(obj, sort_keys=True) + "\n")
    return interactions_path
