"""Append-only event log for the rating service.

Ratings, flags, and rater registrations persist as one JSON object per
line. Aggregates are always derived by replay, never stored as truth;
replaying the log reconstructs the exact same study state.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ParseError, ValidationError
from .protocols import FLAG_CATEGORIES, FLAG_NOTE_REQUIRED, SCALE_VALUES

EVENT_TYPES = ("register", "rating", "flag")


@dataclass
class RatingRecord:
    item_id: str
    rater_id: str
    dimension_id: str
    value: int
    timestamp: float = 0.0

    def __post_init__(self):
        if self.value not in SCALE_VALUES:
            raise ValidationError(
                f"rating value must be one of {SCALE_VALUES}, got {self.value}"
            )


@dataclass
class FlagRecord:
    item_id: str
    rater_id: str
    categories: list[str]
    note: str = ""
    timestamp: float = 0.0

    def __post_init__(self):
        if not self.categories:
            raise ValidationError("flag needs at least one category")
        unknown = [c for c in self.categories if c not in FLAG_CATEGORIES]
        if unknown:
            raise ValidationError(f"unknown flag categories: {unknown}")
        if FLAG_NOTE_REQUIRED in self.categories and not self.note.strip():
            raise ValidationError(
                f"flag category {FLAG_NOTE_REQUIRED!r} requires a justification note"
            )


@dataclass
class EventLog:
    path: Path | None = None
    events: list[dict] = field(default_factory=list)

    @classmethod
    def open(cls, path: str | Path) -> "EventLog":
        path = Path(path)
        events = []
        if path.exists():
            with path.open("r", encoding="utf-8") as fh:
                for i, line in enumerate(fh, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        obj = json.loads(line)
                    except json.JSONDecodeError as exc:
                        raise ParseError(f"bad event: {exc.msg}", i) from exc
                    if obj.get("type") not in EVENT_TYPES:
                        raise ParseError(f"unknown event type {obj.get('type')!r}", i)
                    events.append(obj)
        return cls(path=path, events=events)

    def append(self, event: dict) -> None:
        if event.get("type") not in EVENT_TYPES:
            raise ValidationError(f"unknown event type {event.get('type')!r}")
        self.events.append(event)
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(event, sort_keys=True) + "\n")

    @staticmethod
    def now() -> float:
        return time.time()
