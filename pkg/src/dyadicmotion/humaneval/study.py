"""Study state machine: assignment, rating capture, flagging.

State is a pure function of (items, event log). Assignment serves each
rater an item they have neither rated nor flagged, preferring items with
the fewest completed ratings (stable tie-break on item id) and never
serving an item past its rating quota. Flagged items are excluded from
aggregation but stay in rotation for other raters so the quota can still
be met if the flag proves spurious.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ValidationError
from .items import StudyItem
from .protocols import get_protocol
from .store import EventLog, FlagRecord, RatingRecord


class UnknownRaterError(ValidationError):
    """Rater is not registered with the study."""


@dataclass
class Study:
    study_id: str
    items: list[StudyItem]
    ratings_per_item: int = 5
    log: EventLog = field(default_factory=EventLog)

    def __post_init__(self):
        if not self.items:
            raise ValidationError("a study needs at least one item")
        protocols = {item.protocol for item in self.items}
        if len(protocols) != 1:
            raise ValidationError(f"items mix protocols: {sorted(protocols)}")
        self.protocol = get_protocol(next(iter(protocols)))
        self._dimensions = set(self.protocol.dimension_ids())
        self._by_id = {item.item_id: item for item in self.items}
        if len(self._by_id) != len(self.items):
            raise ValidationError("duplicate item ids")
        self._write_lock = threading.Lock()  # event appends are single-writer
        self._raters: set[str] = set()
        # (item, rater, dimension) -> value; last write wins
        self._ratings: dict[tuple[str, str, str], int] = {}
        self._item_raters: dict[str, set[str]] = {i.item_id: set() for i in self.items}
        self._flags: dict[str, list[FlagRecord]] = {}
        self._rater_flagged: dict[str, set[str]] = {}
        for event in self.log.events:
            self._apply(event)

    # -- event application -------------------------------------------------

    def _apply(self, event: dict) -> None:
        kind = event["type"]
        if kind == "register":
            self._raters.add(event["rater_id"])
        elif kind == "rating":
            record = RatingRecord(
                item_id=event["item_id"],
                rater_id=event["rater_id"],
                dimension_id=event["dimension_id"],
                value=int(event["value"]),
                timestamp=event.get("timestamp", 0.0),
            )
            key = (record.item_id, record.rater_id, record.dimension_id)
            self._ratings[key] = record.value
            self._item_raters[record.item_id].add(record.rater_id)
        elif kind == "flag":
            record = FlagRecord(
                item_id=event["item_id"],
                rater_id=event["rater_id"],
                categories=list(event["categories"]),
                note=event.get("note", ""),
                timestamp=event.get("timestamp", 0.0),
            )
            self._flags.setdefault(record.item_id, []).append(record)
            self._rater_flagged.setdefault(record.rater_id, set()).add(record.item_id)

    # -- public operations --------------------------------------------------

    def register_rater(self, rater_id: str) -> None:
        if not rater_id:
            raise ValidationError("rater_id must be nonempty")
        with self._write_lock:
            if rater_id in self._raters:
                return
            self.log.append(
                {"type": "register", "rater_id": rater_id, "timestamp": EventLog.now()}
            )
            self._raters.add(rater_id)

    def is_registered(self, rater_id: str) -> bool:
        return rater_id in self._raters

    def completed_ratings(self, item_id: str) -> int:
        return len(self._item_raters[item_id])

    def next_item(self, rater_id: str) -> StudyItem | None:
        if rater_id not in self._raters:
            raise UnknownRaterError(f"rater {rater_id!r} is not registered")
        flagged_by_rater = self._rater_flagged.get(rater_id, set())
        candidates = [
            item
            for item in self.items
            if rater_id not in self._item_raters[item.item_id]
            and item.item_id not in flagged_by_rater
            and self.completed_ratings(item.item_id) < self.ratings_per_item
        ]
        if not candidates:
            return None
        return min(candidates, key=lambda it: (self.completed_ratings(it.item_id), it.item_id))

    def record_rating(self, record: RatingRecord) -> None:
        if record.item_id not in self._by_id:
            raise ValidationError(f"unknown item {record.item_id!r}")
        if record.dimension_id not in self._dimensions:
            raise ValidationError(
                f"unknown dimension {record.dimension_id!r} for protocol "
                f"{self.protocol.protocol_id}"
            )
        if record.rater_id not in self._raters:
            raise UnknownRaterError(f"rater {record.rater_id!r} is not registered")
        timestamp = record.timestamp or EventLog.now()
        with self._write_lock:
            self.log.append(
                {
                    "type": "rating",
                    "item_id": record.item_id,
                    "rater_id": record.rater_id,
                    "dimension_id": record.dimension_id,
                    "value": record.value,
                    "timestamp": timestamp,
                }
            )
            key = (record.item_id, record.rater_id, record.dimension_id)
            self._ratings[key] = record.value
            self._item_raters[record.item_id].add(record.rater_id)

    def record_flag(self, record: FlagRecord) -> None:
        if record.item_id not in self._by_id:
            raise ValidationError(f"unknown item {record.item_id!r}")
        if record.rater_id not in self._raters:
            raise UnknownRaterError(f"rater {record.rater_id!r} is not registered")
        timestamp = record.timestamp or EventLog.now()
        with self._write_lock:
            self.log.append(
                {
                    "type": "flag",
                    "item_id": record.item_id,
                    "rater_id": record.rater_id,
                    "categories": record.categories,
                    "note": record.note,
                    "timestamp": timestamp,
                }
            )
            self._flags.setdefault(record.item_id, []).append(record)
            self._rater_flagged.setdefault(record.rater_id, set()).add(record.item_id)

    # -- queries -------------------------------------------------------------

    def flagged_items(self) -> set[str]:
        return set(self._flags)

    def ratings_for_item(self, item_id: str) -> dict[tuple[str, str], int]:
        """(rater, dimension) -> value for one item."""
        return {
            (rater, dim): value
            for (iid, rater, dim), value in self._ratings.items()
            if iid == item_id
        }

    def item(self, item_id: str) -> StudyItem:
        return self._by_id[item_id]

    @classmethod
    def replay(
        cls,
        study_id: str,
        items: list[StudyItem],
        log_path: str | Path,
        ratings_per_item: int = 5,
    ) -> "Study":
        """Rebuild study state purely from the persisted event log."""
        return cls(
            study_id=study_id,
            items=items,
            ratings_per_item=ratings_per_item,
            log=EventLog.open(log_path),
        )
