"""Human preference-study backend."""

from .aggregate import DeltaExport, MatchupSummary, StudyResults, aggregate, export_deltas
from .items import SampleRef, StudyItem, build_items
from .protocols import (
    FLAG_CATEGORIES,
    PROTOCOL_IDS,
    SCALE_VALUES,
    Protocol,
    Question,
    export_protocol_fixture,
    get_protocol,
)
from .service import create_app
from .store import EventLog, FlagRecord, RatingRecord
from .study import Study, UnknownRaterError

__all__ = [
    "DeltaExport",
    "MatchupSummary",
    "StudyResults",
    "aggregate",
    "export_deltas",
    "SampleRef",
    "StudyItem",
    "build_items",
    "FLAG_CATEGORIES",
    "PROTOCOL_IDS",
    "SCALE_VALUES",
    "Protocol",
    "Question",
    "export_protocol_fixture",
    "get_protocol",
    "create_app",
    "EventLog",
    "FlagRecord",
    "RatingRecord",
    "Study",
    "UnknownRaterError",
]
