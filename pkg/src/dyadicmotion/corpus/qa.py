"""Conservative merge of QA signals from multiple review sources.

An interaction is removed if any source answers "yes" on the sensitive-
or offensive-material categories; it is queued for review if any source
answers "unsure" on those categories and none answers "yes"; otherwise
it is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ValidationError
from .records import QA_REMOVAL_CATEGORIES, QaFlagSet


@dataclass
class FilterDecision:
    decision: str  # remove | review | keep
    rationale: list[tuple[str, str]] = field(default_factory=list)  # (source, category)


def merge_qa_flags(flag_sets: list[QaFlagSet]) -> FilterDecision:
    if not flag_sets:
        raise ValidationError("merge_qa_flags requires at least one QA source")

    yes_hits: list[tuple[str, str]] = []
    unsure_hits: list[tuple[str, str]] = []
    for fs in flag_sets:
        for category in QA_REMOVAL_CATEGORIES:
            answer = fs.flags[category]
            if answer == "yes":
                yes_hits.append((fs.source, category))
            elif answer == "unsure":
                unsure_hits.append((fs.source, category))

    if yes_hits:
        return FilterDecision(decision="remove", rationale=yes_hits)
    if unsure_hits:
        return FilterDecision(decision="review", rationale=unsure_hits)
    return FilterDecision(decision="keep")
