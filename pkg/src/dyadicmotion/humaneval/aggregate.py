"""Aggregation of pairwise ratings and export to the correlation pipeline.

Item-level score: mean rating per dimension over raters. Match-up score:
mean of item means over items of that system pair, reported in canonical
orientation (systems ordered lexicographically, positive values favor
the second system); items presented with the canonical pair swapped have
their means negated. The 95% interval uses the normal approximation
1.96 * s / sqrt(n_items) on item means. Flagged items are excluded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, ValidationError
from .study import Study

Z_95 = 1.96


@dataclass
class MatchupSummary:
    system_pair: tuple[str, str]
    dimension_id: str
    mean: float
    ci_halfwidth: float
    n_items: int


@dataclass
class StudyResults:
    item_means: dict[str, dict[str, float]]  # item -> dimension -> mean
    matchups: dict[tuple[str, str], dict[str, MatchupSummary]]
    excluded_items: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "item_means": self.item_means,
            "excluded_items": self.excluded_items,
            "matchups": [
                {
                    "system_pair": list(pair),
                    "dimension_id": dim,
                    "mean": s.mean,
                    "ci_halfwidth": s.ci_halfwidth,
                    "n_items": s.n_items,
                }
                for pair, dims in sorted(self.matchups.items())
                for dim, s in sorted(dims.items())
            ],
        }


def aggregate(study: Study) -> StudyResults:
    """Item means and per-dimension match-up summaries with 95% CIs."""
    flagged = study.flagged_items()
    item_means: dict[str, dict[str, float]] = {}
    per_pair: dict[tuple[str, str], dict[str, list[float]]] = {}

    rated_items = [
        item
        for item in study.items
        if study.completed_ratings(item.item_id) > 0 and item.item_id not in flagged
    ]
    if not rated_items and not flagged:
        raise DomainError("aggregate on an empty study")

    for item in rated_items:
        ratings = study.ratings_for_item(item.item_id)
        by_dim: dict[str, list[int]] = {}
        for (_, dim), value in ratings.items():
            by_dim.setdefault(dim, []).append(value)
        means = {dim: float(np.mean(vals)) for dim, vals in by_dim.items()}
        item_means[item.item_id] = means

        pair = item.canonical_pair
        sign = -1.0 if item.swapped else 1.0
        bucket = per_pair.setdefault(pair, {})
        for dim, mean in means.items():
            bucket.setdefault(dim, []).append(sign * mean)

    matchups: dict[tuple[str, str], dict[str, MatchupSummary]] = {}
    for pair, dims in per_pair.items():
        matchups[pair] = {}
        for dim, values in dims.items():
            arr = np.asarray(values)
            n = len(arr)
            std = float(arr.std(ddof=1)) if n > 1 else 0.0
            matchups[pair][dim] = MatchupSummary(
                system_pair=pair,
                dimension_id=dim,
                mean=float(arr.mean()),
                ci_halfwidth=Z_95 * std / np.sqrt(n) if n else 0.0,
                n_items=n,
            )
    return StudyResults(
        item_means=item_means,
        matchups=matchups,
        excluded_items=sorted(flagged),
    )


@dataclass
class DeltaExport:
    """Paired (human, metric) deltas for metrics.correlate."""

    item_ids: list[str]
    human_deltas: np.ndarray
    metric_deltas: np.ndarray
    exclusions: list[str] = field(default_factory=list)


def export_deltas(
    study: Study,
    metric_scores: dict[tuple[str, str], float],  # (item_id, system) -> score
    dimension_id: str,
) -> DeltaExport:
    """Per-item (human mean, metric_right - metric_left) in canonical orientation.

    Items without a rating on ``dimension_id``, flagged items, or items
    missing a metric score for either system land in the exclusions list.
    """
    if dimension_id not in study.protocol.dimension_ids():
        raise ValidationError(f"unknown dimension {dimension_id!r}")
    results = aggregate(study)
    ids, human, metric, exclusions = [], [], [], []
    for item in study.items:
        means = results.item_means.get(item.item_id)
        if means is None or dimension_id not in means:
            exclusions.append(item.item_id)
            continue
        s1, s2 = item.canonical_pair
        left_key, right_key = (item.item_id, s1), (item.item_id, s2)
        if left_key not in metric_scores or right_key not in metric_scores:
            exclusions.append(item.item_id)
            continue
        sign = -1.0 if item.swapped else 1.0
        ids.append(item.item_id)
        human.append(sign * means[dimension_id])
        metric.append(metric_scores[right_key] - metric_scores[left_key])
    return DeltaExport(
        item_ids=ids,
        human_deltas=np.asarray(human),
        metric_deltas=np.asarray(metric),
        exclusions=exclusions,
    )
