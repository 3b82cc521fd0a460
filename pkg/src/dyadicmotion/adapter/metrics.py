"""Evaluation helpers for code prediction.

Gesture labels are heavily imbalanced (the null class dominates), so
precision/recall/F1 are computed per class with the null class excluded
and macro-averaged with the arithmetic mean. Zero-denominator cases
score 0 for that class.
"""

from __future__ import annotations

import numpy as np

from ..errors import DomainError, ValidationError
from .model import EMOTION_BINS

THREE_CLASS_BLOCK = EMOTION_BINS // 3  # ids 0-3 -> 0, 4-7 -> 1, 8-11 -> 2


def group_3class(tokens: np.ndarray) -> np.ndarray:
    """Coarse 3-way grouping of the 12 emotion tokens by contiguous blocks."""
    tokens = np.asarray(tokens)
    if tokens.size and (tokens.min() < 0 or tokens.max() >= EMOTION_BINS):
        raise DomainError(f"emotion tokens must lie in [0, {EMOTION_BINS})")
    return tokens // THREE_CLASS_BLOCK


def macro_prf(
    pred: np.ndarray,
    gold: np.ndarray,
    exclude: set | frozenset = frozenset(),
) -> tuple[float, float, float]:
    """Macro-averaged precision, recall, F1 over non-excluded classes.

    Classes are the union of labels observed in gold and predictions,
    minus ``exclude`` (typically the null gesture). Per-class scores with
    zero denominators are 0; the macro average is the arithmetic mean.
    """
    pred = np.asarray(pred)
    gold = np.asarray(gold)
    if pred.shape != gold.shape:
        raise ValidationError(
            f"pred and gold lengths differ: {pred.shape} vs {gold.shape}"
        )
    observed = set(np.unique(gold)) | set(np.unique(pred))
    classes = sorted(c for c in observed if c not in exclude)
    if not classes:
        raise DomainError("no non-excluded classes to score")

    precisions, recalls, f1s = [], [], []
    for c in classes:
        tp = int(np.sum((pred == c) & (gold == c)))
        fp = int(np.sum((pred == c) & (gold != c)))
        fn = int(np.sum((pred != c) & (gold == c)))
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)
    return (
        float(np.mean(precisions)),
        float(np.mean(recalls)),
        float(np.mean(f1s)),
    )
