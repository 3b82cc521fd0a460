"""Metric-versus-human correlation.

Pairs item-level human preference deltas with automatic-metric score
deltas and reports Pearson's r, Kendall's tau-b, and Spearman's rho with
two-sided p-values. Ties follow the standard tau-b and rank-midpoint
conventions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..errors import DomainError, ValidationError


@dataclass
class CorrelationResult:
    pearson_r: float
    pearson_p: float
    kendall_tau: float
    kendall_p: float
    spearman_rho: float
    spearman_p: float
    n: int

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "pearson_r": self.pearson_r,
            "pearson_p": self.pearson_p,
            "kendall_tau": self.kendall_tau,
            "kendall_p": self.kendall_p,
            "spearman_rho": self.spearman_rho,
            "spearman_p": self.spearman_p,
        }


def correlate(human_deltas: np.ndarray, metric_deltas: np.ndarray) -> CorrelationResult:
    x = np.asarray(human_deltas, dtype=np.float64)
    y = np.asarray(metric_deltas, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValidationError("inputs must be equal-length 1-d arrays")
    if len(x) < 3:
        raise ValidationError(f"need at least 3 paired items, got {len(x)}")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise DomainError("deltas must be finite")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DomainError("zero-variance input: correlation undefined")

    pearson = stats.pearsonr(x, y)
    kendall = stats.kendalltau(x, y)  # tau-b
    spearman = stats.spearmanr(x, y)
    return CorrelationResult(
        pearson_r=float(pearson.statistic),
        pearson_p=float(pearson.pvalue),
        kendall_tau=float(kendall.statistic),
        kendall_p=float(kendall.pvalue),
        spearman_rho=float(spearman.statistic),
        spearman_p=float(spearman.pvalue),
        n=len(x),
    )
