"""Diversity of generated motion.

Mean L2 distance between randomly drawn disjoint pairs of samples, each
sample summarized by its time-averaged feature vector. Samples are
canonically ordered by a content digest before the seeded draw, so the
score is invariant to input order.
"""

from __future__ import annotations

import hashlib

import numpy as np

from ..errors import ValidationError


def _time_average(sample: np.ndarray) -> np.ndarray:
    sample = np.asarray(sample, dtype=np.float64)
    if sample.ndim == 1:
        return sample
    return sample.mean(axis=0)


def diversity(samples: list[np.ndarray], pairs: int = 30, seed: int = 0) -> float:
    if len(samples) < 2:
        raise ValidationError("diversity needs at least 2 samples")
    averaged = [_time_average(s) for s in samples]
    max_pairs = len(averaged) // 2
    if pairs > max_pairs:
        raise ValidationError(
            f"cannot draw {pairs} disjoint pairs from {len(averaged)} samples "
            f"(max {max_pairs})"
        )
    order = sorted(
        range(len(averaged)),
        key=lambda i: hashlib.sha256(averaged[i].tobytes()).hexdigest(),
    )
    rng = np.random.default_rng(seed)
    chosen = rng.permutation(len(order))[: 2 * pairs]
    dists = []
    for k in range(pairs):
        i = order[chosen[2 * k]]
        j = order[chosen[2 * k + 1]]
        dists.append(np.linalg.norm(averaged[i] - averaged[j]))
    return float(np.mean(dists))
