"""Automatic evaluation metrics."""

from .correlation import CorrelationResult, correlate
from .diversity import diversity
from .following import SPACES, condition_following
from .frechet import GaussianFit, frechet_distance, frechet_from_fits
from .plugins import (
    KNOWN_EXTERNAL_METRICS,
    available_metrics,
    get_metric,
    register_metric,
    unregister_metric,
)
from .smoothness import KeypointTrack, boundary_smoothness, jerk, mean_jerk

__all__ = [
    "CorrelationResult",
    "correlate",
    "diversity",
    "SPACES",
    "condition_following",
    "GaussianFit",
    "frechet_distance",
    "frechet_from_fits",
    "KNOWN_EXTERNAL_METRICS",
    "available_metrics",
    "get_metric",
    "register_metric",
    "unregister_metric",
    "KeypointTrack",
    "boundary_smoothness",
    "jerk",
    "mean_jerk",
]
