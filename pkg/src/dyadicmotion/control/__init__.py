"""Controllability signals: emotion, expressivity, and semantic gestures."""

from .buckets import BUCKET_SCHEMES, BucketSpec, av_tokens, bucketize, fit_thresholds
from .gesture import temporal_gesture_drop
from .signals import (
    CONTROL_KINDS,
    DEFAULT_EYEBROW_FAUS,
    DEFAULT_MOUTH_FAUS,
    FAU_DIM,
    AVSequence,
    ControlSignal,
    dynamism,
    moving_average,
)
from .vq import GestureCodebook, VQGestureModel, reconstruction_error, vq_fit

__all__ = [
    "BUCKET_SCHEMES",
    "BucketSpec",
    "av_tokens",
    "bucketize",
    "fit_thresholds",
    "temporal_gesture_drop",
    "CONTROL_KINDS",
    "DEFAULT_EYEBROW_FAUS",
    "DEFAULT_MOUTH_FAUS",
    "FAU_DIM",
    "AVSequence",
    "ControlSignal",
    "dynamism",
    "moving_average",
    "GestureCodebook",
    "VQGestureModel",
    "reconstruction_error",
    "vq_fit",
]
