"""Condition assembly, dropout, and cascaded generation."""

from .bundle import (
    MODES,
    SPEECH_A1,
    SPEECH_A2,
    VISUAL_V2,
    ConditionBundle,
    build_condition,
    condition_dropout,
    joint_concat,
    joint_split,
)
from .cascade import (
    CASCADE_ORDERS,
    FACE_COND_VARIANTS,
    STAGE_COND_BLOCK,
    CascadeSpec,
    run_cascade,
    stage1_to_condition,
    stage_block_spec,
)
from .encoder import (
    CondBatch,
    CondBlockSpec,
    CondSpec,
    ConditionEncoder,
    batch_bundles,
    spec_for_mode,
)

__all__ = [
    "MODES",
    "SPEECH_A1",
    "SPEECH_A2",
    "VISUAL_V2",
    "ConditionBundle",
    "build_condition",
    "condition_dropout",
    "joint_concat",
    "joint_split",
    "CASCADE_ORDERS",
    "FACE_COND_VARIANTS",
    "STAGE_COND_BLOCK",
    "CascadeSpec",
    "run_cascade",
    "stage1_to_condition",
    "stage_block_spec",
    "CondBatch",
    "CondBlockSpec",
    "CondSpec",
    "ConditionEncoder",
    "batch_bundles",
    "spec_for_mode",
]
