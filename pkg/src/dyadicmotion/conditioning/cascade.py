"""Two-stage face/body generation.

face2body samples face features first, then conditions the body model on
a face-derived block: either the full 137-d face vector or only its 3
head-rotation dimensions, which is enough to keep the body's head pose
aligned. body2face runs the mirror image with the body's joint rotations
as the visual condition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from ..errors import ConfigError
from ..features.containers import BODY_DIM, FACE_DIM, HEAD_ROTATION_SLICE
from .bundle import ConditionBundle
from .encoder import CondBlockSpec, batch_bundles

CASCADE_ORDERS = ("face2body", "body2face")
FACE_COND_VARIANTS = ("full_imitator", "head_rotation_only")

STAGE_COND_BLOCK = "stage1_motion"


def stage_block_spec(order: str, variant: str = "full_imitator", embed_dim: int = 32) -> CondBlockSpec:
    """Condition-block spec carrying stage-1 output into stage 2."""
    if order == "face2body":
        width = 3 if variant == "head_rotation_only" else FACE_DIM
    elif order == "body2face":
        width = BODY_DIM
    else:
        raise ConfigError(f"unknown cascade order {order!r}")
    return CondBlockSpec(STAGE_COND_BLOCK, "continuous", width, embed_dim)


@dataclass
class CascadeSpec:
    order: str = "face2body"
    face_cond_variant: str = "full_imitator"

    def __post_init__(self):
        if self.order not in CASCADE_ORDERS:
            raise ConfigError(f"order must be one of {CASCADE_ORDERS}")
        if self.face_cond_variant not in FACE_COND_VARIANTS:
            raise ConfigError(f"variant must be one of {FACE_COND_VARIANTS}")
        if self.order == "body2face" and self.face_cond_variant != "full_imitator":
            raise ConfigError("face_cond_variant applies only to face2body")


def stage1_to_condition(spec: CascadeSpec, stage1_output: np.ndarray) -> np.ndarray:
    """Select the dims of stage-1 output passed to stage 2."""
    if spec.order == "face2body" and spec.face_cond_variant == "head_rotation_only":
        return stage1_output[:, HEAD_ROTATION_SLICE]
    return stage1_output


def run_cascade(
    spec: CascadeSpec,
    stage1_model,
    stage2_model,
    bundle: ConditionBundle,
    n_frames: int,
    seed: int,
    steps: int = 100,
    cfg_weight: float = 1.5,
) -> tuple[np.ndarray, np.ndarray]:
    """Sample (face, body) with the two-stage pipeline.

    Both models are FlowModel instances; stage 2's condition spec must
    include the ``stage1_motion`` block with the width implied by
    ``spec``. Returns features in normalized model space.
    """
    from ..flowmatch.sampler import sample_ode  # local import avoids a cycle

    stage2_names = stage2_model.config.cond.names()
    if STAGE_COND_BLOCK not in stage2_names:
        raise ConfigError(
            f"stage-2 model lacks the {STAGE_COND_BLOCK!r} condition block; "
            f"has {stage2_names}"
        )
    expected = stage_block_spec(spec.order, spec.face_cond_variant).width
    actual = next(
        b.width for b in stage2_model.config.cond.blocks if b.name == STAGE_COND_BLOCK
    )
    if actual != expected:
        raise ConfigError(
            f"stage-2 {STAGE_COND_BLOCK!r} width {actual} does not match cascade "
            f"variant width {expected}"
        )

    dtype = next(stage1_model.parameters()).dtype
    gen1 = torch.Generator().manual_seed(seed)
    cond1 = batch_bundles(stage1_model.config.cond, [bundle], dtype=dtype)
    out1 = sample_ode(
        stage1_model.velocity_closure(cond1),
        shape=(1, n_frames, stage1_model.config.motion_dim),
        steps=steps,
        cfg_weight=cfg_weight,
        generator=gen1,
        dtype=dtype,
    )[0].numpy()

    stage_cond = stage1_to_condition(spec, out1)
    bundle2 = bundle.with_block(STAGE_COND_BLOCK, stage_cond)
    gen2 = torch.Generator().manual_seed(seed + 1)
    cond2 = batch_bundles(stage2_model.config.cond, [bundle2], dtype=dtype)
    out2 = sample_ode(
        stage2_model.velocity_closure(cond2),
        shape=(1, n_frames, stage2_model.config.motion_dim),
        steps=steps,
        cfg_weight=cfg_weight,
        generator=gen2,
        dtype=dtype,
    )[0].numpy()

    if spec.order == "face2body":
        return out1, out2
    return out2, out1
