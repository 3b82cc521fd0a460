"""Conditional flow-matching loss.

For each batch element: draw t uniform on [0, 1] and Gaussian noise,
form the interpolant x_t, and regress the model's velocity on the
constant path velocity x - (1 - sigma_min) * eps. The loss is the mean
squared error over every element (batch, frames, dimensions), so a zero
model on standardized data scores approximately 1 + (1 - sigma_min)^2
per dimension.
"""

from __future__ import annotations

import torch

from ..errors import NumericError, ValidationError
from .schedule import Schedule


def cfm_loss(
    velocity_fn,
    x: torch.Tensor,
    generator: torch.Generator,
    schedule: Schedule = Schedule(),
) -> torch.Tensor:
    """Flow-matching loss for one batch.

    ``velocity_fn(x_t, t)`` evaluates the conditional velocity model;
    bind conditions beforehand (e.g. ``FlowModel.velocity_closure``).
    Deterministic given the generator state.
    """
    if x.ndim != 3 or x.shape[0] == 0:
        raise ValidationError(f"batch must be nonempty (B, N, D), got {tuple(x.shape)}")
    b = x.shape[0]
    t = torch.rand(b, generator=generator, dtype=x.dtype, device=x.device)
    eps = torch.randn(x.shape, generator=generator, dtype=x.dtype, device=x.device)

    sigma = schedule.sigma_min
    t_b = t[:, None, None]
    x_t = t_b * x + (1.0 - (1.0 - sigma) * t_b) * eps
    v_target = x - (1.0 - sigma) * eps

    v = velocity_fn(x_t, t)
    if not torch.isfinite(v).all():
        bad = torch.nonzero(~torch.isfinite(v).flatten(1).all(dim=1)).flatten().tolist()
        raise NumericError(f"non-finite velocity for batch item(s) {bad}")
    return torch.mean((v - v_target) ** 2)
