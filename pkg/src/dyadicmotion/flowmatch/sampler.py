"""Guided ODE sampling.

Fixed-step Euler integration of dx = v dt from t = 0 (pure noise) to
t = 1. Guidance extrapolates between the unconditioned and conditioned
velocities; with weight 1 the unconditioned pass is skipped entirely.
"""

from __future__ import annotations

import torch

from ..errors import ConfigError, NumericError


def cfg_combine(v_cond: torch.Tensor, v_uncond: torch.Tensor, weight: float) -> torch.Tensor:
    """v_uncond + weight * (v_cond - v_uncond); weight 1 is exactly v_cond."""
    if weight == 1.0:
        return v_cond
    return v_uncond + weight * (v_cond - v_uncond)


@torch.no_grad()
def sample_ode(
    velocity_fn,
    shape: tuple[int, ...],
    steps: int = 100,
    cfg_weight: float = 1.5,
    generator: torch.Generator | None = None,
    dtype: torch.dtype = torch.float32,
    device: torch.device | str = "cpu",
    x0: torch.Tensor | None = None,
) -> torch.Tensor:
    """Integrate the learned flow; returns the t = 1 state.

    ``velocity_fn(x, t, unconditional=False)`` evaluates the model; the
    unconditional branch is only invoked when cfg_weight != 1. ``x0``
    overrides the seeded Gaussian initial state (useful for oracles).
    """
    if steps < 1:
        raise ConfigError(f"steps must be >= 1, got {steps}")
    if x0 is not None:
        x = x0.clone()
    else:
        x = torch.randn(shape, generator=generator, dtype=dtype, device=device)
    dt = 1.0 / steps
    for k in range(steps):
        t = torch.full((x.shape[0],), k * dt, dtype=x.dtype, device=x.device)
        v = velocity_fn(x, t, unconditional=False)
        if cfg_weight != 1.0:
            v_uncond = velocity_fn(x, t, unconditional=True)
            v = cfg_combine(v, v_uncond, cfg_weight)
        x = x + v * dt
        if not torch.isfinite(x).all():
            raise NumericError(f"non-finite state at integration step {k}")
    return x
