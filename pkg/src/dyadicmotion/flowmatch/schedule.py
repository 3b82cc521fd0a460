"""Linear interpolation schedule between noise and data.

x_t = t * x + (1 - (1 - sigma_min) * t) * eps, so x_0 = eps and
x_1 = x + sigma_min * eps. The velocity of this path is constant in t:
v = x - (1 - sigma_min) * eps.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigError, DomainError


@dataclass(frozen=True)
class Schedule:
    sigma_min: float = 1e-4

    def __post_init__(self):
        if not 0.0 < self.sigma_min < 1.0:
            raise ConfigError(f"sigma_min must be in (0, 1), got {self.sigma_min}")


def interpolant(x, eps, t, schedule: Schedule = Schedule()):
    """Noisy latent x_t for time(s) t in [0, 1].

    Works for numpy arrays and torch tensors; ``t`` may be a scalar or
    broadcastable to ``x``.
    """
    t_min = float(t.min()) if hasattr(t, "min") else float(t)
    t_max = float(t.max()) if hasattr(t, "max") else float(t)
    if t_min < 0.0 or t_max > 1.0:
        raise DomainError(f"t must lie in [0, 1], got range [{t_min}, {t_max}]")
    return t * x + (1.0 - (1.0 - schedule.sigma_min) * t) * eps


def target_velocity(x, eps, schedule: Schedule = Schedule()):
    """Regression target for the velocity field; constant in t."""
    return x - (1.0 - schedule.sigma_min) * eps
