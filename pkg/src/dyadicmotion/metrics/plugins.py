"""Pluggable interface for metrics backed by external pretrained networks.

Image-space FID and the lip-sync scores need pretrained feature
extractors that are out of desk scope. They register here by name; the
evaluation harness reports them when a backend is installed and marks
them unavailable otherwise.
"""

from __future__ import annotations

from typing import Callable, Protocol

from ..errors import ConfigError


class MetricPlugin(Protocol):
    def __call__(self, generated: list, reference: list) -> float: ...


_REGISTRY: dict[str, MetricPlugin] = {}

# Names reserved for the standard pretrained-network metrics.
KNOWN_EXTERNAL_METRICS = ("fid", "sync_c", "sync_d")


def register_metric(name: str, fn: MetricPlugin) -> None:
    if name in _REGISTRY:
        raise ConfigError(f"metric {name!r} is already registered")
    _REGISTRY[name] = fn


def unregister_metric(name: str) -> None:
    _REGISTRY.pop(name, None)


def get_metric(name: str) -> MetricPlugin | None:
    return _REGISTRY.get(name)


def available_metrics() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))
