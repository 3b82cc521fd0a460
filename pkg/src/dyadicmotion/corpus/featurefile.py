"""Binary feature files with JSON sidecar descriptors.

Data files hold raw little-endian values in C order: 32-bit floats for
motion channels, 32-bit integers for speech tokens. The sidecar
``<name>.json`` records shape, frame rate, channel kind, and dtype so a
file is self-describing:

    {"shape": [N, D], "fps": 30.0, "channel": "face", "dtype": "f4"}

Channel kinds: ``face`` (N x 137), ``body`` (N x 258), ``joint``
(N x 395), and ``speech_a`` / ``speech_b`` token streams (N,).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import ParseError, ShapeError

CHANNELS = ("face", "body", "joint", "speech_a", "speech_b")

CHANNEL_WIDTHS = {"face": 137, "body": 258, "joint": 395}

_DTYPES = {"f4": np.dtype("<f4"), "i4": np.dtype("<i4")}


def _sidecar_path(data_path: Path) -> Path:
    return data_path.with_suffix(data_path.suffix + ".json")


def write_feature_file(
    path: str | Path,
    values: np.ndarray,
    channel: str,
    fps: float,
) -> Path:
    """Write ``values`` plus its descriptor; returns the data path."""
    path = Path(path)
    if channel not in CHANNELS:
        raise ShapeError(f"unknown channel {channel!r}; expected one of {CHANNELS}")
    values = np.asarray(values)
    if channel.startswith("speech"):
        if values.ndim != 1:
            raise ShapeError(f"speech token stream must be 1-d, got shape {values.shape}")
        dtype = "i4"
        out = np.ascontiguousarray(values, dtype=_DTYPES[dtype])
    else:
        expected = CHANNEL_WIDTHS[channel]
        if values.ndim != 2 or values.shape[1] != expected:
            raise ShapeError(
                f"{channel} features must be (N, {expected}), got shape {values.shape}"
            )
        dtype = "f4"
        out = np.ascontiguousarray(values, dtype=_DTYPES[dtype])

    path.parent.mkdir(parents=True, exist_ok=True)
    out.tofile(path)
    descriptor = {
        "shape": list(out.shape),
        "fps": float(fps),
        "channel": channel,
        "dtype": dtype,
    }
    _sidecar_path(path).write_text(json.dumps(descriptor), encoding="utf-8")
    return path


def read_feature_file(path: str | Path) -> tuple[np.ndarray, dict]:
    """Read a feature file; returns (values, descriptor)."""
    path = Path(path)
    sidecar = _sidecar_path(path)
    if not sidecar.exists():
        raise ParseError(f"missing sidecar descriptor: {sidecar}")
    descriptor = json.loads(sidecar.read_text(encoding="utf-8"))
    for key in ("shape", "fps", "channel", "dtype"):
        if key not in descriptor:
            raise ParseError(f"{sidecar}: descriptor missing {key!r}")
    dtype = _DTYPES.get(descriptor["dtype"])
    if dtype is None:
        raise ParseError(f"{sidecar}: unsupported dtype {descriptor['dtype']!r}")
    values = np.fromfile(path, dtype=dtype)
    shape = tuple(descriptor["shape"])
    if values.size != int(np.prod(shape)):
        raise ShapeError(
            f"{path}: file holds {values.size} values, descriptor declares {shape}"
        )
    return values.reshape(shape), descriptor
