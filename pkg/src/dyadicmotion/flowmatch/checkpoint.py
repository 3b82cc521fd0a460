"""Single-file checkpoint container.

Layout: magic line, little-endian uint32 header length, UTF-8 JSON
header (config echo plus a tensor index), then the raw tensor bytes in
little-endian C order. Round trips are bit-exact.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np
import torch

from ..errors import ParseError

MAGIC = b"DMCKPT1\n"

_DTYPES = {"f4": "<f4", "f8": "<f8", "i8": "<i8"}
_TORCH_TO_CODE = {torch.float32: "f4", torch.float64: "f8", torch.int64: "i8"}


def save_checkpoint(path: str | Path, config: dict, state_dict: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tensors = []
    payload = bytearray()
    for name, tensor in state_dict.items():
        code = _TORCH_TO_CODE.get(tensor.dtype)
        if code is None:
            raise ParseError(f"unsupported checkpoint dtype {tensor.dtype} for {name!r}")
        arr = tensor.detach().cpu().numpy().astype(_DTYPES[code], copy=False)
        raw = np.ascontiguousarray(arr).tobytes()
        tensors.append(
            {
                "name": name,
                "shape": list(tensor.shape),
                "dtype": code,
                "offset": len(payload),
                "nbytes": len(raw),
            }
        )
        payload.extend(raw)
    header = json.dumps({"config": config, "tensors": tensors}).encode("utf-8")
    with path.open("wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(header)))
        fh.write(header)
        fh.write(bytes(payload))
    return path


def load_checkpoint(path: str | Path) -> tuple[dict, dict]:
    """Returns (config, state_dict of torch tensors)."""
    path = Path(path)
    raw = path.read_bytes()
    if not raw.startswith(MAGIC):
        raise ParseError(f"{path}: not a checkpoint file")
    header_len = struct.unpack("<I", raw[len(MAGIC) : len(MAGIC) + 4])[0]
    header_start = len(MAGIC) + 4
    header = json.loads(raw[header_start : header_start + header_len].decode("utf-8"))
    data_start = header_start + header_len
    state_dict = {}
    for entry in header["tensors"]:
        start = data_start + entry["offset"]
        buf = raw[start : start + entry["nbytes"]]
        arr = np.frombuffer(buf, dtype=_DTYPES[entry["dtype"]]).reshape(entry["shape"])
        state_dict[entry["name"]] = torch.from_numpy(arr.copy())
    return header["config"], state_dict
