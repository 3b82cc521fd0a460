"""Continuous 6D encoding of 3D rotations.

A rotation matrix is encoded by its first two columns; decoding runs
Gram-Schmidt on the two 3-vectors and completes the frame with a cross
product, which removes any scale and guarantees an orthonormal output
with determinant +1.
"""

from __future__ import annotations

import numpy as np

from ..errors import DegenerateInputError, DomainError

_EPS = 1e-12


def to_6d(rotation: np.ndarray) -> np.ndarray:
    """First two columns of one or more 3x3 rotation matrices.

    Accepts (..., 3, 3); returns (..., 6). Inputs must be proper
    rotations (orthonormal, det +1).
    """
    rotation = np.asarray(rotation, dtype=np.float64)
    if rotation.shape[-2:] != (3, 3):
        raise DomainError(f"expected (..., 3, 3) rotation matrices, got {rotation.shape}")
    eye = np.eye(3)
    gram = np.einsum("...ij,...kj->...ik", rotation, rotation)
    if not np.allclose(gram, eye, atol=1e-5):
        raise DomainError("to_6d input is not orthonormal")
    if not np.allclose(np.linalg.det(rotation), 1.0, atol=1e-5):
        raise DomainError("to_6d input must have determinant +1")
    cols = rotation[..., :, :2]  # (..., 3, 2)
    return np.concatenate([cols[..., 0], cols[..., 1]], axis=-1)


def from_6d(vec: np.ndarray) -> np.ndarray:
    """Gram-Schmidt decode of (..., 6) vectors into (..., 3, 3) rotations."""
    vec = np.asarray(vec, dtype=np.float64)
    if vec.shape[-1] != 6:
        raise DomainError(f"expected (..., 6) inputs, got {vec.shape}")
    a, b = vec[..., :3], vec[..., 3:]
    norm_a = np.linalg.norm(a, axis=-1, keepdims=True)
    if np.any(norm_a < _EPS):
        raise DegenerateInputError("from_6d: first column has near-zero norm")
    x = a / norm_a
    b_orth = b - np.sum(x * b, axis=-1, keepdims=True) * x
    norm_b = np.linalg.norm(b_orth, axis=-1, keepdims=True)
    if np.any(norm_b < _EPS):
        raise DegenerateInputError("from_6d: column vectors are parallel")
    y = b_orth / norm_b
    z = np.cross(x, y)
    return np.stack([x, y, z], axis=-1)


def random_rotations(n: int, rng: np.random.Generator) -> np.ndarray:
    """n uniformly distributed rotation matrices via unit quaternions."""
    q = rng.normal(size=(n, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    w, x, y, z = q[:, 0], q[:, 1], q[:, 2], q[:, 3]
    return np.stack(
        [
            np.stack([1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)], -1),
            np.stack([2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)], -1),
            np.stack([2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)], -1),
        ],
        axis=-2,
    )
