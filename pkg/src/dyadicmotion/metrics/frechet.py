"""Squared Frechet distance between Gaussian fits of feature sets.

d^2 = ||mu1 - mu2||^2 + Tr(S1 + S2 - 2 (S1 S2)^{1/2}) on covariance
matrices regularized by adding eps to the diagonal. Feature-space and
gesture-space variants differ only in what features are fed in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..errors import DomainError, NumericError, ShapeError


@dataclass
class GaussianFit:
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        self.mean = np.atleast_1d(np.asarray(self.mean, dtype=np.float64))
        self.cov = np.atleast_2d(np.asarray(self.cov, dtype=np.float64))
        d = self.mean.shape[0]
        if self.cov.shape != (d, d):
            raise ShapeError(f"cov must be ({d}, {d}), got {self.cov.shape}")
        if not np.allclose(self.cov, self.cov.T, atol=1e-8):
            raise ShapeError("cov must be symmetric")

    @classmethod
    def fit(cls, feats: np.ndarray) -> "GaussianFit":
        feats = np.asarray(feats, dtype=np.float64)
        if feats.ndim != 2 or feats.shape[0] < 2:
            raise DomainError(
                f"need at least 2 feature rows to fit a Gaussian, got {feats.shape}"
            )
        return cls(mean=feats.mean(axis=0), cov=np.cov(feats, rowvar=False))


def frechet_from_fits(a: GaussianFit, b: GaussianFit, eps_reg: float = 1e-6) -> float:
    if a.mean.shape != b.mean.shape:
        raise ShapeError(
            f"dimension mismatch: {a.mean.shape} vs {b.mean.shape}"
        )
    d = a.mean.shape[0]
    cov_a = a.cov + eps_reg * np.eye(d)
    cov_b = b.cov + eps_reg * np.eye(d)

    covmean, _ = linalg.sqrtm(cov_a @ cov_b, disp=False)
    if not np.isfinite(covmean).all():
        raise NumericError("matrix square root did not converge")
    if np.iscomplexobj(covmean):
        if np.abs(covmean.imag).max() > 1e-6:
            raise NumericError(
                f"matrix square root has imaginary magnitude "
                f"{np.abs(covmean.imag).max():.2e}"
            )
        covmean = covmean.real

    diff = a.mean - b.mean
    value = float(diff @ diff + np.trace(cov_a + cov_b - 2.0 * covmean))
    # numerically tiny negatives are zero
    return max(value, 0.0) if value > -1e-8 else value


def frechet_distance(feats_a: np.ndarray, feats_b: np.ndarray, eps_reg: float = 1e-6) -> float:
    """Squared Frechet distance between Gaussian fits of two feature sets."""
    fit_a = GaussianFit.fit(feats_a)
    fit_b = GaussianFit.fit(feats_b)
    return frechet_from_fits(fit_a, fit_b, eps_reg=eps_reg)
