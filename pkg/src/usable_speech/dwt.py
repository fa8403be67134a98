"""Orthonormal Haar dyadic wavelet analysis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend


@dataclass
class DwtLevel:
    """One analysis level: low-band approx, high-band detail, 1-based scale."""

    approx: np.ndarray
    detail: np.ndarray
    scale_index: int

    def __post_init__(self):
        if len(self.approx) != len(self.detail):
            raise ValueError("approx and detail must have equal length")
        if self.scale_index < 1:
            raise ValueError("scale_index must be >= 1")


def haar_step(x: np.ndarray, scale_index: int = 1) -> DwtLevel:
    """One orthonormal Haar step: approx[k] = (x[2k]+x[2k+1])/sqrt(2),
    detail[k] = (x[2k]-x[2k+1])/sqrt(2). An odd trailing sample is dropped.
    """
    x = np.asarray(x, dtype=np.float64)
    if len(x) < 2:
        raise ValueError(f"need at least 2 samples, got {len(x)}")
    approx, detail = backend.haar_analysis(x)
    return DwtLevel(approx, detail, scale_index)


def haar_inverse(level: DwtLevel) -> np.ndarray:
    """Reconstruct the input of one Haar step (exact for even-length input)."""
    return backend.haar_synthesis(
        np.asarray(level.approx, dtype=np.float64),
        np.asarray(level.detail, dtype=np.float64),
    )


def decompose(x: np.ndarray, max_scale: int) -> list[DwtLevel]:
    """Iterate haar_step on successive approximations, scales 1..max_scale."""
    x = np.asarray(x, dtype=np.float64)
    if max_scale < 1:
        raise ValueError(f"max_scale must be >= 1, got {max_scale}")
    if len(x) < 2**max_scale:
        raise ValueError(
            f"input of {len(x)} samples is too short for {max_scale} scales"
        )
    levels = []
    current = x
    for j in range(1, max_scale + 1):
        level = haar_step(current, j)
        levels.append(level)
        current = level.approx
    return levels
