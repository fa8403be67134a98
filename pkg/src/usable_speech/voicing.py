"""Voiced/unvoiced classification via the approximation-energy criterion."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dwt import haar_step

# Sum-of-squares floor below which a frame counts as silence (unvoiced).
SILENCE_FLOOR = 1e-10


@dataclass
class VoicingVerdict:
    voiced: bool
    approx_energy_fraction: float


def classify_voicing(frame, energy_threshold: float = 0.90) -> VoicingVerdict:
    """Voiced iff the one-step approximation band holds strictly more than
    energy_threshold of the frame's energy. Frames below the silence floor
    are unvoiced with the fraction reported as 0.
    """
    if not 0.0 < energy_threshold < 1.0:
        raise ValueError(f"energy_threshold must be in (0, 1), got {energy_threshold}")
    samples = np.asarray(getattr(frame, "samples", frame), dtype=np.float64)
    level = haar_step(samples)
    e_approx = float(np.dot(level.approx, level.approx))
    e_detail = float(np.dot(level.detail, level.detail))
    total = e_approx + e_detail
    if total < SILENCE_FLOOR:
        return VoicingVerdict(False, 0.0)
    fraction = e_approx / total
    return VoicingVerdict(fraction > energy_threshold, fraction)
