"""Fixed-length, non-overlapping analysis frames."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .signal_io import Signal


@dataclass
class Frame:
    index: int
    samples: np.ndarray
    start_sample: int


def frame_length(sample_rate: int, frame_ms: float) -> int:
    """Frame length in samples; must come out as a positive integer."""
    exact = sample_rate * frame_ms / 1000.0
    n = round(exact)
    if n <= 0 or abs(exact - n) > 1e-9:
        raise DataError(
            f"frame of {frame_ms} ms is not an integer number of samples"
            f" at {sample_rate} Hz"
        )
    return n


def make_frames(signal: Signal, frame_ms: float) -> list[Frame]:
    """Tile the signal into non-overlapping frames; a trailing partial
    frame is discarded. A signal shorter than one frame yields no frames.
    """
    n = frame_length(signal.sample_rate, frame_ms)
    count = len(signal.samples) // n
    return [
        Frame(i, signal.samples[i * n : (i + 1) * n], i * n) for i in range(count)
    ]
