"""Two-talker mixing at a prescribed TIR and frame-level ground truth."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classifier import DetectorConfig
from .errors import DataError
from .framing import Frame, make_frames
from .signal_io import Signal

CATEGORIES = ("male-male", "female-female", "male-female")

# Frame energies below this are treated as silence when labeling.
LABEL_SILENCE_FLOOR = 1e-10


@dataclass
class Mixture:
    """A co-channel mixture plus its gain-applied component signals."""

    mixed: Signal
    target: Signal
    interferer: Signal
    overall_tir_db: float
    category: str | None = None

    def __post_init__(self):
        if self.category is not None and self.category not in CATEGORIES:
            raise DataError(
                f"category must be one of {CATEGORIES}, got {self.category!r}"
            )


@dataclass
class FrameLabel:
    index: int
    frame_tir_db: float
    usable_truth: bool


def mix_at_tir(
    target: Signal,
    interferer: Signal,
    overall_tir_db: float,
    category: str | None = None,
) -> Mixture:
    """Mix two talkers so the global energy ratio equals overall_tir_db.

    Both inputs are truncated to the common length. The interferer receives
    the gain that realizes the requested ratio; if the mix then exceeds
    peak 1, all three signals are rescaled together (TIR unchanged).
    """
    if target.sample_rate != interferer.sample_rate:
        raise DataError(
            f"sample-rate mismatch: {target.sample_rate} vs {interferer.sample_rate}"
        )
    n = min(len(target), len(interferer))
    t = target.samples[:n].copy()
    i = interferer.samples[:n].copy()
    e_t = float(np.dot(t, t))
    e_i = float(np.dot(i, i))
    if e_t < LABEL_SILENCE_FLOOR or e_i < LABEL_SILENCE_FLOOR:
        raise DataError("both talkers need nonzero energy to set a TIR")
    gain = math.sqrt(e_t / (e_i * 10.0 ** (overall_tir_db / 10.0)))
    i *= gain
    mixed = t + i
    peak = float(np.max(np.abs(mixed)))
    if peak > 1.0:
        t /= peak
        i /= peak
        mixed /= peak
    rate = target.sample_rate
    return Mixture(Signal(mixed, rate), Signal(t, rate), Signal(i, rate),
                   overall_tir_db, category)


def measure_tir_db(target: Signal, interferer: Signal) -> float:
    """Global 10*log10 energy ratio between two component signals."""
    return 10.0 * math.log10(target.energy() / interferer.energy())


def frame_tir(target_frame: Frame, interferer_frame: Frame) -> float | None:
    """Per-frame TIR in dB over gain-applied component frames.

    Silent interferer gives +inf, silent target gives -inf; when both sit
    below the silence floor the frame carries no label (None).
    """
    t = np.asarray(target_frame.samples, dtype=np.float64)
    i = np.asarray(interferer_frame.samples, dtype=np.float64)
    if len(t) != len(i):
        raise DataError(f"frame length mismatch: {len(t)} vs {len(i)}")
    e_t = float(np.dot(t, t))
    e_i = float(np.dot(i, i))
    t_silent = e_t < LABEL_SILENCE_FLOOR
    i_silent = e_i < LABEL_SILENCE_FLOOR
    if t_silent and i_silent:
        return None
    if i_silent:
        return math.inf
    if t_silent:
        return -math.inf
    return 10.0 * math.log10(e_t / e_i)


def label_frames(
    mixture: Mixture,
    config: DetectorConfig,
    tir_usable_threshold: float = 20.0,
    absolute_tir: bool = False,
) -> list[FrameLabel]:
    """Ground-truth labels per frame from the mixture's true components.

    usable_truth holds when the signed frame TIR is at or above the
    threshold; with absolute_tir the magnitude is compared instead (either
    talker dominant counts as usable). Frames where both components are
    silent are skipped.
    """
    target_frames = make_frames(mixture.target, config.frame_ms)
    interferer_frames = make_frames(mixture.interferer, config.frame_ms)
    labels = []
    for tf, if_ in zip(target_frames, interferer_frames):
        tir = frame_tir(tf, if_)
        if tir is None:
            continue
        value = abs(tir) if absolute_tir else tir
        labels.append(FrameLabel(tf.index, tir, value >= tir_usable_threshold))
    return labels
