"""Frame classifier: voicing gate, then a coarse-to-fine search of the
approximation bands for pitch-like lag regularity."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dwt import haar_step
from .errors import ConfigError
from .framing import Frame, frame_length, make_frames
from .periodicity import autocorrelate, lag_regularity, pick_peaks
from .signal_io import Signal
from .voicing import SILENCE_FLOOR, classify_voicing


@dataclass(frozen=True)
class DetectorConfig:
    """All detector tunables.

    lag_threshold is expressed in signal-rate samples. The level-j
    approximation lives on a grid decimated by 2**j, so a lag spread of s
    coefficient samples counts as s * 2**j signal samples when compared
    against the threshold. Deeper scales therefore need proportionally
    tighter spreads, which keeps the regularity test meaningful on their
    coarse grids.
    """

    frame_ms: float = 64.0
    energy_threshold: float = 0.90
    amp_fraction: float = 0.40
    lag_threshold: int = 8
    max_scale: int = 4

    def __post_init__(self):
        if self.frame_ms <= 0:
            raise ConfigError(f"frame_ms must be positive, got {self.frame_ms}")
        if not 0.0 < self.energy_threshold < 1.0:
            raise ConfigError(
                f"energy_threshold must be in (0, 1), got {self.energy_threshold}"
            )
        if not 0.0 < self.amp_fraction < 1.0:
            raise ConfigError(
                f"amp_fraction must be in (0, 1), got {self.amp_fraction}"
            )
        if self.lag_threshold < 0:
            raise ConfigError(
                f"lag_threshold must be >= 0, got {self.lag_threshold}"
            )
        if self.max_scale < 1:
            raise ConfigError(f"max_scale must be >= 1, got {self.max_scale}")

    def frame_length(self, sample_rate: int) -> int:
        n = frame_length(sample_rate, self.frame_ms)
        if 2**self.max_scale > n:
            raise ConfigError(
                f"max_scale {self.max_scale} needs frames of at least"
                f" {2 ** self.max_scale} samples, frame length is {n}"
            )
        return n


@dataclass
class ScaleDiagnostic:
    """Per-scale analysis record, the textual analogue of a band trace."""

    scale: int
    approx_energy_fraction: float
    peak_lags: tuple[int, ...]
    lag_spread: int | None
    periodic: bool

    @property
    def lag_spread_signal(self) -> int | None:
        """Lag spread converted to signal-rate samples."""
        if self.lag_spread is None:
            return None
        return self.lag_spread * 2**self.scale


@dataclass
class FrameDecision:
    index: int
    voiced: bool
    detected_scale: int | None
    usable: bool
    approx_energy_fraction: float = 0.0
    diagnostics: tuple[ScaleDiagnostic, ...] = field(default=())


def _scan_scales(samples: np.ndarray, config: DetectorConfig, stop_early: bool):
    """Analyze approximation bands 1..max_scale; stop at the first periodic
    one when stop_early is set. Returns (detected_scale, diagnostics)."""
    total_energy = float(np.dot(samples, samples))
    diagnostics: list[ScaleDiagnostic] = []
    detected = None
    current = samples
    for j in range(1, config.max_scale + 1):
        current = haar_step(current, j).approx
        band_energy = float(np.dot(current, current))
        fraction = band_energy / total_energy if total_energy > 0 else 0.0
        if band_energy < SILENCE_FLOOR:
            diagnostics.append(ScaleDiagnostic(j, fraction, (), None, False))
            continue
        peaks = pick_peaks(autocorrelate(current), config.amp_fraction)
        # threshold in signal-rate samples: spread * 2**j < lag_threshold
        verdict = lag_regularity(peaks, config.lag_threshold / 2**j)
        diagnostics.append(
            ScaleDiagnostic(
                j,
                fraction,
                tuple(p.lag for p in peaks),
                verdict.lag_spread,
                verdict.periodic,
            )
        )
        if verdict.periodic and detected is None:
            detected = j
            if stop_early:
                break
    return detected, tuple(diagnostics)


def classify_frame(frame: Frame, config: DetectorConfig) -> FrameDecision:
    """Voicing gate, then first-hit periodicity search over the scales."""
    samples = np.asarray(frame.samples, dtype=np.float64)
    if 2**config.max_scale > len(samples):
        raise ConfigError(
            f"frame of {len(samples)} samples is too short for"
            f" max_scale {config.max_scale}"
        )
    voicing = classify_voicing(samples, config.energy_threshold)
    if not voicing.voiced:
        return FrameDecision(
            frame.index, False, None, False, voicing.approx_energy_fraction
        )
    detected, diagnostics = _scan_scales(samples, config, stop_early=True)
    return FrameDecision(
        frame.index,
        True,
        detected,
        detected is not None,
        voicing.approx_energy_fraction,
        diagnostics,
    )


def classify_signal(signal: Signal, config: DetectorConfig) -> list[FrameDecision]:
    """Classify every full frame of the signal, in frame order."""
    config.frame_length(signal.sample_rate)
    return [classify_frame(f, config) for f in make_frames(signal, config.frame_ms)]


def scan_signal(signal: Signal, config: DetectorConfig):
    """Threshold-independent per-frame analysis used by threshold sweeps.

    For each frame returns (voiced, spreads) where spreads[j-1] is the raw
    lag spread at scale j (None when fewer than three peaks qualify). The
    qualifying peaks do not depend on lag_threshold, so one scan serves
    every threshold.
    """
    config.frame_length(signal.sample_rate)
    out = []
    for frame in make_frames(signal, config.frame_ms):
        samples = np.asarray(frame.samples, dtype=np.float64)
        voicing = classify_voicing(samples, config.energy_threshold)
        if not voicing.voiced:
            out.append((False, ()))
            continue
        _, diagnostics = _scan_scales(samples, config, stop_early=False)
        out.append((True, tuple(d.lag_spread for d in diagnostics)))
    return out


def decision_from_spreads(spreads, lag_threshold: float) -> int | None:
    """First scale whose signal-rate spread is under the threshold."""
    for j, spread in enumerate(spreads, 1):
        if spread is not None and spread * 2**j < lag_threshold:
            return j
    return None
