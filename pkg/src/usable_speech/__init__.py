"""Usable-speech detection for co-channel (two-talker) audio.

Frames are gated by a low-band energy voicing test, then searched
coarse-to-fine across Haar approximation bands for autocorrelation lag
regularity; a frame is usable when any band shows three dominant,
evenly spaced maxima. The package also ships the mixing, TIR labeling,
and hit/false-alarm machinery needed to evaluate the detector.
"""

__version__ = "0.1.0"

from .backend import active_backend
from .classifier import (
    DetectorConfig,
    FrameDecision,
    ScaleDiagnostic,
    classify_frame,
    classify_signal,
)
from .cochannel import (
    FrameLabel,
    Mixture,
    frame_tir,
    label_frames,
    measure_tir_db,
    mix_at_tir,
)
from .dwt import DwtLevel, decompose, haar_inverse, haar_step
from .errors import (
    AudioFormatError,
    ConfigError,
    DataError,
    EmptyAudioError,
    UsableSpeechError,
)
from .evaluation import EvalCounts, EvalReport, aggregate, score, threshold_sweep
from .framing import Frame, make_frames
from .periodicity import AcfPeak, PeriodicityVerdict, autocorrelate, lag_regularity, pick_peaks
from .signal_io import Signal, downsample_to_8k, read_wav, write_csv, write_wav
from .voicing import VoicingVerdict, classify_voicing

__all__ = [
    "AcfPeak",
    "AudioFormatError",
    "ConfigError",
    "DataError",
    "DetectorConfig",
    "DwtLevel",
    "EmptyAudioError",
    "EvalCounts",
    "EvalReport",
    "Frame",
    "FrameDecision",
    "FrameLabel",
    "Mixture",
    "PeriodicityVerdict",
    "ScaleDiagnostic",
    "Signal",
    "UsableSpeechError",
    "VoicingVerdict",
    "active_backend",
    "aggregate",
    "autocorrelate",
    "classify_frame",
    "classify_signal",
    "classify_voicing",
    "decompose",
    "downsample_to_8k",
    "frame_tir",
    "haar_inverse",
    "haar_step",
    "label_frames",
    "lag_regularity",
    "make_frames",
    "measure_tir_db",
    "mix_at_tir",
    "pick_peaks",
    "read_wav",
    "score",
    "threshold_sweep",
    "write_csv",
    "write_wav",
]
