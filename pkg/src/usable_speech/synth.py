"""Deterministic synthetic voice corpus for evaluation at desk scale.

Utterances are glottal-pulse trains (per-period jitter and shimmer, slow
drift and slide) shaped by two-resonance formant filters, organized into
frame-aligned syllable slots. A corpus pair puts the target talker in
every slot and the interferer in all but a few reserved ones, with the
interferer syllable energy-matched to the target per analysis frame so
overlapped frames sit near 0 dB where periodicity is genuinely contested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .signal_io import Signal

SAMPLE_RATE = 8000
FRAME_LEN = 512          # 64 ms at 8 kHz
SLOT_FRAMES = 13         # syllable length in frames
GAP_FRAMES = 2           # silence between syllables
EDGE_FADE = 120          # samples, fades stay inside the first/last frame

# Two-resonance vowel colors. Bandwidths are wide so resonator ringing
# decays within a pitch period and cannot masquerade as comb peaks.
FORMANT_SETS = (
    ((660.0, 290.0), (1100.0, 330.0)),
    ((420.0, 260.0), (1000.0, 300.0)),
    ((540.0, 280.0), (1350.0, 340.0)),
)

# Fixed speaker pairs: category, target pitch, interferer pitch, seed.
# Pitches span 100-220 Hz; pairs avoid lag-lattice coincidences that a
# regularity test cannot distinguish from true pitch.
SPEAKER_PAIRS = (
    ("male-male", 101.0, 116.0, 11),
    ("male-male", 105.0, 120.0, 55),
    ("female-female", 152.0, 189.0, 22),
    ("female-female", 157.0, 196.0, 66),
    ("male-female", 104.0, 183.0, 33),
    ("male-female", 106.0, 187.0, 44),
)


@dataclass
class CorpusPair:
    category: str
    target: Signal
    interferer: Signal
    target_pitch_hz: float
    interferer_pitch_hz: float


def _resonator_coeffs(freq: float, bandwidth: float, rate: int):
    r = np.exp(-np.pi * bandwidth / rate)
    theta = 2.0 * np.pi * freq / rate
    return [1.0], [1.0, -2.0 * r * np.cos(theta), r * r]


def _jitter_for(f0: float) -> float:
    # higher pitches get proportionally more cycle jitter
    return 0.004 + 0.008 * (f0 - 100.0) / 120.0


def vowel_segment(
    f0: float,
    n: int,
    rng: np.random.Generator,
    formants=FORMANT_SETS[0],
    rate: int = SAMPLE_RATE,
    vibrato_depth: float = 0.012,
    vibrato_hz: float = 2.3,
) -> np.ndarray:
    """One sustained vowel at pitch f0, unit RMS."""
    jitter = _jitter_for(f0)
    excitation = np.zeros(n)
    pos = 0.0
    phase = rng.uniform(0.0, 2.0 * np.pi)
    slide = rng.uniform(-0.008, 0.008)
    while pos < n:
        excitation[int(pos)] = 10.0 ** (rng.normal(0.0, 0.3) / 20.0)
        f = f0 * (1.0 + slide * pos / n)
        f *= 1.0 + vibrato_depth * np.sin(2.0 * np.pi * vibrato_hz * pos / rate + phase)
        pos += rate / f * (1.0 + jitter * rng.standard_normal())
    # short pulse: autocorrelation lobes stay a couple of samples wide, so
    # one talker's comb cannot lift the other's peaks in a mixture
    pulse_len = max(6, int(0.11 * rate / f0))
    k = np.arange(pulse_len)
    pulse = k * np.exp(-k / (pulse_len / 4.0))
    voiced = np.convolve(excitation, pulse)[:n]
    rms = np.sqrt(np.dot(voiced, voiced) / n)
    voiced = voiced + 10.0 ** (-21.0 / 20.0) * rms * rng.standard_normal(n)
    for freq, bandwidth in formants:
        b, a = _resonator_coeffs(freq, bandwidth, rate)
        voiced = lfilter(b, a, voiced)
    # spectral tilt (one-pole low-pass): keeps the voicing gate's low-band
    # share above 0.9 despite the short excitation pulse
    tilt = np.exp(-2.0 * np.pi * 900.0 / rate)
    voiced = lfilter([1.0 - tilt], [1.0, -tilt], voiced)
    return voiced / np.sqrt(np.dot(voiced, voiced) / n)


def _fade_edges(segment: np.ndarray, fade: int = EDGE_FADE) -> np.ndarray:
    fade = min(fade, len(segment) // 2)
    window = np.ones(len(segment))
    window[:fade] = np.linspace(0.0, 1.0, fade)
    window[-fade:] = np.linspace(1.0, 0.0, fade)
    return segment * window


def _match_frame_energy(segment: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Scale each frame-sized block of segment to reference's block energy."""
    out = segment.copy()
    for k in range(len(segment) // FRAME_LEN):
        sl = slice(k * FRAME_LEN, (k + 1) * FRAME_LEN)
        e_ref = float(np.dot(reference[sl], reference[sl]))
        e_seg = float(np.dot(out[sl], out[sl]))
        if e_ref > 1e-12 and e_seg > 1e-12:
            out[sl] *= np.sqrt(e_ref / e_seg)
    return out


def utterance_pair(
    f0_target: float,
    f0_interferer: float,
    seed: int,
    n_slots: int = 12,
    solo_slots: tuple[int, ...] = (2, 7),
    unsteady_slots: tuple[int, ...] = (4, 9),
) -> tuple[Signal, Signal]:
    """Target talks in every slot; the interferer joins every other slot,
    energy-matched to the target frame by frame.

    solo_slots stay target-only (the usable-truth material). In
    unsteady_slots the target sings with heavy vibrato over a quiet
    (-8 dB) interferer: those frames are dominated-but-unsteady, the
    borderline material whose detectability moves with the lag threshold.
    """
    rng = np.random.default_rng(seed)
    slot = SLOT_FRAMES * FRAME_LEN
    gap = GAP_FRAMES * FRAME_LEN
    n = n_slots * (slot + gap)
    target = np.zeros(n)
    interferer = np.zeros(n)
    for s in range(n_slots):
        pos = s * (slot + gap)
        formants = FORMANT_SETS[rng.integers(len(FORMANT_SETS))]
        unsteady = s in unsteady_slots
        seg_t = _fade_edges(
            vowel_segment(
                f0_target,
                slot,
                rng,
                formants,
                vibrato_depth=0.04 if unsteady else 0.012,
                vibrato_hz=6.0 if unsteady else 2.3,
            )
        )
        target[pos : pos + slot] = seg_t
        if s in solo_slots:
            continue
        seg_i = _fade_edges(vowel_segment(f0_interferer, slot, rng, formants))
        seg_i = _match_frame_energy(seg_i, seg_t)
        if unsteady:
            seg_i *= 10.0 ** (-8.0 / 20.0)
        interferer[pos : pos + slot] = seg_i
    return Signal(target, SAMPLE_RATE), Signal(interferer, SAMPLE_RATE)


def single_talker(f0: float, seed: int, n_slots: int = 8) -> Signal:
    """A lone talker: vowel slots separated by silence."""
    rng = np.random.default_rng(seed)
    pieces = []
    for _ in range(n_slots):
        formants = FORMANT_SETS[rng.integers(len(FORMANT_SETS))]
        pieces.append(
            _fade_edges(vowel_segment(f0, SLOT_FRAMES * FRAME_LEN, rng, formants))
        )
        pieces.append(np.zeros(GAP_FRAMES * FRAME_LEN))
    return Signal(np.concatenate(pieces), SAMPLE_RATE)


def build_corpus() -> list[CorpusPair]:
    """The bundled evaluation corpus: fixed pairs, fixed seeds."""
    return [
        CorpusPair(
            category,
            *utterance_pair(f0_t, f0_i, seed),
            target_pitch_hz=f0_t,
            interferer_pitch_hz=f0_i,
        )
        for category, f0_t, f0_i, seed in SPEAKER_PAIRS
    ]
