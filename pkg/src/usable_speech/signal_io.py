"""Audio and tabular I/O: RIFF/WAV parsing, decimation to 8 kHz, CSV."""

from __future__ import annotations

import csv
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from scipy.signal import firwin

from .errors import AudioFormatError, DataError, EmptyAudioError

WAVE_FORMAT_PCM = 0x0001
WAVE_FORMAT_IEEE_FLOAT = 0x0003
WAVE_FORMAT_EXTENSIBLE = 0xFFFE

# Anti-alias filter for the 16 kHz -> 8 kHz path: linear-phase windowed-sinc,
# cutoff below the new Nyquist so pitch-band analysis sees no aliased energy.
_DECIMATION_TAPS = 255
_DECIMATION_CUTOFF_HZ = 3600.0


@dataclass
class Signal:
    """Mono sample sequence with its sample rate."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise DataError("Signal samples must be one-dimensional")
        if self.sample_rate <= 0:
            raise DataError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(self.samples)):
            raise DataError("Signal samples must be finite")

    def __len__(self) -> int:
        return len(self.samples)

    def energy(self) -> float:
        return float(np.dot(self.samples, self.samples))


def _read_chunks(raw: bytes, path: str):
    """Yield (chunk id, payload) pairs from a RIFF/WAVE byte string."""
    if len(raw) < 12 or raw[0:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise AudioFormatError(f"{path}: not a RIFF/WAVE file")
    pos = 12
    while pos + 8 <= len(raw):
        cid = raw[pos : pos + 4]
        size = struct.unpack_from("<I", raw, pos + 4)[0]
        body = raw[pos + 8 : pos + 8 + size]
        yield cid, body
        pos += 8 + size + (size & 1)  # chunks are word-aligned


def read_wav(path: str | Path) -> Signal:
    """Read a PCM WAV file into a Signal.

    Supports 16-bit integer and 32-bit float samples, mono or multichannel
    (channels are averaged). Integer samples are scaled by 1/32768 so that
    -32768 maps exactly to -1.0.
    """
    raw = Path(path).read_bytes()
    fmt = None
    data = None
    for cid, body in _read_chunks(raw, str(path)):
        if cid == b"fmt " and fmt is None:
            if len(body) < 16:
                raise AudioFormatError(f"{path}: truncated fmt chunk")
            fmt = struct.unpack_from("<HHIIHH", body, 0)
            if fmt[0] == WAVE_FORMAT_EXTENSIBLE and len(body) >= 40:
                sub = struct.unpack_from("<H", body, 24)[0]
                fmt = (sub,) + fmt[1:]
        elif cid == b"data" and data is None:
            data = body
    if fmt is None:
        raise AudioFormatError(f"{path}: missing fmt chunk")
    if data is None:
        raise AudioFormatError(f"{path}: missing data chunk")

    codec, channels, rate, _, block_align, bits = fmt
    if channels < 1:
        raise AudioFormatError(f"{path}: invalid channel count {channels}")
    if codec == WAVE_FORMAT_PCM and bits == 16:
        dtype = np.dtype("<i2")
    elif codec == WAVE_FORMAT_IEEE_FLOAT and bits == 32:
        dtype = np.dtype("<f4")
    else:
        raise AudioFormatError(
            f"{path}: unsupported codec/bit depth (format tag {codec}, {bits}-bit);"
            " only 16-bit PCM and 32-bit float are readable"
        )

    usable = (len(data) // (dtype.itemsize * channels)) * dtype.itemsize * channels
    frames = np.frombuffer(data[:usable], dtype=dtype)
    if frames.size == 0:
        raise EmptyAudioError(f"{path}: zero-length audio")
    frames = frames.reshape(-1, channels).astype(np.float64)
    if dtype.kind == "i":
        frames /= 32768.0
    mono = frames.mean(axis=1)
    return Signal(mono, rate)


def write_wav(signal: Signal, path: str | Path, fmt: str = "int16") -> None:
    """Write a Signal as a mono WAV file (16-bit PCM or 32-bit float)."""
    if fmt == "int16":
        scaled = np.clip(np.rint(signal.samples * 32768.0), -32768, 32767)
        payload = scaled.astype("<i2").tobytes()
        codec, bits = WAVE_FORMAT_PCM, 16
    elif fmt == "float32":
        payload = signal.samples.astype("<f4").tobytes()
        codec, bits = WAVE_FORMAT_IEEE_FLOAT, 32
    else:
        raise DataError(f"unsupported WAV output format {fmt!r}")
    block = bits // 8
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        codec,
        1,
        signal.sample_rate,
        signal.sample_rate * block,
        block,
        bits,
        b"data",
        len(payload),
    )
    Path(path).write_bytes(header + payload)


def downsample_to_8k(signal: Signal) -> Signal:
    """Resample a 16 kHz signal to 8 kHz; 8 kHz input passes through.

    Applies a linear-phase low-pass FIR (windowed sinc, cutoff 3.6 kHz)
    before taking every second sample, so energy above the new Nyquist
    cannot alias into the pitch analysis bands.
    """
    if signal.sample_rate == 8000:
        return signal
    if signal.sample_rate != 16000:
        raise DataError(
            f"unsupported input rate {signal.sample_rate} Hz; expected 8000 or 16000"
        )
    taps = firwin(_DECIMATION_TAPS, _DECIMATION_CUTOFF_HZ, fs=16000.0)
    filtered = np.convolve(signal.samples, taps, mode="same")
    return Signal(filtered[::2], 8000)


def write_csv(
    rows: Sequence[Mapping[str, object]],
    path: str | Path,
    fieldnames: Sequence[str] | None = None,
) -> None:
    """Write records as CSV with a header row and LF line endings.

    All records must share one schema. Floats are printed with full
    round-trip precision (repr), so re-parsing recovers them exactly.
    """
    rows = list(rows)
    if fieldnames is None:
        if not rows:
            raise DataError("cannot infer CSV header from an empty row set")
        fieldnames = list(rows[0].keys())
    for i, row in enumerate(rows):
        if list(row.keys()) != list(fieldnames):
            raise DataError(f"row {i} does not match the CSV schema {list(fieldnames)}")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            writer.writerow([_format_field(row[name]) for name in fieldnames])


def read_csv(path: str | Path) -> list[dict[str, str]]:
    """Read a CSV written by write_csv back into raw string records."""
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _format_field(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)
