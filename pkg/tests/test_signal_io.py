import struct

import numpy as np
import pytest

from usable_speech import (
    AudioFormatError,
    DataError,
    EmptyAudioError,
    Signal,
    downsample_to_8k,
    read_wav,
    write_csv,
    write_wav,
)
from usable_speech.signal_io import read_csv
from tests.conftest import tone


def wav_bytes(payload, codec=1, channels=1, rate=8000, bits=16):
    block = bits // 8 * channels
    return (
        struct.pack(
            "<4sI4s4sIHHIIHH4sI",
            b"RIFF",
            36 + len(payload),
            b"WAVE",
            b"fmt ",
            16,
            codec,
            channels,
            rate,
            rate * block,
            block,
            bits,
            b"data",
            len(payload),
        )
        + payload
    )


class TestReadWav:
    def test_int16_scaling(self, tmp_path):
        path = tmp_path / "a.wav"
        path.write_bytes(wav_bytes(np.array([0, 16384, -32768], "<i2").tobytes()))
        sig = read_wav(path)
        assert sig.sample_rate == 8000
        np.testing.assert_array_equal(sig.samples, [0.0, 0.5, -1.0])

    def test_stereo_average_float32(self, tmp_path):
        path = tmp_path / "st.wav"
        frames = np.array([1.0, 0.0], "<f4").tobytes()
        path.write_bytes(wav_bytes(frames, codec=3, channels=2, bits=32))
        sig = read_wav(path)
        np.testing.assert_array_equal(sig.samples, [0.5])

    def test_stereo_average_int16(self, tmp_path):
        path = tmp_path / "st16.wav"
        frames = np.array([16384, 0, -16384, -16384], "<i2").tobytes()
        path.write_bytes(wav_bytes(frames, channels=2))
        sig = read_wav(path)
        np.testing.assert_array_equal(sig.samples, [0.25, -0.5])

    def test_empty_data_chunk(self, tmp_path):
        path = tmp_path / "empty.wav"
        path.write_bytes(wav_bytes(b""))
        with pytest.raises(EmptyAudioError):
            read_wav(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_wav(tmp_path / "absent.wav")

    def test_unsupported_codec(self, tmp_path):
        path = tmp_path / "ulaw.wav"
        path.write_bytes(wav_bytes(b"\x00\x00", codec=7))
        with pytest.raises(AudioFormatError, match="unsupported codec"):
            read_wav(path)

    def test_unsupported_bit_depth(self, tmp_path):
        path = tmp_path / "w8.wav"
        path.write_bytes(wav_bytes(b"\x80\x80", bits=8))
        with pytest.raises(AudioFormatError):
            read_wav(path)

    def test_not_riff(self, tmp_path):
        path = tmp_path / "junk.wav"
        path.write_bytes(b"OggS" + b"\x00" * 64)
        with pytest.raises(AudioFormatError):
            read_wav(path)

    def test_int16_round_trip_is_exact(self, tmp_path):
        rng = np.random.default_rng(4)
        ints = rng.integers(-32768, 32768, size=500)
        sig = Signal(ints / 32768.0, 8000)
        path = tmp_path / "rt.wav"
        write_wav(sig, path)
        back = read_wav(path)
        np.testing.assert_array_equal(back.samples, sig.samples)

    def test_float32_round_trip(self, tmp_path):
        sig = Signal(np.linspace(-1, 1, 64).astype(np.float32), 16000)
        path = tmp_path / "f32.wav"
        write_wav(sig, path, fmt="float32")
        back = read_wav(path)
        assert back.sample_rate == 16000
        np.testing.assert_array_equal(back.samples, sig.samples)


class TestSignal:
    def test_rejects_nan(self):
        with pytest.raises(DataError):
            Signal(np.array([0.0, np.nan]), 8000)

    def test_rejects_bad_rate(self):
        with pytest.raises(DataError):
            Signal(np.zeros(4), 0)


class TestDownsample:
    def test_8k_passthrough(self):
        sig = Signal(tone(440, 800), 8000)
        out = downsample_to_8k(sig)
        np.testing.assert_array_equal(out.samples, sig.samples)
        assert out.sample_rate == 8000

    def test_dc_preserved(self):
        sig = Signal(np.full(4000, 0.25), 16000)
        out = downsample_to_8k(sig)
        assert out.sample_rate == 8000
        mid = out.samples[200:-200]
        np.testing.assert_allclose(mid, 0.25, rtol=1e-3)

    def test_length_is_ceil_half(self):
        for n in (4000, 4001):
            out = downsample_to_8k(Signal(np.zeros(n) + 0.1, 16000))
            assert len(out) == (n + 1) // 2

    def test_6khz_tone_suppressed(self):
        sig = Signal(tone(6000, 16000, rate=16000), 16000)
        out = downsample_to_8k(sig)
        rms_in = np.sqrt(np.mean(sig.samples**2))
        rms_out = np.sqrt(np.mean(out.samples**2))
        assert rms_out < 0.05 * rms_in

    def test_band_limited_rms_preserved(self):
        n = 16000
        x = tone(500, n, rate=16000) + 0.5 * tone(3300, n, rate=16000)
        out = downsample_to_8k(Signal(x, 16000))
        rms_in = np.sqrt(np.mean(x**2))
        rms_out = np.sqrt(np.mean(out.samples**2))
        assert abs(rms_out - rms_in) / rms_in < 0.02

    def test_unsupported_rate(self):
        with pytest.raises(DataError):
            downsample_to_8k(Signal(np.zeros(100), 44100))


class TestCsv:
    def test_single_row(self, tmp_path):
        path = tmp_path / "one.csv"
        write_csv([{"index": 0, "voiced": True, "usable": False}], path)
        text = path.read_text()
        assert text == "index,voiced,usable\n0,true,false\n"

    def test_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_csv([], path, fieldnames=["a", "b"])
        assert path.read_text() == "a,b\n"

    def test_float_round_trip(self, tmp_path):
        rows = [
            {"x": 0.1 + 0.2, "y": float("inf"), "z": -1.2345678912345e-7},
            {"x": -0.0, "y": float("-inf"), "z": 95.76},
            {"x": 1 / 3, "y": 2.0, "z": 0.5},
        ]
        path = tmp_path / "f.csv"
        write_csv(rows, path)
        back = read_csv(path)
        assert len(back) == 3
        for row, orig in zip(back, rows):
            for key in ("x", "y", "z"):
                assert float(row[key]) == orig[key]

    def test_schema_mismatch(self, tmp_path):
        with pytest.raises(DataError):
            write_csv([{"a": 1}, {"b": 2}], tmp_path / "bad.csv")

    def test_empty_without_schema(self, tmp_path):
        with pytest.raises(DataError):
            write_csv([], tmp_path / "bad.csv")
