import math

import numpy as np
import pytest

from usable_speech import (
    DataError,
    Mixture,
    Signal,
    frame_tir,
    label_frames,
    measure_tir_db,
    mix_at_tir,
)
from usable_speech.framing import Frame
from tests.conftest import lowpass_noise, tone


def speech_shaped(seed, n=8192):
    return Signal(lowpass_noise(n, 2000, seed=seed), 8000)


class TestMixAtTir:
    @staticmethod
    def equal_energy_pair():
        t = tone(200, 4096, amplitude=0.4)
        i = tone(307, 4096, amplitude=0.4)
        i *= np.sqrt(np.dot(t, t) / np.dot(i, i))
        return Signal(t, 8000), Signal(i, 8000)

    def test_equal_energy_zero_db_gain_is_one(self):
        t, i = self.equal_energy_pair()
        mixture = mix_at_tir(t, i, 0.0)
        np.testing.assert_allclose(
            mixture.interferer.energy(), i.energy(), rtol=1e-9
        )

    def test_equal_energy_20db_gain_is_tenth(self):
        t, i = self.equal_energy_pair()
        mixture = mix_at_tir(t, i, 20.0)
        np.testing.assert_allclose(
            mixture.interferer.energy(), i.energy() / 100.0, rtol=1e-9
        )

    @pytest.mark.parametrize("tir", [-40, -20, -10, 0, 10, 20, 40])
    def test_round_trip_within_microdb(self, tir):
        mixture = mix_at_tir(speech_shaped(1), speech_shaped(2), tir)
        measured = measure_tir_db(mixture.target, mixture.interferer)
        assert abs(measured - tir) < 1e-6

    def test_truncates_to_common_length(self):
        t = Signal(tone(200, 5000), 8000)
        i = Signal(tone(331, 3000), 8000)
        mixture = mix_at_tir(t, i, 0.0)
        assert len(mixture.mixed) == len(mixture.target) == 3000
        assert len(mixture.interferer) == 3000

    def test_peak_rescue_keeps_tir_and_caps_peak(self):
        t = Signal(tone(200, 4096, amplitude=0.9), 8000)
        i = Signal(tone(250, 4096, amplitude=0.9), 8000)
        mixture = mix_at_tir(t, i, 0.0)
        assert np.max(np.abs(mixture.mixed.samples)) <= 1.0 + 1e-12
        assert abs(measure_tir_db(mixture.target, mixture.interferer)) < 1e-9

    def test_rate_mismatch(self):
        with pytest.raises(DataError):
            mix_at_tir(Signal(tone(100, 512), 8000), Signal(tone(100, 512, 16000), 16000), 0)

    def test_zero_energy_rejected(self):
        with pytest.raises(DataError):
            mix_at_tir(Signal(np.zeros(512), 8000), speech_shaped(3, 512), 0)

    def test_bad_category_rejected(self):
        with pytest.raises(DataError):
            mix_at_tir(speech_shaped(1), speech_shaped(2), 0.0, "male-robot")

    def test_component_lengths_match_mixed(self):
        mixture = mix_at_tir(speech_shaped(1), speech_shaped(2), 0.0, "male-male")
        assert len(mixture.mixed) == len(mixture.target) == len(mixture.interferer)


class TestFrameTir:
    def frame(self, samples, index=0):
        return Frame(index, np.asarray(samples, dtype=np.float64), 0)

    def test_identical_frames_zero_db(self):
        x = tone(150, 512)
        assert abs(frame_tir(self.frame(x), self.frame(x))) < 1e-12

    def test_ten_times_amplitude_is_twenty_db(self):
        x = tone(150, 512)
        assert abs(frame_tir(self.frame(10 * x), self.frame(x)) - 20.0) < 1e-9

    def test_silent_interferer_gives_positive_infinity(self):
        assert frame_tir(self.frame(tone(150, 512)), self.frame(np.zeros(512))) == math.inf

    def test_silent_target_gives_negative_infinity(self):
        assert frame_tir(self.frame(np.zeros(512)), self.frame(tone(150, 512))) == -math.inf

    def test_both_silent_skipped(self):
        assert frame_tir(self.frame(np.zeros(512)), self.frame(np.zeros(512))) is None

    def test_length_mismatch(self):
        with pytest.raises(DataError):
            frame_tir(self.frame(np.ones(512)), self.frame(np.ones(256)))


class TestLabelFrames:
    def manual_mixture(self, target, interferer):
        rate = 8000
        return Mixture(
            Signal(target + interferer, rate),
            Signal(target, rate),
            Signal(interferer, rate),
            math.inf,
        )

    def test_dominance_flip_at_boundary(self, config):
        n = 512 * 4
        target = np.concatenate([tone(150, n // 2), np.zeros(n // 2)])
        interferer = np.concatenate([np.zeros(n // 2), tone(211, n // 2)])
        labels = label_frames(self.manual_mixture(target, interferer), config)
        assert [l.usable_truth for l in labels] == [True, True, False, False]
        assert labels[0].frame_tir_db == math.inf
        assert labels[3].frame_tir_db == -math.inf

    def test_both_silent_frames_are_skipped(self, config):
        target = np.concatenate([tone(150, 512), np.zeros(512), tone(150, 512)])
        interferer = np.zeros(512 * 3)
        interferer[2 * 512 :] = 0.01 * tone(211, 512)
        labels = label_frames(self.manual_mixture(target, interferer), config)
        assert [l.index for l in labels] == [0, 2]

    def test_gain_invariance_of_labels(self, config):
        t = lowpass_noise(4096, 1500, seed=10)
        i = lowpass_noise(4096, 1500, seed=11)
        base = label_frames(self.manual_mixture(t, i), config)
        scaled = label_frames(self.manual_mixture(7.0 * t, 7.0 * i), config)
        for a, b in zip(base, scaled):
            assert a.usable_truth == b.usable_truth
            assert abs(a.frame_tir_db - b.frame_tir_db) < 1e-9

    def test_same_waveform_zero_db_all_unusable(self, config):
        x = tone(150, 512 * 3, amplitude=0.3)
        labels = label_frames(self.manual_mixture(x, x.copy()), config)
        assert len(labels) == 3
        assert all(not l.usable_truth for l in labels)
        assert all(abs(l.frame_tir_db) < 1e-9 for l in labels)

    def test_absolute_mode_counts_either_talker(self, config):
        n = 512 * 2
        target = np.concatenate([tone(150, 512), np.zeros(512)])
        interferer = np.concatenate([np.zeros(512), tone(211, 512)])
        mixture = self.manual_mixture(target, interferer)
        signed = label_frames(mixture, config)
        absolute = label_frames(mixture, config, absolute_tir=True)
        assert [l.usable_truth for l in signed] == [True, False]
        assert [l.usable_truth for l in absolute] == [True, True]

    def test_framewise_ratios_pool_back_to_global(self, config):
        # interferer-energy-weighted mean of per-frame linear ratios equals
        # the global energy ratio when frames tile the signal exactly
        n = 512 * 8
        mixture = mix_at_tir(
            Signal(lowpass_noise(n, 2000, seed=21), 8000),
            Signal(lowpass_noise(n, 2000, seed=22), 8000),
            0.0,
        )
        from usable_speech.framing import make_frames

        num = denom = 0.0
        for tf, if_ in zip(
            make_frames(mixture.target, config.frame_ms),
            make_frames(mixture.interferer, config.frame_ms),
        ):
            e_t = float(np.dot(tf.samples, tf.samples))
            e_i = float(np.dot(if_.samples, if_.samples))
            num += (e_t / e_i) * e_i
            denom += e_i
        np.testing.assert_allclose(num / denom, 1.0, rtol=1e-9)

    def test_threshold_boundary_is_inclusive(self, config):
        target = 10 ** (20.0 / 20.0) * tone(150, 512)
        interferer = tone(211, 512) * np.sqrt(
            np.dot(target, target) / np.dot(tone(211, 512), tone(211, 512))
        ) / 10.0
        mixture = self.manual_mixture(target, interferer)
        labels = label_frames(mixture, config)
        assert abs(labels[0].frame_tir_db - 20.0) < 1e-9
        assert labels[0].usable_truth
