import numpy as np
import pytest

from usable_speech import DetectorConfig
from usable_speech.classifier import classify_signal
from usable_speech.cochannel import label_frames, mix_at_tir
from usable_speech.synth import build_corpus


def tone(freq_hz, n, rate=8000, amplitude=1.0):
    return amplitude * np.sin(2 * np.pi * freq_hz * np.arange(n) / rate)


def impulse_train(period, n, amplitude=1.0):
    x = np.zeros(n)
    x[::period] = amplitude
    return x


def lowpass_noise(n, cutoff_hz, rate=8000, seed=0):
    """Noise with a voiced-like spectrum (passes the voicing gate)."""
    from scipy.signal import butter, lfilter

    rng = np.random.default_rng(seed)
    b, a = butter(4, cutoff_hz / (rate / 2))
    return lfilter(b, a, rng.standard_normal(n))


@pytest.fixture(scope="session")
def config():
    return DetectorConfig()


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def corpus_runs(corpus, config):
    """Mixture, decisions, and labels per corpus pair at 0 dB overall TIR."""
    runs = []
    for pair in corpus:
        mixture = mix_at_tir(pair.target, pair.interferer, 0.0, pair.category)
        runs.append(
            (
                pair.category,
                mixture,
                classify_signal(mixture.mixed, config),
                label_frames(mixture, config),
            )
        )
    return runs
