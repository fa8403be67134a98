import numpy as np

from usable_speech.synth import (
    FRAME_LEN,
    SAMPLE_RATE,
    SPEAKER_PAIRS,
    build_corpus,
    single_talker,
    utterance_pair,
    vowel_segment,
)


def test_corpus_is_deterministic():
    first = build_corpus()
    second = build_corpus()
    for a, b in zip(first, second):
        assert a.category == b.category
        np.testing.assert_array_equal(a.target.samples, b.target.samples)
        np.testing.assert_array_equal(a.interferer.samples, b.interferer.samples)


def test_corpus_covers_all_categories_with_pitches_in_range():
    corpus = build_corpus()
    assert {p.category for p in corpus} == {
        "male-male", "female-female", "male-female"
    }
    for category, f0_t, f0_i, _ in SPEAKER_PAIRS:
        assert 100.0 <= f0_t <= 220.0
        assert 100.0 <= f0_i <= 220.0


def test_pair_signals_share_length_and_rate():
    target, interferer = utterance_pair(104.0, 183.0, seed=3)
    assert target.sample_rate == interferer.sample_rate == SAMPLE_RATE
    assert len(target) == len(interferer)
    assert len(target) % FRAME_LEN == 0


def test_solo_slots_leave_interferer_silent():
    target, interferer = utterance_pair(104.0, 183.0, seed=3, solo_slots=(0,))
    slot_span = 15 * FRAME_LEN  # 13 vowel frames + 2 gap frames
    assert not np.any(interferer.samples[:slot_span])
    assert np.any(target.samples[:slot_span])


def test_vowel_segment_is_unit_rms():
    rng = np.random.default_rng(1)
    seg = vowel_segment(130.0, 4096, rng)
    rms = np.sqrt(np.mean(seg**2))
    assert abs(rms - 1.0) < 1e-9


def test_single_talker_has_voiced_and_silent_stretches():
    sig = single_talker(140.0, seed=2, n_slots=3)
    frames = sig.samples.reshape(-1, FRAME_LEN)
    energies = (frames**2).sum(axis=1)
    assert (energies < 1e-10).any()
    assert (energies > 1.0).any()
