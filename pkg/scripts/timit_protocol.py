#!/usr/bin/env python3
"""Optional: run the co-channel evaluation protocol on a local TIMIT copy.

Not part of the test gate (TIMIT is licensed and not bundled). Point it at
a TIMIT root whose utterances are RIFF/PCM WAV files; SPHERE-format files
must be converted first. Selects 13 male and 13 female speakers, builds
male-male, female-female, and male-female mixtures at 0 dB overall TIR,
scores hits and false alarms per category, and prints the deviation from
the published reference rows.

    python scripts/timit_protocol.py /path/to/TIMIT [--pairs 6]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from usable_speech import DetectorConfig, Signal
from usable_speech.classifier import classify_signal
from usable_speech.cochannel import label_frames, mix_at_tir
from usable_speech.evaluation import aggregate, score
from usable_speech.signal_io import downsample_to_8k, read_wav

REFERENCE_ROWS = {
    "female-female": (93.02, 32.37),
    "male-male": (98.46, 28.93),
    "male-female": (95.80, 27.66),
    "average": (95.76, 29.65),
}


def find_speakers(root: Path, per_gender: int = 13):
    """Speaker directories grouped by gender, deterministic order."""
    males, females = [], []
    for d in sorted(root.rglob("*")):
        if not d.is_dir():
            continue
        name = d.name.upper()
        if not any(d.glob("*.wav")) and not any(d.glob("*.WAV")):
            continue
        if name.startswith("M") and len(males) < per_gender:
            males.append(d)
        elif name.startswith("F") and len(females) < per_gender:
            females.append(d)
        if len(males) >= per_gender and len(females) >= per_gender:
            break
    return males, females


def speaker_signal(speaker_dir: Path, max_seconds: float = 12.0) -> Signal:
    """Concatenate a speaker's utterances, downsampled to 8 kHz."""
    pieces = []
    total = 0
    for wav in sorted(list(speaker_dir.glob("*.wav")) + list(speaker_dir.glob("*.WAV"))):
        sig = downsample_to_8k(read_wav(wav))
        pieces.append(sig.samples)
        total += len(sig.samples)
        if total >= max_seconds * 8000:
            break
    return Signal(np.concatenate(pieces), 8000)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("timit_root", type=Path)
    parser.add_argument("--pairs", type=int, default=6,
                        help="mixtures per category")
    args = parser.parse_args()

    males, females = find_speakers(args.timit_root)
    if len(males) < 2 or len(females) < 2:
        print(f"error: found {len(males)} male / {len(females)} female speaker"
              f" directories with WAV files under {args.timit_root}",
              file=sys.stderr)
        return 1
    print(f"speakers: {len(males)} male, {len(females)} female")

    config = DetectorConfig()
    pairings = {
        "male-male": [(males[i], males[i + 1]) for i in range(0, len(males) - 1, 2)],
        "female-female": [(females[i], females[i + 1]) for i in range(0, len(females) - 1, 2)],
        "male-female": list(zip(males, females)),
    }

    category_reports = []
    for category, pairs in pairings.items():
        reports = []
        for target_dir, interferer_dir in pairs[: args.pairs]:
            target = speaker_signal(target_dir)
            interferer = speaker_signal(interferer_dir)
            mixture = mix_at_tir(target, interferer, 0.0, category)
            decisions = classify_signal(mixture.mixed, config)
            labels = label_frames(mixture, config)
            reports.append(score(decisions, labels, category))
        merged = aggregate(reports) if len(reports) > 1 else reports[0]
        category_reports.append(
            type(merged)(category, merged.hit_pct, merged.false_alarm_pct, merged.counts)
        )

    overall = aggregate(category_reports)
    print(f"\n{'category':<16} {'hit%':>8} {'FA%':>8} {'ref hit':>8} {'ref FA':>8}"
          f" {'d hit':>7} {'d FA':>7}")
    rows = category_reports + [overall]
    for report in rows:
        ref_hit, ref_fa = REFERENCE_ROWS[report.category]
        hit = report.mean_hit_pct if report.category == "average" else report.hit_pct
        fa = (report.mean_false_alarm_pct if report.category == "average"
              else report.false_alarm_pct)
        print(f"{report.category:<16} {hit:>8.2f} {fa:>8.2f} {ref_hit:>8.2f}"
              f" {ref_fa:>8.2f} {hit - ref_hit:>+7.2f} {fa - ref_fa:>+7.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
