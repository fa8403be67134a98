#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot kernels on realistic frame workloads, then the full
per-frame classification pipeline under the active backend. Run:

    python benchmarks/bench_kernels.py [--frames 2000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from usable_speech import DetectorConfig, Signal, active_backend
from usable_speech import _kernels_numpy as np_kernels
from usable_speech.classifier import classify_signal
from usable_speech.synth import single_talker

try:
    from usable_speech import _kernels_numba as nb_kernels
except ImportError:
    nb_kernels = None


def time_call(fn, args_iter, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for args in args_iter:
            fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_kernels(frames):
    rng = np.random.default_rng(0)
    frame_data = [(rng.standard_normal(512),) for _ in range(frames)]
    approx_data = [(rng.standard_normal(256),) for _ in range(frames)]
    acf_data = [(np_kernels.autocorr_normalized(x[0]), 0.4) for x in approx_data]

    cases = [
        ("haar_analysis (512)", frame_data),
        ("autocorr_normalized (256)", approx_data),
        ("qualifying_maxima (256)", acf_data),
    ]
    print(f"{'kernel':<28} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for name, data in cases:
        fn_np = getattr(np_kernels, name.split()[0])
        t_np = time_call(fn_np, data)
        if nb_kernels is None:
            print(f"{name:<28} {t_np * 1e3:>8.1f}ms {'n/a':>10} {'n/a':>9}")
            continue
        fn_nb = getattr(nb_kernels, name.split()[0])
        fn_nb(*data[0])  # trigger JIT before timing
        t_nb = time_call(fn_nb, data)
        print(
            f"{name:<28} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms"
            f" {t_np / t_nb:>8.1f}x"
        )


def bench_pipeline(frames):
    seconds = frames * 512 / 8000
    voice = single_talker(130.0, seed=1, n_slots=max(2, int(seconds / 0.96) + 1))
    signal = Signal(voice.samples[: frames * 512], 8000)
    config = DetectorConfig()
    classify_signal(signal, config)  # warm up (JIT, caches)
    start = time.perf_counter()
    decisions = classify_signal(signal, config)
    elapsed = time.perf_counter() - start
    rate = len(decisions) / elapsed
    print(
        f"\nclassify_signal [{active_backend()} backend]:"
        f" {len(decisions)} frames in {elapsed:.2f}s"
        f" ({rate:,.0f} frames/s, {rate * 0.064:,.0f}x realtime)"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--frames", type=int, default=2000)
    args = parser.parse_args()
    bench_kernels(args.frames)
    bench_pipeline(args.frames)


if __name__ == "__main__":
    main()
