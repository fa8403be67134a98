"""Pitch-like periodicity detection: autocorrelation, peak picking, and the
lag-regularity test on the three dominant maxima."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend


@dataclass
class AcfPeak:
    lag: int
    value: float


@dataclass
class PeriodicityVerdict:
    periodic: bool
    peaks: tuple[AcfPeak, AcfPeak, AcfPeak] | None = None
    lag_spread: int | None = None


def autocorrelate(coeffs: np.ndarray) -> np.ndarray:
    """Biased autocorrelation r[l] = sum_k c[k]*c[k+l], normalized by r[0].

    Raises ValueError on zero-energy input; callers gate silent bands
    before asking for periodicity.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if len(coeffs) < 2:
        raise ValueError(f"need at least 2 coefficients, got {len(coeffs)}")
    if not np.any(coeffs):
        raise ValueError("zero-energy input has no defined autocorrelation")
    return backend.autocorr_normalized(coeffs)


def pick_peaks(acf: np.ndarray, amp_fraction: float) -> list[AcfPeak]:
    """Qualifying local maxima of a normalized ACF, reduced to at most the
    three largest by value and returned in ascending lag order.

    A local maximum at lag l >= 1 needs r[l] > r[l-1] and r[l] >= r[l+1]
    (the last lag uses its left neighbour only), keeping the first index of
    any plateau. Maxima below amp_fraction are discarded.
    """
    if not 0.0 < amp_fraction < 1.0:
        raise ValueError(f"amp_fraction must be in (0, 1), got {amp_fraction}")
    acf = np.asarray(acf, dtype=np.float64)
    lags, values = backend.qualifying_maxima(acf, amp_fraction)
    if len(lags) > 3:
        # keep the 3 largest values; ties resolved toward smaller lags
        order = np.lexsort((lags, -values))[:3]
        lags, values = lags[order], values[order]
    peaks = [AcfPeak(int(l), float(v)) for l, v in zip(lags, values)]
    peaks.sort(key=lambda p: p.lag)
    return peaks


def lag_regularity(peaks, lag_threshold) -> PeriodicityVerdict:
    """Periodic iff three peaks exist and the difference between their
    successive lag gaps is strictly below lag_threshold."""
    if lag_threshold < 0:
        raise ValueError(f"lag_threshold must be >= 0, got {lag_threshold}")
    peaks = list(peaks)
    if len(peaks) > 3:
        raise ValueError(f"expected at most 3 peaks, got {len(peaks)}")
    if len(peaks) < 3:
        return PeriodicityVerdict(False)
    p1, p2, p3 = sorted(peaks, key=lambda p: p.lag)
    spread = abs((p2.lag - p1.lag) - (p3.lag - p2.lag))
    return PeriodicityVerdict(spread < lag_threshold, (p1, p2, p3), spread)
