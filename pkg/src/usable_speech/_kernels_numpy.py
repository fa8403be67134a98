"""Pure-numpy implementations of the hot per-frame kernels.

These are the fallback path when numba is unavailable or disabled via
USABLE_SPEECH_BACKEND=numpy. Semantics must match _kernels_numba exactly.
"""

from __future__ import annotations

import numpy as np

INV_SQRT2 = 1.0 / np.sqrt(2.0)


def haar_analysis(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One orthonormal Haar analysis step; an odd trailing sample is dropped."""
    n = (len(x) // 2) * 2
    even = x[0:n:2]
    odd = x[1:n:2]
    return (even + odd) * INV_SQRT2, (even - odd) * INV_SQRT2


def haar_synthesis(approx: np.ndarray, detail: np.ndarray) -> np.ndarray:
    """Inverse of haar_analysis for equal-length coefficient bands."""
    out = np.empty(2 * len(approx), dtype=np.float64)
    out[0::2] = (approx + detail) * INV_SQRT2
    out[1::2] = (approx - detail) * INV_SQRT2
    return out


def autocorr_normalized(x: np.ndarray) -> np.ndarray:
    """Biased full-lag autocorrelation, normalized so r[0] = 1.

    r[l] = sum_k x[k] * x[k+l] for l = 0..n-1. Caller guarantees nonzero
    energy.
    """
    n = len(x)
    r = np.correlate(x, x, mode="full")[n - 1 :]
    return r / r[0]


def qualifying_maxima(r: np.ndarray, amp_fraction: float) -> tuple[np.ndarray, np.ndarray]:
    """Local maxima of r at lags >= 1 with value >= amp_fraction.

    A lag l is a local maximum when r[l] > r[l-1] and r[l] >= r[l+1]; the
    last lag only needs to beat its left neighbour. The first index of a
    plateau wins. Returns (lags, values) in ascending lag order.
    """
    n = len(r)
    if n < 2:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64)
    left = r[1:] > r[:-1]
    right = np.empty(n - 1, dtype=bool)
    right[:-1] = r[1:-1] >= r[2:]
    right[-1] = True
    mask = left & right & (r[1:] >= amp_fraction)
    lags = np.nonzero(mask)[0] + 1
    return lags.astype(np.int64), r[lags]
