"""Numba-compiled versions of the hot per-frame kernels.

Importing this module requires numba; backend.py guards the import and
falls back to _kernels_numpy. Results must agree with the numpy kernels
to floating-point roundoff.
"""

from __future__ import annotations

import numpy as np
from numba import njit

INV_SQRT2 = 1.0 / np.sqrt(2.0)


@njit(cache=True)
def haar_analysis(x):
    n = (len(x) // 2) * 2
    half = n // 2
    approx = np.empty(half, dtype=np.float64)
    detail = np.empty(half, dtype=np.float64)
    for k in range(half):
        a = x[2 * k]
        b = x[2 * k + 1]
        approx[k] = (a + b) * INV_SQRT2
        detail[k] = (a - b) * INV_SQRT2
    return approx, detail


@njit(cache=True)
def haar_synthesis(approx, detail):
    half = len(approx)
    out = np.empty(2 * half, dtype=np.float64)
    for k in range(half):
        out[2 * k] = (approx[k] + detail[k]) * INV_SQRT2
        out[2 * k + 1] = (approx[k] - detail[k]) * INV_SQRT2
    return out


@njit(cache=True, fastmath=True)
def autocorr_normalized(x):
    # fastmath lets LLVM vectorize the reduction; the reassociation error
    # (~1e-15 relative) is far inside the 1e-12 oracle tolerance
    n = len(x)
    r = np.empty(n, dtype=np.float64)
    for lag in range(n):
        acc = 0.0
        for k in range(n - lag):
            acc += x[k] * x[k + lag]
        r[lag] = acc
    r0 = r[0]
    for lag in range(n):
        r[lag] /= r0
    r[0] = 1.0  # fastmath reciprocal math may leave r0/r0 one ulp off
    return r


@njit(cache=True)
def qualifying_maxima(r, amp_fraction):
    n = len(r)
    lags = np.empty(n, dtype=np.int64)
    vals = np.empty(n, dtype=np.float64)
    count = 0
    for lag in range(1, n):
        if r[lag] <= r[lag - 1]:
            continue
        if lag + 1 < n and r[lag] < r[lag + 1]:
            continue
        if r[lag] >= amp_fraction:
            lags[count] = lag
            vals[count] = r[lag]
            count += 1
    return lags[:count], vals[:count]
