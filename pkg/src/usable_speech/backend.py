"""Kernel backend selection.

The hot per-frame kernels exist twice: numba-compiled loops and a pure
numpy fallback. Selection happens once at import time from the
USABLE_SPEECH_BACKEND environment variable:

    USABLE_SPEECH_BACKEND=numba   force numba (error if not installed)
    USABLE_SPEECH_BACKEND=numpy   force the numpy fallback
    unset                         numba when importable, else numpy
"""

from __future__ import annotations

import os

from .errors import ConfigError

_ENV_VAR = "USABLE_SPEECH_BACKEND"


def _load(name: str):
    if name == "numpy":
        from . import _kernels_numpy as mod
        return mod
    if name == "numba":
        from . import _kernels_numba as mod
        return mod
    raise ConfigError(f"unknown backend {name!r}, expected 'numba' or 'numpy'")


def _select() -> tuple[str, object]:
    requested = os.environ.get(_ENV_VAR, "").strip().lower()
    if requested:
        return requested, _load(requested)
    try:
        return "numba", _load("numba")
    except ImportError:
        return "numpy", _load("numpy")


_name, _mod = _select()

haar_analysis = _mod.haar_analysis
haar_synthesis = _mod.haar_synthesis
autocorr_normalized = _mod.autocorr_normalized
qualifying_maxima = _mod.qualifying_maxima


def active_backend() -> str:
    """Name of the kernel backend chosen at import time."""
    return _name
