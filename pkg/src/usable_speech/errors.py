"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 1, OS-level errors -> 2,
DataError (and subclasses) -> 3.
"""


class UsableSpeechError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(UsableSpeechError):
    """Invalid configuration value, config file, or flag combination."""


class DataError(UsableSpeechError):
    """Input data violates a contract (rates, energies, alignment)."""


class AudioFormatError(DataError):
    """WAV file uses an unsupported codec, bit depth, or container layout."""


class EmptyAudioError(DataError):
    """WAV file contains no audio samples."""
