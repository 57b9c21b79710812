from __future__ import annotations

import wave
from pathlib import Path

import numpy as np

from asktrain import TrainerError


class AudioFormatError(TrainerError):
    pass


def load_wav(path: str | Path, expected_rate: int) -> np.ndarray:
    """16-bit mono PCM -> float32 in [-1, 1]. The corpus slicer guarantees
    this format; anything else is an input error, not something to resample."""
    with wave.open(str(path), "rb") as w:
        if w.getnchannels() != 1:
            raise AudioFormatError(f"{path}: expected mono, got {w.getnchannels()} channels")
        if w.getsampwidth() != 2:
            raise AudioFormatError(f"{path}: expected 16-bit samples")
        if w.getframerate() != expected_rate:
            raise AudioFormatError(
                f"{path}: expected {expected_rate} Hz, got {w.getframerate()}"
            )
        frames = w.readframes(w.getnframes())
    return np.frombuffer(frames, dtype="<i2").astype(np.float32) / 32768.0
