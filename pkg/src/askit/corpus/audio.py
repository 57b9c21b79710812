"""Cut utterance spans out of session WAV files.

Only PCM16 mono is supported; anything else is a hard error, not a
resample. Sample indices are floor(ms * rate / 1000), span end
exclusive, so adjacent segments never share samples at matching cut
points.
"""

from __future__ import annotations

import wave
from pathlib import Path

from askit import AskitError


class UnsupportedFormatError(AskitError):
    pass


class SpanOutOfRangeError(AskitError):
    pass


def _check_format(w: wave.Wave_read, path: str) -> None:
    if w.getnchannels() != 1:
        raise UnsupportedFormatError(f"{path}: {w.getnchannels()} channels, want mono")
    if w.getsampwidth() != 2:
        raise UnsupportedFormatError(
            f"{path}: {8 * w.getsampwidth()}-bit samples, want 16-bit PCM"
        )
    if w.getcomptype() != "NONE":
        raise UnsupportedFormatError(f"{path}: compression {w.getcomptype()!r}")


def slice_audio(
    source: str | Path, dest: str | Path, start_ms: int, end_ms: int
) -> int:
    """Write [start_ms, end_ms) of `source` to `dest`. Returns sample count."""
    if end_ms <= start_ms or start_ms < 0:
        raise SpanOutOfRangeError(f"bad span {start_ms}..{end_ms} ms")
    source, dest = str(source), str(dest)
    with wave.open(source, "rb") as src:
        _check_format(src, source)
        rate = src.getframerate()
        first = start_ms * rate // 1000
        last = end_ms * rate // 1000
        if last > src.getnframes():
            raise SpanOutOfRangeError(
                f"{source}: span ends at sample {last}, file has {src.getnframes()}"
            )
        src.setpos(first)
        frames = src.readframes(last - first)
    Path(dest).parent.mkdir(parents=True, exist_ok=True)
    with wave.open(dest, "wb") as out:
        out.setnchannels(1)
        out.setsampwidth(2)
        out.setframerate(rate)
        out.writeframes(frames)
    return last - first
