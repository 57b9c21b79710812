from __future__ import annotations

import wave

import pytest
from conftest import make_wav

from askit.corpus import SpanOutOfRangeError, UnsupportedFormatError, slice_audio


@pytest.fixture()
def source(tmp_path):
    path = tmp_path / "session.wav"
    make_wav(path, duration_ms=3000, rate=16000)
    return path


def read_wav(path):
    with wave.open(str(path), "rb") as w:
        return w.getframerate(), w.getnchannels(), w.getsampwidth(), w.readframes(w.getnframes())


def test_full_second_slice(source, tmp_path):
    dest = tmp_path / "cut.wav"
    assert slice_audio(source, dest, 0, 1000) == 16000
    rate, ch, width, frames = read_wav(dest)
    assert (rate, ch, width) == (16000, 1, 2)
    assert len(frames) == 16000 * 2


def test_mid_slice_matches_source_samples(source, tmp_path):
    dest = tmp_path / "cut.wav"
    assert slice_audio(source, dest, 250, 750) == 8000
    _, _, _, cut = read_wav(dest)
    _, _, _, full = read_wav(source)
    first = 250 * 16000 // 1000
    assert cut == full[2 * first : 2 * (first + 8000)]


def test_millisecond_floor(source, tmp_path):
    assert slice_audio(source, tmp_path / "c.wav", 0, 999) == 15984


def test_rate_preserved(tmp_path):
    src = tmp_path / "8k.wav"
    make_wav(src, duration_ms=2000, rate=8000)
    dest = tmp_path / "out" / "cut.wav"  # parent created on demand
    assert slice_audio(src, dest, 0, 1000) == 8000
    rate, _, _, frames = read_wav(dest)
    assert rate == 8000 and len(frames) == 8000 * 2


def test_span_past_eof(source, tmp_path):
    with pytest.raises(SpanOutOfRangeError):
        slice_audio(source, tmp_path / "c.wav", 2500, 3501)


def test_bad_spans(source, tmp_path):
    for start, end in ((500, 500), (700, 200), (-1, 100)):
        with pytest.raises(SpanOutOfRangeError):
            slice_audio(source, tmp_path / "c.wav", start, end)


def test_stereo_rejected(tmp_path):
    src = tmp_path / "stereo.wav"
    with wave.open(str(src), "wb") as w:
        w.setnchannels(2)
        w.setsampwidth(2)
        w.setframerate(16000)
        w.writeframes(b"\x00\x00\x00\x00" * 1600)
    with pytest.raises(UnsupportedFormatError):
        slice_audio(src, tmp_path / "c.wav", 0, 50)


def test_8bit_rejected(tmp_path):
    src = tmp_path / "8bit.wav"
    with wave.open(str(src), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(1)
        w.setframerate(16000)
        w.writeframes(b"\x00" * 1600)
    with pytest.raises(UnsupportedFormatError):
        slice_audio(src, tmp_path / "c.wav", 0, 50)
