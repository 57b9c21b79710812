from __future__ import annotations

import math
import wave
from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# session-audio durations matching the fixture corpus (ms)
AUDIO_DURATIONS = {
    "adler01a": 11000,
    "adler02a": 13000,
    "elman05b": 13000,
    "kurland12c": 10000,
    "ted_talk_01": 19000,
    "ted_talk_02": 19000,
}


def make_wav(
    path: Path, duration_ms: int, rate: int = 16000, freq: float = 440.0
) -> None:
    n = duration_ms * rate // 1000
    t = np.arange(n, dtype=np.float64) / rate
    samples = (0.3 * 32767 * np.sin(2 * math.pi * freq * t)).astype("<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(rate)
        w.writeframes(samples.tobytes())


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def session_audio(tmp_path_factory) -> Path:
    """Synthetic session WAVs named to match the fixture corpus."""
    d = tmp_path_factory.mktemp("audio")
    for i, (name, ms) in enumerate(sorted(AUDIO_DURATIONS.items())):
        make_wav(d / f"{name}.wav", ms, freq=300.0 + 40.0 * i)
    return d


def pytest_runtest_logreport(report):
    # one visible line per acceptance criterion
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {status} :: {name}", flush=True)
