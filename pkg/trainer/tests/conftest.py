from __future__ import annotations

import json
import math
import wave
from pathlib import Path

import numpy as np
import pytest

from asktrain.config import TrainConfig
from asktrain.modeling import init_model
from asktrain.train import finetune

TEXTS = [
    "he is ok",
    "we go now",
    "it is hot",
    "she saw me",
    "no way out",
    "so it goes",
    "he ran far",
    "we ate pie",
    "one more go",
    "all is well",
]


def make_tone(path: Path, freq: float, duration_ms: int = 600, rate: int = 16000):
    n = duration_ms * rate // 1000
    t = np.arange(n, dtype=np.float64) / rate
    samples = (0.3 * 32767 * np.sin(2 * math.pi * freq * t)).astype("<i2")
    with wave.open(str(path), "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(rate)
        w.writeframes(samples.tobytes())


@pytest.fixture(scope="session")
def toy_corpus(tmp_path_factory) -> Path:
    """10-row manifest (8 train / 2 dev) with synthetic tone audio."""
    root = tmp_path_factory.mktemp("corpus")
    rows = []
    for i, text in enumerate(TEXTS):
        wav = root / f"utt{i:02d}.wav"
        make_tone(wav, 250.0 + 60.0 * i)
        rows.append(
            {
                "id": f"utt{i:02d}",
                "audio_path": str(wav),
                "clean_text": text.replace(".", ""),
                "enhanced_text": text,
                "split": "train" if i < 8 else "dev",
            }
        )
    manifest = root / "manifest.jsonl"
    with open(manifest, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row) + "\n")
    return manifest


@pytest.fixture(scope="session")
def mini_checkpoint(tmp_path_factory) -> Path:
    return init_model(
        tmp_path_factory.mktemp("model") / "init",
        d_model=32,
        layers=1,
        heads=2,
        ffn=64,
        chunk_seconds=2,
        max_target_positions=32,
        seed=1,
    )


@pytest.fixture(scope="session")
def trained(toy_corpus, mini_checkpoint, tmp_path_factory):
    """One shared 2-epoch fine-tuning run; tests inspect different aspects."""
    out_dir = tmp_path_factory.mktemp("run") / "ft"
    cfg = TrainConfig(
        train_manifest=str(toy_corpus),
        dev_manifest=str(toy_corpus),
        model_id=str(mini_checkpoint),
        output_dir=str(out_dir),
        epochs=2,
        per_device_batch=4,
        learning_rate=1e-3,
        seed=3,
        train_split="train",
        dev_split="dev",
    )
    logs = finetune(cfg)
    return cfg, logs, out_dir
