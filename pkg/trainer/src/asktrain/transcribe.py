"""Greedy decoding of manifest audio into hypothesis JSONL."""

from __future__ import annotations

from pathlib import Path

import torch

from asktrain.audio import load_wav
from asktrain.files import read_manifest, write_hypotheses
from asktrain.modeling import SAMPLING_RATE, load_checkpoint


def transcribe(
    checkpoint: str | Path,
    manifest_path: str | Path,
    out_path: str | Path,
    *,
    split: str | None = None,
    max_new_tokens: int | None = None,
) -> tuple[list[dict], int]:
    """One hypothesis row per manifest row, id-matched. Rows whose audio
    cannot be read or decoded carry text "" and an error field; the run
    continues. Returns (rows, failure count)."""
    rows = read_manifest(manifest_path, split=split)
    model, extractor, tokenizer = load_checkpoint(checkpoint)
    model.eval()
    # default length budget comes from the checkpoint's own generation config
    length = {"max_new_tokens": max_new_tokens} if max_new_tokens is not None else {}

    hypotheses = []
    failures = 0
    for row in rows:
        try:
            wav = load_wav(row["audio_path"], SAMPLING_RATE)
            features = extractor(
                wav, sampling_rate=SAMPLING_RATE, return_tensors="pt"
            ).input_features
            with torch.no_grad():
                ids = model.generate(features, num_beams=1, do_sample=False, **length)
            hypotheses.append({"id": row["id"], "text": tokenizer.decode(ids[0].tolist())})
        except Exception as exc:
            failures += 1
            hypotheses.append(
                {"id": row["id"], "text": "", "error": f"{type(exc).__name__}: {exc}"}
            )
    write_hypotheses(out_path, hypotheses)
    return hypotheses, failures
