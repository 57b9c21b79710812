"""The JSONL boundary with the corpus tooling.

Manifest rows come from `askit mix`/`askit slice`; the only fields used
here are `id`, `audio_path`, the reference text, and optionally `split`.
Hypothesis rows go back to `askit score` as `{id, text}` (plus an `error`
field on rows that failed to decode).
"""

from __future__ import annotations

import json
from pathlib import Path

from asktrain import TrainerError


class ManifestError(TrainerError):
    pass


def reference_text(row: dict) -> str:
    """Training target: the enhanced rewrite when present, else clean text."""
    for key in ("enhanced_text", "clean_text", "text"):
        value = row.get(key)
        if value:
            return value
    raise ManifestError(f"row {row.get('id', '?')} has no reference text")


def read_manifest(path: str | Path, split: str | None = None) -> list[dict]:
    rows = []
    with open(path, encoding="utf-8") as f:
        for n, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ManifestError(f"{path}:{n}: not JSON: {exc}") from exc
            if "id" not in row:
                raise ManifestError(f"{path}:{n}: row has no id")
            if split is not None and row.get("split") != split:
                continue
            rows.append(row)
    return rows


def write_hypotheses(path: str | Path, rows: list[dict]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")
