"""Append-only JSONL store for enhancement results.

One JSON object per line in enhance-cache.jsonl; the whole file is
loaded at open (corpora here are ~14k rows). Appends are serialized
with a lock; a key that already exists is never rewritten — put()
returns the existing row instead, so concurrent writers cannot make the
cache disagree with itself.
"""

from __future__ import annotations

import threading
from pathlib import Path

from askit.jsonl import dumps, read_jsonl

CACHE_FILENAME = "enhance-cache.jsonl"


class EnhanceCache:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._rows: dict[str, dict] = {}
        self._lock = threading.Lock()
        if self.path.exists():
            for row in read_jsonl(self.path):
                self._rows.setdefault(row["key"], row)

    def __len__(self) -> int:
        return len(self._rows)

    def __contains__(self, key: str) -> bool:
        return key in self._rows

    def get(self, key: str) -> dict | None:
        return self._rows.get(key)

    def put(self, row: dict) -> dict:
        key = row["key"]
        with self._lock:
            existing = self._rows.get(key)
            if existing is not None:
                return existing
            self._rows[key] = row
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
                fh.write(dumps(row) + "\n")
        return row
