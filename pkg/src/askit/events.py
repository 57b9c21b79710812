"""Structured run logs: one JSON object per event, one event per line.

Long corpus runs (14k rows) need auditable logs; free-text logging makes
them grep-hostile. Every CLI stage emits events through this module so a
run can be replayed from its log. Events go to stderr by default, or to
the file given to `configure`.
"""

from __future__ import annotations

import json
import sys
import threading
from typing import Any, IO

_lock = threading.Lock()
_stream: IO[str] | None = None


def configure(stream: IO[str] | None) -> None:
    """Redirect events to `stream` (None restores stderr)."""
    global _stream
    _stream = stream


def emit(event: str, **fields: Any) -> None:
    record = {"event": event}
    record.update(fields)
    line = json.dumps(record, ensure_ascii=False, separators=(",", ":"))
    out = _stream if _stream is not None else sys.stderr
    with _lock:
        out.write(line + "\n")
        out.flush()
