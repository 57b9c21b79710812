"""Content-addressed cache keys for enhancement calls.

The key binds every input that can change the model's reply. It is the
sha256 of a canonical JSON array — versioned template id, model id,
temperature, context, input text — so any field change, including
context None vs "", produces a different key.
"""

from __future__ import annotations

import hashlib
import json


def request_key(
    prompt_version: str,
    model_id: str,
    temperature: float,
    context: str | None,
    input_text: str,
) -> str:
    payload = json.dumps(
        [prompt_version, model_id, float(temperature), context, input_text],
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
