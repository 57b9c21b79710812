"""Rewrite cleaned aphasic utterances into standard-English references.

Every call is content-addressed (see keys.request_key); results live in
an append-only JSONL cache. `replay` mode answers from the cache alone
and touches no network, which is how scoring pipelines stay reproducible
and offline. `live` mode consults the cache first and performs at most
one chat completion per novel request.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone

from askit import AskitError
from askit.enhance.cache import EnhanceCache
from askit.enhance.client import ApiError, ChatClient
from askit.enhance.keys import request_key
from askit.enhance.prompts import load_prompt, prompt_checksum

MODES = ("live", "replay")


class CacheMissError(AskitError):
    def __init__(self, key: str):
        super().__init__(f"no cached enhancement for key {key}")
        self.key = key


class EmptyCompletionError(AskitError):
    pass


@dataclass(frozen=True)
class EnhancementRequest:
    input_text: str
    context: str | None = None
    model_id: str = "gpt-4"
    prompt_version: str = "v1"
    temperature: float = 0.0

    def __post_init__(self):
        if not self.input_text.strip():
            raise ValueError("input_text is empty")
        if not self.prompt_version:
            raise ValueError("prompt_version is empty")
        if not (0.0 <= self.temperature <= 2.0):
            raise ValueError(f"temperature {self.temperature} outside [0, 2]")

    @property
    def key(self) -> str:
        return request_key(
            self.prompt_version,
            self.model_id,
            self.temperature,
            self.context,
            self.input_text,
        )


@dataclass(frozen=True)
class EnhancementRecord:
    key: str
    input_text: str
    output_text: str
    created_at: str
    source: str  # live | cache


def build_prompt(req: EnhancementRequest) -> list[dict]:
    if req.context is None:
        user = req.input_text
    else:
        user = f"Clinician: {req.context}\nPatient: {req.input_text}"
    return [
        {"role": "system", "content": load_prompt(req.prompt_version)},
        {"role": "user", "content": user},
    ]


def _strip_reply(text: str) -> str:
    text = text.strip()
    for pair in ('""', "''", "“”", "‘’"):
        if len(text) >= 2 and text[0] == pair[0] and text[-1] == pair[1]:
            text = text[1:-1].strip()
    return text


def _utcnow() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def enhance(
    req: EnhancementRequest,
    mode: str,
    cache: EnhanceCache,
    client: ChatClient | None = None,
    clock=_utcnow,
) -> EnhancementRecord:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    key = req.key
    row = cache.get(key)
    if row is not None:
        return EnhancementRecord(
            key=key,
            input_text=row["input_text"],
            output_text=row["output_text"],
            created_at=row["created_at"],
            source="cache",
        )
    if mode == "replay":
        raise CacheMissError(key)
    if client is None:
        raise ApiError("live mode requires a configured client")
    reply = client.complete(build_prompt(req), req.model_id, req.temperature)
    output = _strip_reply(reply)
    if not output:
        raise EmptyCompletionError(f"model returned a blank rewrite for key {key}")
    row = cache.put(
        {
            "key": key,
            "prompt_version": req.prompt_version,
            "prompt_sha256": prompt_checksum(req.prompt_version),
            "model_id": req.model_id,
            "temperature": req.temperature,
            "context": req.context,
            "input_text": req.input_text,
            "output_text": output,
            "created_at": clock(),
        }
    )
    return EnhancementRecord(
        key=key,
        input_text=row["input_text"],
        output_text=row["output_text"],
        created_at=row["created_at"],
        source="live",
    )


@dataclass(frozen=True)
class BatchFailure:
    index: int
    key: str
    error: str


def enhance_batch(
    reqs: list[EnhancementRequest],
    mode: str,
    cache: EnhanceCache,
    client: ChatClient | None = None,
    max_in_flight: int = 1,
    clock=_utcnow,
) -> tuple[list[EnhancementRecord | None], list[BatchFailure]]:
    """Enhance many requests; results align with input order.

    Failed items become None in the results list plus a BatchFailure,
    so one bad utterance never aborts a corpus run.
    """
    if max_in_flight < 1:
        raise ValueError("max_in_flight must be >= 1")

    def one(req: EnhancementRequest) -> EnhancementRecord:
        return enhance(req, mode, cache, client, clock)

    results: list[EnhancementRecord | None] = [None] * len(reqs)
    failures: list[BatchFailure] = []
    if max_in_flight == 1:
        outcomes = map(lambda r: _capture(one, r), reqs)
    else:
        with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
            outcomes = list(pool.map(lambda r: _capture(one, r), reqs))
    for i, (record, error) in enumerate(outcomes):
        if record is not None:
            results[i] = record
        else:
            failures.append(BatchFailure(index=i, key=reqs[i].key, error=error))
    return results, failures


def _capture(fn, req) -> tuple[EnhancementRecord | None, str]:
    try:
        return fn(req), ""
    except AskitError as exc:
        return None, f"{type(exc).__name__}: {exc}"
