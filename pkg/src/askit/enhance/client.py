"""Minimal chat-completions HTTP client.

Speaks the de-facto wire shape — POST {model, messages, temperature} to
<base_url>/chat/completions with a bearer token — so any compatible
server works, including the local stub used in tests. Transport errors
and HTTP 429/5xx are retried with exponential backoff (1s, 2s, 4s, ...)
up to max_attempts; other HTTP errors fail immediately.
"""

from __future__ import annotations

import os
import time

import requests

from askit import AskitError

API_KEY_ENV = "ASR_LLM_API_KEY"
_RETRYABLE = {429}


class ApiError(AskitError):
    def __init__(self, message: str, status: int | None = None, body: str = ""):
        excerpt = body[:200]
        super().__init__(
            message if not excerpt else f"{message}: {excerpt}"
        )
        self.status = status
        self.body = excerpt


class ChatClient:
    def __init__(
        self,
        base_url: str,
        timeout: float = 60.0,
        max_attempts: int = 5,
        backoff_base: float = 1.0,
        backoff_factor: float = 2.0,
        sleep=time.sleep,
        session: requests.Session | None = None,
    ):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.max_attempts = max_attempts
        self.backoff_base = backoff_base
        self.backoff_factor = backoff_factor
        self._sleep = sleep
        self._session = session or requests.Session()
        self.calls = 0  # total HTTP attempts, exposed for tests/telemetry

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(API_KEY_ENV)
        if token:
            headers["Authorization"] = f"Bearer {token}"
        return headers

    def complete(self, messages: list[dict], model: str, temperature: float) -> str:
        url = f"{self.base_url}/chat/completions"
        payload = {"model": model, "messages": messages, "temperature": temperature}
        last_error: ApiError | None = None
        for attempt in range(self.max_attempts):
            if attempt:
                self._sleep(self.backoff_base * self.backoff_factor ** (attempt - 1))
            try:
                resp = self._session.post(
                    url, json=payload, headers=self._headers(), timeout=self.timeout
                )
            except requests.RequestException as exc:
                last_error = ApiError(f"transport error: {exc}")
                continue
            if resp.status_code in _RETRYABLE or resp.status_code >= 500:
                last_error = ApiError(
                    f"HTTP {resp.status_code}", resp.status_code, resp.text
                )
                continue
            if resp.status_code != 200:
                raise ApiError(f"HTTP {resp.status_code}", resp.status_code, resp.text)
            try:
                return resp.json()["choices"][0]["message"]["content"]
            except (ValueError, LookupError, TypeError) as exc:
                raise ApiError(f"malformed response: {exc}", resp.status_code, resp.text)
        assert last_error is not None
        raise ApiError(
            f"gave up after {self.max_attempts} attempts: {last_error}",
            last_error.status,
            last_error.body,
        )
