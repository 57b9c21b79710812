"""Versioned instruction templates shipped with the package."""

from __future__ import annotations

import hashlib
import re
from importlib import resources

from askit import AskitError

_VERSION_RE = re.compile(r"^[A-Za-z0-9._-]+$")


class UnknownPromptVersionError(AskitError):
    pass


def _resource(version: str):
    if not _VERSION_RE.match(version):
        raise UnknownPromptVersionError(f"bad prompt version {version!r}")
    return resources.files("askit.enhance").joinpath(f"prompts/{version}.txt")


def load_prompt(version: str) -> str:
    res = _resource(version)
    try:
        return res.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UnknownPromptVersionError(f"no template for version {version!r}") from None


def prompt_checksum(version: str) -> str:
    return hashlib.sha256(load_prompt(version).encode("utf-8")).hexdigest()
