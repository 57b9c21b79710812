"""Pipeline configuration file handling.

One TOML file feeds every subcommand; each CLI flag overrides its
config counterpart, and whatever was actually used is echoed to
`effective-config.json` in the output directory for provenance.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

from askit import AskitError

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml


class ConfigError(AskitError):
    pass


@dataclass
class PipelineConfig:
    data: dict = field(default_factory=dict)
    path: str | None = None

    @classmethod
    def load(cls, path: str | Path | None) -> "PipelineConfig":
        if path is None:
            return cls()
        try:
            with open(path, "rb") as fh:
                return cls(data=_toml.load(fh), path=str(path))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except _toml.TOMLDecodeError as exc:
            raise ConfigError(f"bad config file {path}: {exc}") from None

    def section(self, name: str) -> dict:
        value = self.data.get(name, {})
        if not isinstance(value, dict):
            raise ConfigError(f"config section [{name}] must be a table")
        return value

    def get(self, section: str, key: str, default=None):
        return self.section(section).get(key, default)


def pick(*values):
    """First value that is not None — CLI flag, then config, then default."""
    for v in values:
        if v is not None:
            return v
    return None
