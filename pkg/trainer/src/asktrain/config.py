from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from asktrain import TrainerError


class ConfigError(TrainerError):
    pass


# training hyperparameter defaults; tests pin these exactly, change with care
HYPERPARAMETER_DEFAULTS = {
    "epochs": 10,
    "per_device_batch": 16,
    "optimizer": "adamw",
    "learning_rate": 5e-5,
    "schedule": "linear",
    "mixed_precision": True,
    "gradient_checkpointing": True,
}


@dataclass(frozen=True)
class TrainConfig:
    """Everything one fine-tuning run needs.

    Mixed precision applies on CUDA devices only; CPU runs keep float32
    regardless of the flag. ``train_split``/``dev_split`` optionally filter
    manifest rows by their split column, so one combined manifest can feed
    both sides.
    """

    train_manifest: str
    dev_manifest: str
    model_id: str
    output_dir: str
    epochs: int = HYPERPARAMETER_DEFAULTS["epochs"]
    per_device_batch: int = HYPERPARAMETER_DEFAULTS["per_device_batch"]
    optimizer: str = HYPERPARAMETER_DEFAULTS["optimizer"]
    learning_rate: float = HYPERPARAMETER_DEFAULTS["learning_rate"]
    schedule: str = HYPERPARAMETER_DEFAULTS["schedule"]
    mixed_precision: bool = HYPERPARAMETER_DEFAULTS["mixed_precision"]
    gradient_checkpointing: bool = HYPERPARAMETER_DEFAULTS["gradient_checkpointing"]
    warmup_steps: int = 0
    seed: int = 0
    train_split: str | None = None
    dev_split: str | None = None

    def __post_init__(self):
        if self.epochs < 1:
            raise ConfigError("epochs must be >= 1")
        if self.per_device_batch < 1:
            raise ConfigError("per_device_batch must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if self.optimizer != "adamw":
            raise ConfigError(f"unsupported optimizer: {self.optimizer!r}")
        if self.schedule != "linear":
            raise ConfigError(f"unsupported schedule: {self.schedule!r}")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "TrainConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(obj) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**obj)

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n", encoding="utf-8")
