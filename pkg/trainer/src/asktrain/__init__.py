"""Training glue between askit corpus manifests and Whisper-class models.

The only contract with the corpus tooling is file-level: manifest JSONL in,
hypothesis JSONL out. No corpus or scoring logic lives here.
"""

__version__ = "0.1.0"


class TrainerError(Exception):
    """Base for all typed errors raised by this package."""


from asktrain.config import TrainConfig  # noqa: E402
from asktrain.files import read_manifest, reference_text, write_hypotheses  # noqa: E402
from asktrain.modeling import init_model, load_checkpoint  # noqa: E402
from asktrain.train import EmptyManifestError, EpochLog, finetune  # noqa: E402
from asktrain.transcribe import transcribe  # noqa: E402

__all__ = [
    "TrainerError",
    "TrainConfig",
    "read_manifest",
    "reference_text",
    "write_hypotheses",
    "init_model",
    "load_checkpoint",
    "EmptyManifestError",
    "EpochLog",
    "finetune",
    "transcribe",
    "__version__",
]
