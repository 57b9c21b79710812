"""Byte-level tokenizer for locally initialized miniature models.

UTF-8 bytes are the vocabulary (ids 0-255) with three specials appended,
so any text round-trips without a trained vocabulary file. Checkpoints
from the hub bring their own tokenizer instead; `load_tokenizer` picks
whichever the checkpoint directory contains.
"""

from __future__ import annotations

import json
from pathlib import Path

from asktrain import TrainerError

TOKENIZER_FILENAME = "byte-tokenizer.json"

PAD_ID = 256
BOS_ID = 257  # also the decoder start token
EOS_ID = 258
VOCAB_SIZE = 259


class TokenizerError(TrainerError):
    pass


class ByteTokenizer:
    pad_id = PAD_ID
    bos_id = BOS_ID
    eos_id = EOS_ID
    vocab_size = VOCAB_SIZE

    def encode(self, text: str) -> list[int]:
        return list(text.encode("utf-8"))

    def decode(self, ids) -> str:
        return bytes(i for i in ids if 0 <= i < 256).decode("utf-8", errors="replace")

    def save(self, directory: str | Path) -> None:
        spec = {
            "type": "byte",
            "pad_id": self.pad_id,
            "bos_id": self.bos_id,
            "eos_id": self.eos_id,
            "vocab_size": self.vocab_size,
        }
        path = Path(directory) / TOKENIZER_FILENAME
        path.write_text(json.dumps(spec, indent=2) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, directory: str | Path) -> "ByteTokenizer":
        path = Path(directory) / TOKENIZER_FILENAME
        spec = json.loads(path.read_text(encoding="utf-8"))
        if spec.get("type") != "byte" or spec.get("vocab_size") != VOCAB_SIZE:
            raise TokenizerError(f"{path}: unsupported tokenizer spec")
        return cls()


class HubTokenizer:
    """Adapter giving a transformers tokenizer the same four-method surface."""

    def __init__(self, inner):
        self._inner = inner
        self.pad_id = inner.pad_token_id
        self.eos_id = inner.eos_token_id
        self.bos_id = inner.bos_token_id
        self.vocab_size = len(inner)

    def encode(self, text: str) -> list[int]:
        return self._inner.encode(text, add_special_tokens=False)

    def decode(self, ids) -> str:
        return self._inner.decode(ids, skip_special_tokens=True).strip()


def load_tokenizer(checkpoint: str | Path):
    if (Path(checkpoint) / TOKENIZER_FILENAME).is_file():
        return ByteTokenizer.load(checkpoint)
    try:
        from transformers import WhisperTokenizer

        return HubTokenizer(WhisperTokenizer.from_pretrained(str(checkpoint)))
    except Exception as exc:
        raise TokenizerError(
            f"{checkpoint}: no {TOKENIZER_FILENAME} and no loadable hub tokenizer ({exc})"
        ) from exc
