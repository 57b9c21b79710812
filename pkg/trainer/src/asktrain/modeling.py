"""Build and load Whisper-class checkpoints.

`init_model` writes a randomly initialized miniature model plus matching
feature extractor and byte tokenizer, entirely offline — enough to smoke
the whole train/transcribe path on a laptop, or to seed experiments where
hub access is unavailable. `load_checkpoint` accepts such a directory or
any regular Whisper checkpoint path/id.
"""

from __future__ import annotations

from pathlib import Path

import torch
from transformers import (
    WhisperConfig,
    WhisperFeatureExtractor,
    WhisperForConditionalGeneration,
)

from asktrain.tokenizer import BOS_ID, EOS_ID, PAD_ID, VOCAB_SIZE, ByteTokenizer, load_tokenizer

SAMPLING_RATE = 16000


def init_model(
    out_dir: str | Path,
    *,
    d_model: int = 64,
    layers: int = 2,
    heads: int = 2,
    ffn: int = 128,
    chunk_seconds: int = 30,
    max_target_positions: int = 128,
    seed: int = 0,
) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    extractor = WhisperFeatureExtractor(
        feature_size=80, sampling_rate=SAMPLING_RATE, chunk_length=chunk_seconds
    )
    config = WhisperConfig(
        vocab_size=VOCAB_SIZE,
        num_mel_bins=80,
        d_model=d_model,
        encoder_layers=layers,
        decoder_layers=layers,
        encoder_attention_heads=heads,
        decoder_attention_heads=heads,
        encoder_ffn_dim=ffn,
        decoder_ffn_dim=ffn,
        # encoder convolutions halve the mel frame count
        max_source_positions=extractor.nb_max_frames // 2,
        max_target_positions=max_target_positions,
        pad_token_id=PAD_ID,
        bos_token_id=BOS_ID,
        eos_token_id=EOS_ID,
        decoder_start_token_id=BOS_ID,
        # the stock suppression list targets the multilingual BPE vocab and
        # is meaningless (partly out of range) for byte-level ids
        begin_suppress_tokens=None,
    )
    torch.manual_seed(seed)
    model = WhisperForConditionalGeneration(config)
    model.generation_config.max_length = max_target_positions

    model.save_pretrained(out_dir)
    extractor.save_pretrained(out_dir)
    ByteTokenizer().save(out_dir)
    return out_dir


def load_checkpoint(checkpoint: str | Path):
    """-> (model, feature_extractor, tokenizer); works on init_model output,
    a saved epoch directory, or a hub id when network access exists."""
    model = WhisperForConditionalGeneration.from_pretrained(str(checkpoint))
    extractor = WhisperFeatureExtractor.from_pretrained(str(checkpoint))
    tokenizer = load_tokenizer(checkpoint)
    return model, extractor, tokenizer


def save_checkpoint(directory: str | Path, model, extractor, tokenizer) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(directory)
    extractor.save_pretrained(directory)
    if isinstance(tokenizer, ByteTokenizer):
        tokenizer.save(directory)
    else:
        tokenizer._inner.save_pretrained(directory)
    return directory
