"""Manual fine-tuning loop: evaluate and checkpoint after every epoch."""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass
from pathlib import Path

import torch
from transformers import get_linear_schedule_with_warmup

from asktrain import TrainerError
from asktrain.audio import load_wav
from asktrain.config import TrainConfig
from asktrain.files import read_manifest, reference_text
from asktrain.modeling import SAMPLING_RATE, load_checkpoint, save_checkpoint

LOG_FILENAME = "training-log.jsonl"
CONFIG_FILENAME = "train-config.json"


class EmptyManifestError(TrainerError):
    pass


@dataclass(frozen=True)
class EpochLog:
    epoch: int
    train_loss: float
    dev_loss: float
    checkpoint: str


def _batches(indices: list[int], size: int):
    for start in range(0, len(indices), size):
        yield indices[start : start + size]


def _collate(rows, extractor, tokenizer, max_labels: int):
    waves = [load_wav(r["audio_path"], SAMPLING_RATE) for r in rows]
    features = extractor(
        waves, sampling_rate=SAMPLING_RATE, return_tensors="pt"
    ).input_features
    encoded = [
        tokenizer.encode(reference_text(r))[: max_labels - 1] + [tokenizer.eos_id]
        for r in rows
    ]
    width = max(len(e) for e in encoded)
    labels = torch.full((len(encoded), width), -100, dtype=torch.long)
    for i, ids in enumerate(encoded):
        labels[i, : len(ids)] = torch.tensor(ids, dtype=torch.long)
    return features, labels


def _mean_loss(model, rows, extractor, tokenizer, batch_size, max_labels, device):
    model.eval()
    total, count = 0.0, 0
    with torch.no_grad():
        for batch in _batches(list(range(len(rows))), batch_size):
            features, labels = _collate(
                [rows[i] for i in batch], extractor, tokenizer, max_labels
            )
            out = model(input_features=features.to(device), labels=labels.to(device))
            total += float(out.loss) * len(batch)
            count += len(batch)
    model.train()
    return total / count


def finetune(cfg: TrainConfig) -> list[EpochLog]:
    """Returns one log entry per epoch; also writes the config echo, a JSONL
    training log, and a checkpoint directory per epoch under cfg.output_dir."""
    train_rows = read_manifest(cfg.train_manifest, split=cfg.train_split)
    if not train_rows:
        raise EmptyManifestError(f"{cfg.train_manifest}: no training rows")
    dev_rows = read_manifest(cfg.dev_manifest, split=cfg.dev_split)
    if not dev_rows:
        raise EmptyManifestError(f"{cfg.dev_manifest}: no dev rows")

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cfg.dump(out_dir / CONFIG_FILENAME)

    model, extractor, tokenizer = load_checkpoint(cfg.model_id)
    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    model.to(device)
    if cfg.gradient_checkpointing:
        model.gradient_checkpointing_enable(
            gradient_checkpointing_kwargs={"use_reentrant": False}
        )
    use_amp = cfg.mixed_precision and device.type == "cuda"
    scaler = torch.amp.GradScaler(device.type, enabled=use_amp)

    max_labels = model.config.max_target_positions
    optimizer = torch.optim.AdamW(model.parameters(), lr=cfg.learning_rate)
    steps_per_epoch = math.ceil(len(train_rows) / cfg.per_device_batch)
    scheduler = get_linear_schedule_with_warmup(
        optimizer, cfg.warmup_steps, steps_per_epoch * cfg.epochs
    )

    torch.manual_seed(cfg.seed)
    model.train()
    logs: list[EpochLog] = []
    log_path = out_dir / LOG_FILENAME
    with open(log_path, "w", encoding="utf-8") as log_file:
        for epoch in range(1, cfg.epochs + 1):
            order = list(range(len(train_rows)))
            random.Random(cfg.seed + epoch).shuffle(order)
            total, seen = 0.0, 0
            for batch in _batches(order, cfg.per_device_batch):
                features, labels = _collate(
                    [train_rows[i] for i in batch], extractor, tokenizer, max_labels
                )
                optimizer.zero_grad()
                with torch.autocast(
                    device_type=device.type, dtype=torch.float16, enabled=use_amp
                ):
                    out = model(
                        input_features=features.to(device), labels=labels.to(device)
                    )
                scaler.scale(out.loss).backward()
                scaler.step(optimizer)
                scaler.update()
                scheduler.step()
                total += float(out.loss.detach()) * len(batch)
                seen += len(batch)

            dev_loss = _mean_loss(
                model, dev_rows, extractor, tokenizer, cfg.per_device_batch,
                max_labels, device,
            )
            checkpoint = save_checkpoint(
                out_dir / f"epoch-{epoch:02d}", model, extractor, tokenizer
            )
            entry = EpochLog(
                epoch=epoch,
                train_loss=total / seen,
                dev_loss=dev_loss,
                checkpoint=str(checkpoint),
            )
            logs.append(entry)
            log_file.write(json.dumps(asdict(entry)) + "\n")
            log_file.flush()
    return logs
