"""asktrain — fine-tune and decode Whisper-class models on corpus manifests.

  init-model   write a randomly initialized miniature checkpoint (offline)
  finetune     train from a manifest pair, checkpoint + dev loss per epoch
  transcribe   decode a manifest into hypothesis JSONL for scoring
  show-config  print the default hyperparameters as JSON

Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from asktrain import TrainerError, __version__
from asktrain.config import HYPERPARAMETER_DEFAULTS, TrainConfig


def _cmd_init_model(args) -> int:
    from asktrain.modeling import init_model

    path = init_model(
        args.out_dir,
        d_model=args.d_model,
        layers=args.layers,
        heads=args.heads,
        ffn=args.ffn,
        chunk_seconds=args.chunk_seconds,
        max_target_positions=args.max_target,
        seed=args.seed,
    )
    print(path)
    return 0


def _cmd_finetune(args) -> int:
    from asktrain.train import finetune

    cfg = TrainConfig(
        train_manifest=args.train,
        dev_manifest=args.dev,
        model_id=args.model,
        output_dir=args.out_dir,
        epochs=args.epochs,
        per_device_batch=args.batch,
        learning_rate=args.lr,
        mixed_precision=not args.no_mixed_precision,
        gradient_checkpointing=not args.no_gradient_checkpointing,
        warmup_steps=args.warmup_steps,
        seed=args.seed,
        train_split=args.train_split,
        dev_split=args.dev_split,
    )
    for entry in finetune(cfg):
        print(
            f"epoch {entry.epoch}: train_loss {entry.train_loss:.4f} "
            f"dev_loss {entry.dev_loss:.4f} -> {entry.checkpoint}"
        )
    return 0


def _cmd_transcribe(args) -> int:
    from asktrain.transcribe import transcribe

    rows, failures = transcribe(
        args.checkpoint,
        args.manifest,
        args.out,
        split=args.split,
        max_new_tokens=args.max_new_tokens,
    )
    print(f"wrote {len(rows)} hypotheses ({failures} failed) to {args.out}")
    return 0


def _cmd_show_config(args) -> int:
    print(json.dumps(HYPERPARAMETER_DEFAULTS, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asktrain",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"asktrain {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("init-model", help="write a miniature random checkpoint")
    p.add_argument("out_dir")
    p.add_argument("--d-model", type=int, default=64)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--heads", type=int, default=2)
    p.add_argument("--ffn", type=int, default=128)
    p.add_argument("--chunk-seconds", type=int, default=30, help="audio window length")
    p.add_argument("--max-target", type=int, default=128, help="max label tokens")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_init_model)

    p = sub.add_parser("finetune", help="fine-tune from manifests")
    p.add_argument("--train", required=True, help="training manifest JSONL")
    p.add_argument("--dev", required=True, help="dev manifest JSONL")
    p.add_argument("--model", required=True, help="checkpoint directory or hub id")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--epochs", type=int, default=HYPERPARAMETER_DEFAULTS["epochs"])
    p.add_argument("--batch", type=int, default=HYPERPARAMETER_DEFAULTS["per_device_batch"])
    p.add_argument("--lr", type=float, default=HYPERPARAMETER_DEFAULTS["learning_rate"])
    p.add_argument("--warmup-steps", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--train-split", help="use only rows with this split label")
    p.add_argument("--dev-split", help="use only rows with this split label")
    p.add_argument("--no-mixed-precision", action="store_true")
    p.add_argument("--no-gradient-checkpointing", action="store_true")
    p.set_defaults(func=_cmd_finetune)

    p = sub.add_parser("transcribe", help="decode a manifest into hypotheses")
    p.add_argument("--checkpoint", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True, help="hypothesis JSONL path")
    p.add_argument("--split", help="use only rows with this split label")
    p.add_argument("--max-new-tokens", type=int)
    p.set_defaults(func=_cmd_transcribe)

    p = sub.add_parser("show-config", help="print default hyperparameters")
    p.set_defaults(func=_cmd_show_config)
    return parser


def _quiet_libraries():
    # progress bars and advisory logs belong to the library, not this CLI
    from transformers.utils import logging as hf_logging

    hf_logging.set_verbosity_error()
    hf_logging.disable_progress_bar()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _quiet_libraries()
    try:
        return args.func(args)
    except (TrainerError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
