"""Segment records, mix specification, and manifest serialization.

The manifest JSONL is the contract between corpus tooling and any
trainer: one record plus its split per line, keys in the fixed order
MANIFEST_KEYS, compact separators. The fixed ordering is what makes
re-runs byte-identical, so writers must never fall back to dict order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from askit import AskitError
from askit.jsonl import read_jsonl, write_json, write_jsonl

DOMAINS = ("aphasia", "standard")
SPLITS = ("train", "dev", "test")

MANIFEST_KEYS = (
    "id",
    "domain",
    "audio_path",
    "start_ms",
    "end_ms",
    "speaker",
    "raw_text",
    "clean_text",
    "enhanced_text",
    "policy_version",
    "prompt_version",
    "split",
)


class PoolRecordError(AskitError):
    pass


@dataclass(frozen=True)
class SegmentRecord:
    id: str
    domain: str  # aphasia | standard
    audio_path: str
    start_ms: int
    end_ms: int
    speaker: str
    raw_text: str
    clean_text: str
    enhanced_text: str | None = None
    policy_version: str | None = None
    prompt_version: str | None = None

    def __post_init__(self):
        if self.domain not in DOMAINS:
            raise PoolRecordError(f"{self.id}: unknown domain {self.domain!r}")
        if self.end_ms <= self.start_ms:
            raise PoolRecordError(f"{self.id}: end_ms {self.end_ms} <= start_ms {self.start_ms}")

    @property
    def reference_text(self) -> str:
        """Training/scoring reference: the enhanced rewrite when present."""
        return self.enhanced_text if self.enhanced_text else self.clean_text


@dataclass(frozen=True)
class MixSpec:
    ratio_aphasia: Fraction
    total: int = 14000
    split_fractions: tuple[Fraction, Fraction, Fraction] = (
        Fraction(8, 10),
        Fraction(1, 10),
        Fraction(1, 10),
    )
    seed: int = 0

    def __post_init__(self):
        if not (0 < self.ratio_aphasia < 1):
            raise ValueError(f"ratio_aphasia must be in (0,1), got {self.ratio_aphasia}")
        if self.total <= 0:
            raise ValueError("total must be positive")
        if sum(self.split_fractions) != 1:
            raise ValueError(f"split fractions must sum to 1, got {self.split_fractions}")

    def to_json(self) -> dict:
        return {
            "ratio_aphasia": str(self.ratio_aphasia),
            "total": self.total,
            "split_fractions": {
                s: str(f) for s, f in zip(SPLITS, self.split_fractions)
            },
            "seed": self.seed,
        }


@dataclass
class SplitManifest:
    spec: MixSpec
    rows: list[tuple[SegmentRecord, str]] = field(default_factory=list)
    counts: dict[str, dict[str, int]] = field(default_factory=dict)


def record_to_row(record: SegmentRecord, split: str) -> dict:
    row = {
        "id": record.id,
        "domain": record.domain,
        "audio_path": record.audio_path,
        "start_ms": record.start_ms,
        "end_ms": record.end_ms,
        "speaker": record.speaker,
        "raw_text": record.raw_text,
        "clean_text": record.clean_text,
        "enhanced_text": record.enhanced_text,
        "policy_version": record.policy_version,
        "prompt_version": record.prompt_version,
        "split": split,
    }
    assert tuple(row) == MANIFEST_KEYS
    return row


def record_from_row(row: dict) -> SegmentRecord:
    return SegmentRecord(
        id=row["id"],
        domain=row["domain"],
        audio_path=row["audio_path"],
        start_ms=row["start_ms"],
        end_ms=row["end_ms"],
        speaker=row["speaker"],
        raw_text=row.get("raw_text", ""),
        clean_text=row.get("clean_text", ""),
        enhanced_text=row.get("enhanced_text"),
        policy_version=row.get("policy_version"),
        prompt_version=row.get("prompt_version"),
    )


def write_manifest(manifest: SplitManifest, path: str | Path) -> int:
    return write_jsonl(path, (record_to_row(r, split) for r, split in manifest.rows))


def read_manifest(path: str | Path) -> list[tuple[SegmentRecord, str]]:
    return [(record_from_row(row), row.get("split", "")) for row in read_jsonl(path)]


def write_counts(manifest: SplitManifest, path: str | Path) -> None:
    write_json(
        path,
        {
            "spec": manifest.spec.to_json(),
            "counts": {d: dict(manifest.counts[d]) for d in DOMAINS},
            "split_totals": {
                s: sum(manifest.counts[d][s] for d in DOMAINS) for s in SPLITS
            },
            "total": sum(sum(v.values()) for v in manifest.counts.values()),
        },
    )


def load_pool(
    path: str | Path,
    domain: str,
    require_enhanced: bool = True,
) -> tuple[list[SegmentRecord], dict[str, int]]:
    """Load a segment pool from upstream JSONL.

    Rows that cannot become valid records (missing timestamps, dropped by
    cleaning, or missing enhancement when required for the aphasia pool)
    are skipped and tallied, not fatal: the mix step reports a shortfall
    only if too few records survive.
    """
    records: list[SegmentRecord] = []
    skipped = {"dropped": 0, "no_time": 0, "unenhanced": 0}
    for row in read_jsonl(path):
        if row.get("dropped"):
            skipped["dropped"] += 1
            continue
        if row.get("start_ms") is None or row.get("end_ms") is None:
            skipped["no_time"] += 1
            continue
        enhanced = row.get("enhanced_text")
        if domain == "aphasia" and require_enhanced and not enhanced:
            skipped["unenhanced"] += 1
            continue
        records.append(
            SegmentRecord(
                id=row["id"],
                domain=domain,
                audio_path=row.get("audio_path", ""),
                start_ms=row["start_ms"],
                end_ms=row["end_ms"],
                speaker=row.get("speaker", ""),
                raw_text=row.get("raw_text", ""),
                clean_text=row.get("clean_text", row.get("text", "")),
                enhanced_text=enhanced,
                policy_version=row.get("policy_version"),
                prompt_version=row.get("prompt_version"),
            )
        )
    return records, skipped
