"""Cross-run comparison tables.

Two layouts:

- ``baseline_table``: model x dataset rows with Dev/Test WER columns,
  the shape used to compare a zero-shot baseline against fine-tuned
  variants across evaluation sets.
- ``ratio_sweep``: one row per training mixing ratio with four WER
  series (aphasia dev/test, standard dev/test), as CSV ready to plot.

Runs are only comparable when scored on identical utterance sets, so
every labeled report carries the hash of its scored id set and
compare_runs refuses to tabulate mismatched groups.
"""

from __future__ import annotations

import io
import csv as _csv
from dataclasses import dataclass, asdict
from fractions import Fraction

from askit import AskitError


class TestSetMismatchError(AskitError):
    __test__ = False  # keep pytest from collecting this as a test class


@dataclass(frozen=True)
class LabeledReport:
    """Summary of one scored run: one model evaluated on one dataset split."""

    run: str
    model: str
    dataset: str
    split: str  # dev | test
    macro_wer: float
    micro_wer: float
    id_set_hash: str
    ratio: str | None = None  # aphasia mixing ratio, e.g. "1/2"
    by_domain: dict | None = None  # domain -> {"macro_wer": ..., ...}

    @classmethod
    def from_json(cls, obj: dict) -> "LabeledReport":
        meta = obj.get("meta", obj)
        summary = obj.get("summary", obj)
        return cls(
            run=meta.get("run", ""),
            model=meta.get("model", ""),
            dataset=meta.get("dataset", ""),
            split=meta.get("split", ""),
            ratio=meta.get("ratio"),
            macro_wer=summary["macro_wer"],
            micro_wer=summary["micro_wer"],
            id_set_hash=obj.get("id_set_hash", meta.get("id_set_hash", "")),
            by_domain=obj.get("by_domain"),
        )


@dataclass
class Comparison:
    layout: str
    header: list[str]
    rows: list[list[str]]

    def to_markdown(self) -> str:
        lines = [
            "| " + " | ".join(self.header) + " |",
            "|" + "|".join(" --- " for _ in self.header) + "|",
        ]
        for row in self.rows:
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = _csv.writer(buf, lineterminator="\n")
        w.writerow([h.lower().replace(" ", "_") for h in self.header])
        w.writerows(self.rows)
        return buf.getvalue()

    def to_json(self) -> dict:
        return asdict(self)


def _fmt(wer: float | None) -> str:
    return f"{wer:.3f}" if wer is not None else "-"


def _check_same_ids(group: str, reports: list[LabeledReport]) -> None:
    hashes = {r.id_set_hash for r in reports}
    if len(hashes) > 1:
        runs = ", ".join(sorted(f"{r.run}/{r.split}" for r in reports))
        raise TestSetMismatchError(
            f"{group}: runs scored on different utterance id sets: {runs}"
        )


def _ordered_unique(values: list[str]) -> list[str]:
    seen: dict[str, None] = {}
    for v in values:
        seen.setdefault(v)
    return list(seen)


def compare_runs(reports: list[LabeledReport], layout: str) -> Comparison:
    if layout == "baseline_table":
        return _baseline_table(reports)
    if layout == "ratio_sweep":
        return _ratio_sweep(reports)
    raise ValueError(f"unknown layout {layout!r}")


def _baseline_table(reports: list[LabeledReport]) -> Comparison:
    # comparability: same dataset+split must cover the same utterances
    groups: dict[tuple[str, str], list[LabeledReport]] = {}
    for r in reports:
        groups.setdefault((r.dataset, r.split), []).append(r)
    for (dataset, split), grouped in groups.items():
        _check_same_ids(f"dataset {dataset!r} {split}", grouped)

    cell: dict[tuple[str, str, str], float] = {}
    for r in reports:
        cell[(r.model, r.dataset, r.split)] = r.macro_wer
    models = _ordered_unique([r.model for r in reports])
    datasets = _ordered_unique([r.dataset for r in reports])
    rows = []
    for model in models:
        for dataset in datasets:
            dev = cell.get((model, dataset, "dev"))
            test = cell.get((model, dataset, "test"))
            if dev is None and test is None:
                continue
            rows.append([model, dataset, _fmt(dev), _fmt(test)])
    return Comparison(
        layout="baseline_table",
        header=["Model", "Dataset", "Dev WER", "Test WER"],
        rows=rows,
    )


def _ratio_sweep(reports: list[LabeledReport]) -> Comparison:
    for split in ("dev", "test"):
        grouped = [r for r in reports if r.split == split]
        if grouped:
            _check_same_ids(f"{split} split", grouped)

    by_ratio: dict[str, dict[tuple[str, str], float]] = {}
    for r in reports:
        if r.ratio is None:
            raise ValueError(f"run {r.run!r} has no mixing ratio; cannot build sweep")
        series = by_ratio.setdefault(r.ratio, {})
        domains = r.by_domain or {}
        for domain in ("aphasia", "standard"):
            if domain in domains:
                series[(domain, r.split)] = domains[domain]["macro_wer"]

    rows = []
    for ratio in sorted(by_ratio, key=Fraction):
        series = by_ratio[ratio]
        rows.append(
            [
                ratio,
                _fmt(series.get(("aphasia", "dev"))),
                _fmt(series.get(("aphasia", "test"))),
                _fmt(series.get(("standard", "dev"))),
                _fmt(series.get(("standard", "test"))),
            ]
        )
    return Comparison(
        layout="ratio_sweep",
        header=[
            "Ratio",
            "Aphasia Dev WER",
            "Aphasia Test WER",
            "Standard Dev WER",
            "Standard Test WER",
        ],
        rows=rows,
    )
