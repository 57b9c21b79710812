"""Ingest STM reference files as standard-domain segment pools.

STM line: <wav-id> <channel> <speaker> <begin-s> <end-s> [<labels>] text...
Comment lines start with ";;". Rows whose transcript is the reserved
marker "ignore_time_segment_in_scoring" carry no usable text and are
skipped. Times are seconds (fractional ok) and are converted to ms.
"""

from __future__ import annotations

from pathlib import Path

from askit import AskitError
from askit.corpus.records import SegmentRecord

IGNORE_MARKER = "ignore_time_segment_in_scoring"


class StmFormatError(AskitError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _to_ms(raw: str, line: int) -> int:
    try:
        seconds = float(raw)
    except ValueError:
        raise StmFormatError(f"bad time {raw!r}", line) from None
    if seconds < 0:
        raise StmFormatError(f"negative time {raw!r}", line)
    return round(seconds * 1000)


def read_stm(
    path: str | Path, audio_dir: str | Path = "", audio_ext: str = ".wav"
) -> tuple[list[SegmentRecord], dict[str, int]]:
    """Parse an STM file into standard-domain records.

    Returns (records, skipped) with skipped totals for comment/empty
    lines, ignore-marker rows, and rows with no transcript text.
    """
    records: list[SegmentRecord] = []
    skipped = {"comment": 0, "ignored": 0, "empty": 0}
    counters: dict[str, int] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith(";;"):
            skipped["comment"] += 1
            continue
        parts = line.split(None, 5)
        if len(parts) < 5:
            raise StmFormatError(f"expected at least 5 fields, got {len(parts)}", lineno)
        wav_id, _channel, speaker, begin_raw, end_raw = parts[:5]
        rest = parts[5] if len(parts) == 6 else ""
        if rest.startswith("<") and ">" in rest:  # optional label set
            rest = rest[rest.index(">") + 1 :].strip()
        if rest == IGNORE_MARKER:
            skipped["ignored"] += 1
            continue
        if not rest:
            skipped["empty"] += 1
            continue
        start_ms = _to_ms(begin_raw, lineno)
        end_ms = _to_ms(end_raw, lineno)
        if end_ms <= start_ms:
            raise StmFormatError(f"span {begin_raw}..{end_raw} is empty", lineno)
        n = counters.get(wav_id, 0)
        counters[wav_id] = n + 1
        records.append(
            SegmentRecord(
                id=f"{wav_id}-{n:04d}",
                domain="standard",
                audio_path=str(Path(audio_dir) / f"{wav_id}{audio_ext}"),
                start_ms=start_ms,
                end_ms=end_ms,
                speaker=f"{wav_id}:{speaker}",
                raw_text=rest,
                clean_text=rest,
            )
        )
    return records, skipped
