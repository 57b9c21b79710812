"""CHAT (.cha) transcript parsing.

Extracts main speaker tiers with their millisecond timestamp bullets and
the participant table; dependent tiers (%mor:, %gra:, ...) are skipped.
Timestamps are the CHAT media bullets: ``\\x15START_END\\x15`` with times
in ms, where the delimiter is the 0x15 (NAK) byte; the visible ``\\u2022``
bullet character is accepted as an alias since exports vary.

Parsing never assumes monotone timestamps (real recordings overlap), and
decoding is strict UTF-8: a transcript that cannot be decoded fails hard
rather than feeding mangled text to the cleaning rules.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from askit import AskitError


class ChatParseError(AskitError):
    """Parse failure; carries the 1-based source line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedHeaderError(ChatParseError):
    pass


class UnknownSpeakerError(ChatParseError):
    pass


class BadTimestampError(ChatParseError):
    pass


class TranscriptEncodingError(AskitError):
    pass


@dataclass(frozen=True)
class TimeSpan:
    start_ms: int
    end_ms: int

    def __post_init__(self):
        if self.start_ms < 0 or self.end_ms <= self.start_ms:
            raise ValueError(f"invalid span {self.start_ms}_{self.end_ms}")


@dataclass(frozen=True)
class Participant:
    code: str  # exactly 3 ASCII uppercase letters (PAR, INV, ...)
    role: str

    def __post_init__(self):
        if not re.fullmatch(r"[A-Z]{3}", self.code):
            raise ValueError(f"speaker code must be 3 uppercase letters: {self.code!r}")


@dataclass(frozen=True)
class Utterance:
    speaker: str
    raw_text: str  # verbatim tier content, markup preserved, bullet removed
    time: TimeSpan | None
    index: int


@dataclass(frozen=True)
class DialogSegment:
    utterance: Utterance
    context: Utterance | None  # nearest preceding clinician turn


@dataclass
class Transcript:
    file_id: str
    participants: list[Participant] = field(default_factory=list)
    utterances: list[Utterance] = field(default_factory=list)
    headers: dict[str, str] = field(default_factory=dict)

    def speaker_codes(self) -> set[str]:
        return {p.code for p in self.participants}


# 0x15 is the CHAT bullet delimiter; U+2022 appears in some exports.
_BULLET_RE = re.compile("[\x15•]([^\x15•]*)[\x15•]")
_BULLET_CHARS = ("\x15", "•")
_TIER_RE = re.compile(r"^\*([^:]*):[ \t]?(.*)$", re.S)


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise TranscriptEncodingError(f"transcript is not valid UTF-8: {exc}") from exc


def _logical_lines(text: str) -> list[tuple[int, str]]:
    """Join tab-indented continuations onto their opening line.

    Returns (line_number, joined_text) with the number of the opening line.
    """
    out: list[tuple[int, str]] = []
    for num, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if line.startswith(("\t", " " * 4)) and out:
            prev_num, prev = out[-1]
            out[-1] = (prev_num, prev.rstrip() + " " + line.strip())
        elif line.strip():
            out.append((num, line))
    return out


def _parse_participants(value: str, line: int) -> list[Participant]:
    participants = []
    for entry in value.split(","):
        words = entry.split()
        if not words:
            continue
        code = words[0]
        if not re.fullmatch(r"[A-Z]{3}", code):
            raise MalformedHeaderError(f"bad speaker code {code!r} in @Participants", line)
        # entries are "CODE role" or "CODE name role"
        role = words[-1] if len(words) > 1 else ""
        participants.append(Participant(code=code, role=role))
    if not participants:
        raise MalformedHeaderError("@Participants declares no speakers", line)
    return participants


def _take_timestamp(text: str, line: int) -> tuple[str, TimeSpan | None]:
    """Strip bullet pairs from tier text; return (text, span of last bullet)."""
    spans = []
    for m in _BULLET_RE.finditer(text):
        inner = m.group(1)
        parts = inner.split("_")
        if len(parts) != 2 or not parts[0].strip().isdigit() or not parts[1].strip().isdigit():
            raise BadTimestampError(f"malformed timestamp bullet {inner!r}", line)
        start, end = int(parts[0]), int(parts[1])
        if end <= start:
            raise BadTimestampError(f"timestamp end {end} <= start {start}", line)
        spans.append(TimeSpan(start_ms=start, end_ms=end))
    text = _BULLET_RE.sub(" ", text)
    if any(c in text for c in _BULLET_CHARS):
        raise BadTimestampError("stray bullet delimiter in tier", line)
    return text.strip(), (spans[-1] if spans else None)


def parse_transcript(data: bytes, file_id: str) -> Transcript:
    """Parse one .cha file (as bytes) into a Transcript.

    The input must start with an ``@Begin`` line (a UTF-8 BOM and the
    conventional ``@UTF8`` marker line before it are tolerated).
    """
    text = _decode(data)
    lines = _logical_lines(text)

    t = Transcript(file_id=file_id)

    start = 0
    if start < len(lines) and lines[start][1].strip() == "@UTF8":
        start += 1
    if start >= len(lines) or lines[start][1].strip() != "@Begin":
        bad_line = lines[start][0] if start < len(lines) else 1
        raise MalformedHeaderError("transcript does not begin with @Begin", bad_line)
    start += 1

    known: set[str] = set()
    index = 0
    for num, line in lines[start:]:
        if line.startswith("@"):
            if line.strip() in ("@Begin", "@End"):
                continue
            key, _, value = line[1:].partition(":")
            key, value = key.strip(), value.strip()
            if key == "Participants":
                t.participants = _parse_participants(value, num)
                known = t.speaker_codes()
            if key in t.headers:
                t.headers[key] = t.headers[key] + "\n" + value
            else:
                t.headers[key] = value
        elif line.startswith("*"):
            m = _TIER_RE.match(line)
            if not m:
                raise MalformedHeaderError(f"unparseable main tier {line!r}", num)
            speaker = m.group(1).strip()
            if speaker not in known:
                raise UnknownSpeakerError(f"speaker {speaker!r} not in @Participants", num)
            content, span = _take_timestamp(m.group(2), num)
            content = re.sub(r"[ \t]+", " ", content).strip()
            if not content:
                raise MalformedHeaderError(f"empty main tier for {speaker}", num)
            t.utterances.append(Utterance(speaker=speaker, raw_text=content, time=span, index=index))
            index += 1
        elif line.startswith("%"):
            continue  # dependent tiers are out of scope
        # anything else is stray text outside a tier; CHAT forbids it but
        # some exports hold BOM remnants — ignore silently
    return t


def extract_dialog(
    t: Transcript,
    patient_codes: set[str],
    clinician_codes: set[str],
) -> list[DialogSegment]:
    """Patient utterances in order, each with the nearest preceding clinician turn.

    Utterances from speakers in neither set are dropped. The clinician
    context persists across consecutive patient turns (both reply turns
    after one question share that question as context).
    """
    if not patient_codes:
        raise ValueError("patient_codes must be non-empty")
    segments: list[DialogSegment] = []
    last_clinician: Utterance | None = None
    for u in t.utterances:
        if u.speaker in clinician_codes:
            last_clinician = u
        elif u.speaker in patient_codes:
            segments.append(DialogSegment(utterance=u, context=last_clinician))
    return segments
