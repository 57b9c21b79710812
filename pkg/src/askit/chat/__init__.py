from askit.chat.parser import (
    BadTimestampError,
    ChatParseError,
    DialogSegment,
    MalformedHeaderError,
    Participant,
    TimeSpan,
    Transcript,
    TranscriptEncodingError,
    UnknownSpeakerError,
    Utterance,
    extract_dialog,
    parse_transcript,
)

__all__ = [
    "Transcript",
    "Participant",
    "Utterance",
    "TimeSpan",
    "DialogSegment",
    "parse_transcript",
    "extract_dialog",
    "ChatParseError",
    "MalformedHeaderError",
    "UnknownSpeakerError",
    "BadTimestampError",
    "TranscriptEncodingError",
]
