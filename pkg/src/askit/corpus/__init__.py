from askit.corpus.records import (
    MANIFEST_KEYS,
    MixSpec,
    SegmentRecord,
    SplitManifest,
    load_pool,
    read_manifest,
    write_counts,
    write_manifest,
)
from askit.corpus.mix import (
    CountTable,
    DuplicateIdError,
    InsufficientPoolError,
    NonIntegralSplitError,
    build_manifest,
    plan_counts,
)
from askit.corpus.audio import SpanOutOfRangeError, UnsupportedFormatError, slice_audio
from askit.corpus.stm import read_stm

__all__ = [
    "MANIFEST_KEYS",
    "MixSpec",
    "SegmentRecord",
    "SplitManifest",
    "CountTable",
    "plan_counts",
    "build_manifest",
    "slice_audio",
    "read_stm",
    "load_pool",
    "read_manifest",
    "write_manifest",
    "write_counts",
    "NonIntegralSplitError",
    "InsufficientPoolError",
    "DuplicateIdError",
    "UnsupportedFormatError",
    "SpanOutOfRangeError",
]
