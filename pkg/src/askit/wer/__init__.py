from askit.wer.align import (
    AlignedOp,
    AlignmentResult,
    EmptyReferenceError,
    WerBreakdown,
    align,
    kernel_name,
)
from askit.wer.normalize import NormPolicy
from askit.wer.score import AllReferencesEmptyError, CorpusReport, UtteranceScore, score_corpus
from askit.wer.reports import Comparison, LabeledReport, TestSetMismatchError, compare_runs

__all__ = [
    "align",
    "kernel_name",
    "AlignedOp",
    "AlignmentResult",
    "WerBreakdown",
    "EmptyReferenceError",
    "NormPolicy",
    "score_corpus",
    "CorpusReport",
    "UtteranceScore",
    "AllReferencesEmptyError",
    "compare_runs",
    "Comparison",
    "LabeledReport",
    "TestSetMismatchError",
]
