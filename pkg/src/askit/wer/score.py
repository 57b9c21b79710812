"""Corpus-level WER aggregation.

Two aggregates are always computed because "average WER" is ambiguous:

- macro: mean of per-utterance WER (the headline number),
- micro: pooled errors over pooled reference words, (sum S+D+I)/(sum N).

Pairs whose reference normalizes to nothing cannot be scored; they are
excluded and counted rather than treated as infinite error.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from askit import AskitError
from askit.wer.align import AlignmentResult, WerBreakdown, align
from askit.wer.normalize import NormPolicy


class AllReferencesEmptyError(AskitError):
    pass


@dataclass(frozen=True)
class UtteranceScore:
    index: int
    id: str | None
    breakdown: WerBreakdown
    alignment: AlignmentResult


@dataclass
class CorpusReport:
    scores: list[UtteranceScore] = field(default_factory=list)
    excluded_empty_refs: int = 0

    @property
    def n_scored(self) -> int:
        return len(self.scores)

    @property
    def totals(self) -> WerBreakdown:
        return WerBreakdown(
            S=sum(s.breakdown.S for s in self.scores),
            D=sum(s.breakdown.D for s in self.scores),
            I=sum(s.breakdown.I for s in self.scores),
            N=sum(s.breakdown.N for s in self.scores),
        )

    @property
    def macro_wer(self) -> float:
        return sum(s.breakdown.wer for s in self.scores) / len(self.scores)

    @property
    def micro_wer(self) -> float:
        return self.totals.wer

    def id_set_hash(self) -> str:
        ids = sorted(s.id if s.id is not None else str(s.index) for s in self.scores)
        return hashlib.sha256("\n".join(ids).encode("utf-8")).hexdigest()

    def summary(self) -> dict:
        t = self.totals
        return {
            "macro_wer": self.macro_wer,
            "micro_wer": self.micro_wer,
            "S": t.S,
            "D": t.D,
            "I": t.I,
            "N": t.N,
            "utterances": self.n_scored,
            "excluded_empty_refs": self.excluded_empty_refs,
        }


def score_corpus(
    pairs: Iterable[tuple[str, str]] | Sequence[tuple[str, str]],
    norm: NormPolicy | None = None,
    ids: Sequence[str] | None = None,
) -> CorpusReport:
    """Score (reference, hypothesis) text pairs under one normalization.

    An empty hypothesis is a valid total deletion; an empty normalized
    reference excludes the pair with a count. Raises AllReferencesEmpty
    if nothing is scorable.
    """
    norm = norm or NormPolicy()
    report = CorpusReport()
    for i, (ref, hyp) in enumerate(pairs):
        ref_tokens = norm.tokens(ref)
        hyp_tokens = norm.tokens(hyp)
        if not ref_tokens:
            report.excluded_empty_refs += 1
            continue
        result = align(ref_tokens, hyp_tokens)
        report.scores.append(
            UtteranceScore(
                index=i,
                id=ids[i] if ids is not None else None,
                breakdown=result.breakdown,
                alignment=result,
            )
        )
    if not report.scores:
        raise AllReferencesEmptyError(
            f"no scorable pairs ({report.excluded_empty_refs} empty references)"
        )
    return report
