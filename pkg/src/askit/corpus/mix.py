"""Deterministic two-domain corpus mixing.

Counts are planned with exact rational arithmetic: ratio x total and
the per-split fractions must land on integers or planning fails with
NonIntegralSplitError rather than silently rounding. For the default
80/10/10 split this means domain subtotals must be multiples of 10.

Selection and assignment are driven entirely by (seed, tag) PRNG
streams, so a manifest is a pure function of (pools, spec):

    1. shuffle each domain pool with stream_seed(seed, domain)
    2. take the first train+dev+test records, slice in that order
    3. shuffle each combined split with stream_seed(seed, split)

Step 3 interleaves the domains so consumers that read the manifest
sequentially still see a mixed stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from askit import AskitError
from askit.corpus.records import (
    DOMAINS,
    SPLITS,
    MixSpec,
    SegmentRecord,
    SplitManifest,
)
from askit.corpus.rng import Xoshiro256, stream_seed


class NonIntegralSplitError(AskitError):
    pass


class InsufficientPoolError(AskitError):
    pass


class DuplicateIdError(AskitError):
    pass


@dataclass(frozen=True)
class CountTable:
    """Planned record counts: counts[domain][split]."""

    counts: dict[str, dict[str, int]]

    def domain_total(self, domain: str) -> int:
        return sum(self.counts[domain].values())

    def split_total(self, split: str) -> int:
        return sum(self.counts[d][split] for d in DOMAINS)


def _exact_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegralSplitError(f"{what} = {value} is not an integer")
    return int(value)


def plan_counts(spec: MixSpec) -> CountTable:
    ratios = {"aphasia": spec.ratio_aphasia, "standard": 1 - spec.ratio_aphasia}
    counts: dict[str, dict[str, int]] = {}
    for domain in DOMAINS:
        subtotal = _exact_int(ratios[domain] * spec.total, f"{domain} subtotal")
        per_split = {}
        for split, frac in zip(SPLITS, spec.split_fractions):
            per_split[split] = _exact_int(
                frac * subtotal, f"{domain} {split} count"
            )
        assert sum(per_split.values()) == subtotal
        counts[domain] = per_split
    return CountTable(counts)


def _check_unique_ids(pools: dict[str, list[SegmentRecord]]) -> None:
    seen: set[str] = set()
    for domain in DOMAINS:
        for rec in pools[domain]:
            if rec.id in seen:
                raise DuplicateIdError(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)


def _select(
    pool: list[SegmentRecord], table: CountTable, domain: str, seed: int
) -> dict[str, list[SegmentRecord]]:
    need = table.domain_total(domain)
    if len(pool) < need:
        raise InsufficientPoolError(
            f"{domain} pool has {len(pool)} records, need {need}"
            f" (short {need - len(pool)})"
        )
    rng = Xoshiro256(stream_seed(seed, domain))
    shuffled = rng.shuffle(list(pool))
    out: dict[str, list[SegmentRecord]] = {}
    at = 0
    for split in SPLITS:
        n = table.counts[domain][split]
        out[split] = shuffled[at : at + n]
        at += n
    return out


def _select_speaker_disjoint(
    pool: list[SegmentRecord], table: CountTable, domain: str, seed: int
) -> dict[str, list[SegmentRecord]]:
    """Assign whole speakers to splits, greedily filling the largest deficit.

    Speaker groups are shuffled, then each group goes to the split whose
    remaining need is largest relative to its target. Quotas are treated
    as minimums rather than exact counts; a split that ends below quota
    raises InsufficientPoolError. Records beyond a split's quota are
    trimmed from the end, so exact counts still hold on output.
    """
    groups: dict[str, list[SegmentRecord]] = {}
    for rec in pool:
        groups.setdefault(rec.speaker, []).append(rec)
    rng = Xoshiro256(stream_seed(seed, domain + "/speakers"))
    order = rng.shuffle(sorted(groups))

    need = {s: table.counts[domain][s] for s in SPLITS}
    got: dict[str, list[SegmentRecord]] = {s: [] for s in SPLITS}
    for speaker in order:
        # deficit fraction, biased toward splits that are emptiest
        split = max(
            SPLITS,
            key=lambda s: (need[s] - len(got[s])) / need[s] if need[s] else -1.0,
        )
        got[split].extend(groups[speaker])
    for split in SPLITS:
        if len(got[split]) < need[split]:
            raise InsufficientPoolError(
                f"{domain} {split} has {len(got[split])} records from disjoint"
                f" speakers, need {need[split]}"
            )
        got[split] = got[split][: need[split]]
    return got


def build_manifest(
    pools: dict[str, list[SegmentRecord]],
    spec: MixSpec,
    speaker_disjoint: bool = False,
) -> SplitManifest:
    table = plan_counts(spec)
    _check_unique_ids(pools)
    select = _select_speaker_disjoint if speaker_disjoint else _select
    per_domain = {d: select(pools[d], table, d, spec.seed) for d in DOMAINS}

    manifest = SplitManifest(spec=spec, counts=table.counts)
    for split in SPLITS:
        combined = [
            (rec, split) for d in DOMAINS for rec in per_domain[d][split]
        ]
        rng = Xoshiro256(stream_seed(spec.seed, split))
        manifest.rows.extend(rng.shuffle(combined))
    return manifest
