"""Word-level alignment with substitution/deletion/insertion breakdown.

The inner dynamic program dominates corpus scoring time, so it lives in a
small kernel with two interchangeable implementations: a compiled Cython
module and a pure-Python fallback. Selection happens once at import; set
ASKIT_PURE_PYTHON=1 to force the fallback (the benchmark uses this to
compare the two).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from askit import AskitError

if os.environ.get("ASKIT_PURE_PYTHON"):
    from askit.wer import _align_py as _kernel
else:
    try:
        from askit.wer import _align_cy as _kernel  # type: ignore[no-redef]
    except ImportError:
        from askit.wer import _align_py as _kernel

OP_NAMES = ("match", "sub", "del", "ins")


def kernel_name() -> str:
    """Which alignment kernel is active: "cython" or "python"."""
    return _kernel.KERNEL


class EmptyReferenceError(AskitError):
    pass


@dataclass(frozen=True)
class WerBreakdown:
    S: int
    D: int
    I: int
    N: int  # reference word count

    def __post_init__(self):
        if min(self.S, self.D, self.I) < 0 or self.N < 1:
            raise ValueError(f"bad counts S={self.S} D={self.D} I={self.I} N={self.N}")
        if self.S + self.D > self.N:
            raise ValueError(f"S+D={self.S + self.D} exceeds reference length {self.N}")

    @property
    def errors(self) -> int:
        return self.S + self.D + self.I

    @property
    def wer(self) -> float:
        return (self.S + self.D + self.I) / self.N


@dataclass(frozen=True)
class AlignedOp:
    op: str  # match | sub | del | ins
    ref: str | None
    hyp: str | None


@dataclass(frozen=True)
class AlignmentResult:
    ops: tuple[AlignedOp, ...]
    breakdown: WerBreakdown


def align(ref_tokens: list[str], hyp_tokens: list[str]) -> AlignmentResult:
    """Minimum-edit-distance alignment under unit costs.

    Ties between alignment paths resolve as match > substitution >
    deletion > insertion; the S+D+I total is tie-break-invariant.
    """
    if not ref_tokens:
        raise EmptyReferenceError("reference has no tokens")

    ids: dict[str, int] = {}
    ref_ids = [ids.setdefault(t, len(ids)) for t in ref_tokens]
    hyp_ids = [ids.setdefault(t, len(ids)) for t in hyp_tokens]
    opcodes = _kernel.align_ops(ref_ids, hyp_ids)

    ops = []
    s = d = i_ = 0
    ri = hi = 0
    for code in opcodes:
        if code == 0:
            ops.append(AlignedOp("match", ref_tokens[ri], hyp_tokens[hi]))
            ri += 1
            hi += 1
        elif code == 1:
            ops.append(AlignedOp("sub", ref_tokens[ri], hyp_tokens[hi]))
            s += 1
            ri += 1
            hi += 1
        elif code == 2:
            ops.append(AlignedOp("del", ref_tokens[ri], None))
            d += 1
            ri += 1
        else:
            ops.append(AlignedOp("ins", None, hyp_tokens[hi]))
            i_ += 1
            hi += 1
    assert ri == len(ref_tokens) and hi == len(hyp_tokens)
    return AlignmentResult(
        ops=tuple(ops),
        breakdown=WerBreakdown(S=s, D=d, I=i_, N=len(ref_tokens)),
    )
