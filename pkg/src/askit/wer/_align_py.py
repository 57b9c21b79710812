"""Pure-Python alignment kernel.

Fallback implementation of the edit-distance inner loop; the compiled
module askit.wer._align_cy implements exactly the same contract and the
test suite asserts byte-identical output between the two.

Contract: ``align_ops(ref_ids, hyp_ids) -> bytes`` where each byte is an
opcode (0 match, 1 substitution, 2 deletion, 3 insertion) and the opcode
sequence consumes ref/hyp tokens left to right. Unit costs; when several
predecessors tie, preference is match > substitution > deletion >
insertion, which makes the path deterministic. The total of nonzero
opcodes is the minimum edit distance.
"""

from __future__ import annotations

from typing import Sequence

OP_MATCH = 0
OP_SUB = 1
OP_DEL = 2
OP_INS = 3

KERNEL = "python"


def align_ops(ref_ids: Sequence[int], hyp_ids: Sequence[int]) -> bytes:
    n = len(ref_ids)
    m = len(hyp_ids)
    if m == 0:
        return bytes([OP_DEL]) * n
    if n == 0:
        return bytes([OP_INS]) * m

    # backpointer per cell; cost kept as one rolling row
    bp = [bytearray(m + 1) for _ in range(n + 1)]
    bp0 = bp[0]
    for j in range(1, m + 1):
        bp0[j] = OP_INS
    prev = list(range(m + 1))
    for i in range(1, n + 1):
        r = ref_ids[i - 1]
        bpi = bp[i]
        bpi[0] = OP_DEL
        cur = [i] + [0] * m
        for j in range(1, m + 1):
            eq = r == hyp_ids[j - 1]
            diag = prev[j - 1] + (0 if eq else 1)
            dele = prev[j] + 1
            ins = cur[j - 1] + 1
            best = diag
            if dele < best:
                best = dele
            if ins < best:
                best = ins
            if diag == best:
                bpi[j] = OP_MATCH if eq else OP_SUB
            elif dele == best:
                bpi[j] = OP_DEL
            else:
                bpi[j] = OP_INS
            cur[j] = best
        prev = cur

    out = bytearray()
    i, j = n, m
    while i > 0 or j > 0:
        op = bp[i][j]
        out.append(op)
        if op <= OP_SUB:
            i -= 1
            j -= 1
        elif op == OP_DEL:
            i -= 1
        else:
            j -= 1
    out.reverse()
    return bytes(out)
