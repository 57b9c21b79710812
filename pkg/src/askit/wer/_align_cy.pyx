# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled alignment kernel; same contract as askit.wer._align_py.

Opcode bytes: 0 match, 1 substitution, 2 deletion, 3 insertion. Tie-break
preference match > substitution > deletion > insertion, identical to the
pure-Python kernel (the suite cross-checks the two byte-for-byte).
"""

from libc.stdlib cimport free, malloc

OP_MATCH = 0
OP_SUB = 1
OP_DEL = 2
OP_INS = 3

KERNEL = "cython"

cdef unsigned char C_MATCH = 0
cdef unsigned char C_SUB = 1
cdef unsigned char C_DEL = 2
cdef unsigned char C_INS = 3


def align_ops(ref_ids, hyp_ids):
    cdef Py_ssize_t n = len(ref_ids)
    cdef Py_ssize_t m = len(hyp_ids)
    if m == 0:
        return bytes(bytearray([C_DEL]) * n)
    if n == 0:
        return bytes(bytearray([C_INS]) * m)

    cdef long long *ref = <long long *> malloc(n * sizeof(long long))
    cdef long long *hyp = <long long *> malloc(m * sizeof(long long))
    cdef long *prev = <long *> malloc((m + 1) * sizeof(long))
    cdef long *cur = <long *> malloc((m + 1) * sizeof(long))
    cdef unsigned char *bp = <unsigned char *> malloc((n + 1) * (m + 1))
    if ref == NULL or hyp == NULL or prev == NULL or cur == NULL or bp == NULL:
        free(ref); free(hyp); free(prev); free(cur); free(bp)
        raise MemoryError()

    cdef Py_ssize_t i, j
    cdef long diag, dele, ins, best
    cdef long long r
    cdef bint eq
    cdef unsigned char op
    try:
        for i in range(n):
            ref[i] = ref_ids[i]
        for j in range(m):
            hyp[j] = hyp_ids[j]

        bp[0] = C_MATCH
        for j in range(1, m + 1):
            prev[j] = j
            bp[j] = C_INS
        prev[0] = 0

        for i in range(1, n + 1):
            r = ref[i - 1]
            cur[0] = i
            bp[i * (m + 1)] = C_DEL
            for j in range(1, m + 1):
                eq = r == hyp[j - 1]
                diag = prev[j - 1] + (0 if eq else 1)
                dele = prev[j] + 1
                ins = cur[j - 1] + 1
                best = diag
                if dele < best:
                    best = dele
                if ins < best:
                    best = ins
                if diag == best:
                    bp[i * (m + 1) + j] = C_MATCH if eq else C_SUB
                elif dele == best:
                    bp[i * (m + 1) + j] = C_DEL
                else:
                    bp[i * (m + 1) + j] = C_INS
                cur[j] = best
            prev, cur = cur, prev

        out = bytearray()
        i = n
        j = m
        while i > 0 or j > 0:
            op = bp[i * (m + 1) + j]
            out.append(op)
            if op <= C_SUB:
                i -= 1
                j -= 1
            elif op == C_DEL:
                i -= 1
            else:
                j -= 1
        out.reverse()
        return bytes(out)
    finally:
        free(ref)
        free(hyp)
        free(prev)
        free(cur)
        free(bp)
