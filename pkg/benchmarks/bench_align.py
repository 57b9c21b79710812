#!/usr/bin/env python3
"""Time the two alignment kernels against each other.

Both kernels implement the same ``align_ops(ref_ids, hyp_ids) -> bytes``
contract; this script generates a synthetic scored corpus, checks the
outputs are byte-identical, and reports throughput for each kernel.

Run from a checkout:

    python3 benchmarks/bench_align.py
    python3 benchmarks/bench_align.py --pairs 5000 --max-len 40
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

import askit.wer._align_py as kernel_py

try:
    import askit.wer._align_cy as kernel_cy
except ImportError:
    kernel_cy = None


def make_corpus(pairs: int, max_len: int, vocab: int, seed: int):
    """Reference/hypothesis id pairs with ASR-like error rates (~15% WER)."""
    rng = random.Random(seed)
    corpus = []
    for _ in range(pairs):
        ref = [rng.randrange(vocab) for _ in range(rng.randint(1, max_len))]
        hyp = []
        for tok in ref:
            roll = rng.random()
            if roll < 0.05:
                continue  # deletion
            if roll < 0.10:
                hyp.append(rng.randrange(vocab))  # substitution
            else:
                hyp.append(tok)
            if rng.random() < 0.05:
                hyp.append(rng.randrange(vocab))  # insertion
        corpus.append((ref, hyp))
    return corpus


def run_kernel(align_ops, corpus, repeats: int):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for ref, hyp in corpus:
            align_ops(ref, hyp)
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=2000, help="utterance pairs per run")
    parser.add_argument("--max-len", type=int, default=30, help="max reference length in tokens")
    parser.add_argument("--vocab", type=int, default=500, help="distinct token ids")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeats", type=int, default=5, help="timed repetitions; best is reported")
    args = parser.parse_args()

    corpus = make_corpus(args.pairs, args.max_len, args.vocab, args.seed)
    ref_tokens = sum(len(ref) for ref, _ in corpus)
    print(
        f"corpus: {args.pairs} pairs, {ref_tokens} reference tokens, "
        f"max len {args.max_len}, vocab {args.vocab}, seed {args.seed}"
    )

    if kernel_cy is None:
        print("compiled kernel not built; timing pure python only")
    else:
        mismatches = sum(
            1
            for ref, hyp in corpus
            if bytes(kernel_cy.align_ops(ref, hyp)) != kernel_py.align_ops(ref, hyp)
        )
        if mismatches:
            print(f"FATAL: kernels disagree on {mismatches} pairs")
            return 1
        print("kernels agree on every pair")

    results = {}
    for name, mod in (("python", kernel_py), ("cython", kernel_cy)):
        if mod is None:
            continue
        best, median = run_kernel(mod.align_ops, corpus, args.repeats)
        results[name] = best
        print(
            f"{name:>7}: best {best * 1000:8.1f} ms   median {median * 1000:8.1f} ms   "
            f"{ref_tokens / best:12.0f} ref tokens/s"
        )
    if len(results) == 2:
        print(f"speedup: {results['python'] / results['cython']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
