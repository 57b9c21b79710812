"""Seeded 64-bit PRNG for reproducible corpus shuffles.

Dataset splits must be reproducible bit-for-bit from (pools, spec) alone,
across machines and implementation languages, so we pin a fully specified
generator instead of relying on any runtime's default RNG.

Generator: xoshiro256** with 256-bit state ``s[0..3]``. One step, all
arithmetic mod 2**64 with ``rotl(x, k) = (x << k) | (x >> (64 - k))``:

    result = rotl(s[1] * 5, 7) * 9
    t = s[1] << 17
    s[2] ^= s[0];  s[3] ^= s[1];  s[1] ^= s[2];  s[0] ^= s[3]
    s[2] ^= t
    s[3] = rotl(s[3], 45)

State initialization from a 64-bit seed uses four successive outputs of
splitmix64:

    x += 0x9E3779B97F4A7C15
    z = x
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

Independent streams (one per domain, one per split) derive their seed as

    stream_seed(seed, tag) = splitmix64_once(seed XOR fnv1a64(tag))

with FNV-1a over the tag's UTF-8 bytes (offset 0xCBF29CE484222325,
prime 0x100000001B3).

Bounded draws use modulo reduction, ``next_below(n) = next() % n``; the
bias is irrelevant at corpus sizes and keeps the definition portable.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1


def _splitmix64_next(x: int) -> tuple[int, int]:
    """Advance splitmix64 state x; returns (new_state, output)."""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


def fnv1a64(data: str) -> int:
    h = 0xCBF29CE484222325
    for b in data.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001B3) & MASK64
    return h


def stream_seed(seed: int, tag: str) -> int:
    """64-bit seed for the independent stream named by `tag`."""
    _, out = _splitmix64_next((seed & MASK64) ^ fnv1a64(tag))
    return out


class Xoshiro256:
    """xoshiro256** seeded through splitmix64 (see module docstring)."""

    __slots__ = ("s",)

    def __init__(self, seed: int):
        x = seed & MASK64
        s = []
        for _ in range(4):
            x, out = _splitmix64_next(x)
            s.append(out)
        self.s = s

    def next_u64(self) -> int:
        s = self.s
        x = (s[1] * 5) & MASK64
        result = ((((x << 7) | (x >> 57)) & MASK64) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        x = s[3]
        s[3] = ((x << 45) | (x >> 19)) & MASK64
        return result

    def next_below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def shuffle(self, items: list) -> list:
        """In-place Fisher-Yates, high index down to 1; returns the list."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]
        return items
