"""Counter-indexed SplitMix64: the single source of randomness in this package.

Every random decision (graph edges, strategy choices, trial sub-seeds) is a
pure function of a 64-bit seed and a 64-bit counter, so results are bit-exact
across platforms and Python versions.  The generator is SplitMix64 in counter
mode: output ``i`` of the stream with seed ``s`` is

    out(s, i) = fin((s + i + 1) * PHI  mod 2**64)

where ``PHI`` is the golden-ratio constant 0x9E3779B97F4A7C15 and ``fin`` is
the standard SplitMix64 finalizer (xor-shift/multiply chain with constants
0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).  Only unsigned 64-bit integer
arithmetic is involved.

Sub-streams are derived by counter, never by sharing state: ``child_seed(s, k)``
gives the seed of the ``k``-th child stream (trials, per-game strategy streams,
per-attempt extraction orders).  Bernoulli coins compare the top 53 bits of an
output against ``ceil(p * 2**53)``, which is exactly the comparison
``uniform53(out) < p`` done in integers.
"""

from __future__ import annotations

import math

import numpy as np

MASK64 = (1 << 64) - 1
PHI = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_CHILD_SALT = 0x243F6A8885A308D3


def mix64(x: int) -> int:
    """SplitMix64 finalizer on a 64-bit integer."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * _M1) & MASK64
    x = ((x ^ (x >> 27)) * _M2) & MASK64
    return x ^ (x >> 31)


def stream_at(seed: int, counter: int) -> int:
    """Output ``counter`` of the stream with the given seed."""
    return mix64(((seed & MASK64) + ((counter + 1) * PHI)) & MASK64)


def child_seed(seed: int, index: int) -> int:
    """Seed of child stream ``index``, decorrelated from the parent stream."""
    return stream_at(mix64((seed + _CHILD_SALT) & MASK64), index)


def coin_threshold(p: float) -> int:
    """Integer threshold t such that (out >> 11) < t  iff  uniform53(out) < p."""
    if p <= 0.0:
        return 0
    if p >= 1.0:
        return 1 << 53
    return math.ceil(p * 2.0**53)


def block(seed: int, start: int, count: int) -> np.ndarray:
    """Vectorized outputs for counters ``[start, start + count)`` as uint64."""
    idx = np.arange(start, start + count, dtype=np.uint64)
    x = (np.uint64(seed & MASK64) + (idx + np.uint64(1)) * np.uint64(PHI))
    x = (x ^ (x >> np.uint64(30))) * np.uint64(_M1)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(_M2)
    return x ^ (x >> np.uint64(31))


def coins_at(seed: int, counters: np.ndarray, p: float) -> np.ndarray:
    """Bernoulli(p) coins at explicit counter positions (uint64 array)."""
    idx = counters.astype(np.uint64, copy=False)
    x = (np.uint64(seed & MASK64) + (idx + np.uint64(1)) * np.uint64(PHI))
    x = (x ^ (x >> np.uint64(30))) * np.uint64(_M1)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(_M2)
    x ^= x >> np.uint64(31)
    return (x >> np.uint64(11)) < np.uint64(coin_threshold(p))


class SplitStream:
    """A sequential view over the counter stream of one seed.

    Instances are cheap, single-owner objects; fork independent streams with
    :meth:`child` rather than sharing one instance.
    """

    __slots__ = ("seed", "counter", "_children")

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.counter = 0
        self._children = 0

    def u64(self) -> int:
        out = stream_at(self.seed, self.counter)
        self.counter += 1
        return out

    def uniform(self) -> float:
        """Uniform in [0, 1) with 53 bits of precision."""
        return (self.u64() >> 11) * 2.0**-53

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) via multiply-shift (exact 128-bit)."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return (self.u64() * n) >> 64

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def u64_block(self, count: int) -> np.ndarray:
        out = block(self.seed, self.counter, count)
        self.counter += count
        return out

    def permutation(self, n: int) -> np.ndarray:
        """Seeded permutation of range(n): argsort of one block of keys.

        Stable sort breaks the (astronomically unlikely) key ties by index,
        so the result is deterministic.
        """
        keys = self.u64_block(n)
        return np.argsort(keys, kind="stable").astype(np.int64)

    def shuffled(self, arr: np.ndarray) -> np.ndarray:
        return np.asarray(arr)[self.permutation(len(arr))]

    def child(self) -> "SplitStream":
        """Fork the next child stream (counter-derived, independent)."""
        s = SplitStream(child_seed(self.seed, self._children))
        self._children += 1
        return s
