"""Deterministic 64-bit random source shared by every simulation.

The generator is counter-based: output ``k`` of the stream for ``seed`` is
``mix64(seed + (k + 1) * GOLDEN)`` in wrapping uint64 arithmetic, where
``mix64`` is the splitmix64 finalizer. Any position of the stream can be
computed independently, so the same sequence is produced by scalar stepping,
by vectorized batch evaluation, and by the compiled kernels, on every
platform.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

# Replicate index width used by batch_seed; bounds the replicate count.
REPLICATE_BITS = 20
MAX_STEPS = 1 << 40


def mix64(v: int) -> int:
    """splitmix64 finalizer; bijective on 64-bit integers."""
    v &= MASK64
    v = ((v ^ (v >> 30)) * _MUL1) & MASK64
    v = ((v ^ (v >> 27)) * _MUL2) & MASK64
    return (v ^ (v >> 31)) & MASK64


def stream(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of the stream, as a uint64 array."""
    with np.errstate(over="ignore"):
        k = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        z = np.uint64(seed & MASK64) + k * np.uint64(GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MUL1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MUL2)
        return z ^ (z >> np.uint64(31))


class RandomSource:
    """Sequential view of the counter-based stream for a given seed."""

    __slots__ = ("seed", "counter")

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.seed + self.counter * GOLDEN)

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n), exact via bitmask rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        mask = (1 << (n - 1).bit_length()) - 1
        while True:
            v = self.next_u64() & mask
            if v < n:
                return v

    def sample_indices(self, n: int, k: int) -> np.ndarray:
        """k distinct indices from range(n), by partial Fisher-Yates."""
        if not 0 <= k <= n:
            raise ValueError("need 0 <= k <= n")
        idx = np.arange(n, dtype=np.int64)
        for i in range(k):
            j = i + self.next_below(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k].copy()


def batch_seed(base_seed: int, n: int, replicate: int) -> int:
    """Per-run seed for replicate ``replicate`` of a size-``n`` simulation.

    Injective in (n, replicate) for a fixed base seed: the pair is packed
    into one integer and pushed through the bijective mixer twice.
    """
    if not 0 <= replicate < (1 << REPLICATE_BITS):
        raise ValueError(f"replicate index must be < 2^{REPLICATE_BITS}")
    if not 0 <= n <= MAX_STEPS:
        raise ValueError(f"step count must be <= 2^40, got {n}")
    key = (n << REPLICATE_BITS) | replicate
    return mix64((base_seed & MASK64) ^ mix64(key))
