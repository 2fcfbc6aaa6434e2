"""Counter-based random streams for reproducible parallel sampling.

Streams are keyed by (seed, stream_id) and advance a block counter, so a
stream can be reconstructed from three integers anywhere in a run and
replays identically regardless of thread scheduling or platform.  Each
draw call builds a fresh Philox generator jumped to the current counter;
Philox emits four 64-bit words per counter block, so consumption rounds
up to whole blocks.
"""

from __future__ import annotations

import numpy as np
from numpy.random import Generator, Philox

__all__ = ["RngStream"]

_MASK64 = (1 << 64) - 1
_DRAWS_PER_BLOCK = 4  # 64-bit outputs per Philox counter increment


def _splitmix64(x: int) -> int:
    """Bijective 64-bit mix; decorrelates derived stream ids."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class RngStream:
    """One independent stream of uniform draws.

    The state is exactly (seed, stream_id, counter); two streams with the
    same state produce the same values in the same order.
    """

    __slots__ = ("seed", "stream_id", "counter")

    def __init__(self, seed: int, stream_id: int = 0, counter: int = 0):
        if counter < 0:
            raise ValueError("counter must be non-negative")
        self.seed = seed & _MASK64
        self.stream_id = stream_id & _MASK64
        self.counter = counter

    def _generator(self) -> Generator:
        bg = Philox(key=np.array([self.seed, self.stream_id], dtype=np.uint64))
        if self.counter:
            bg.advance(self.counter)
        return Generator(bg)

    def uniforms(self, n: int) -> np.ndarray:
        """n doubles in [0, 1); advances the counter by ceil(n/4) blocks."""
        if n < 0:
            raise ValueError("cannot draw a negative number of values")
        values = self._generator().random(n)
        self.counter += -(-n // _DRAWS_PER_BLOCK)
        return values

    def signs(self, n: int) -> np.ndarray:
        """n fair +1/-1 draws as int8."""
        return np.where(self.uniforms(n) < 0.5, 1, -1).astype(np.int8)

    def substream(self, index: int) -> "RngStream":
        """Derived stream i: deterministic, distinct for distinct indices."""
        if index < 0:
            raise ValueError("substream index must be non-negative")
        child = _splitmix64((self.stream_id * 0x9E3779B97F4A7C15 + index + 1) & _MASK64)
        return RngStream(self.seed, child)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id}, counter={self.counter})"
