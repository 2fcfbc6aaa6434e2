"""Exact arithmetic on finite sequences of +1/-1 outcomes.

A :class:`SignSequence` stores outcomes bit-packed in a single arbitrary
precision integer (set bit = +1), so correlations and coincidence counts
reduce to XOR plus popcount and stay exact at any length.  All derived
quantities are integer or rational until the caller asks for a float.

The central bound implemented here: for equal-length sequences f, g, h,

    |<f,g> - <f,h>| + <g,h> <= 1

where <f,g> denotes the empirical correlation (1/n) sum_i f_i g_i.  The
bound holds for every triple because it holds term by term; see
:func:`boole_bell_lhs` and :func:`brute_force_max_lhs`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "SignSequence",
    "CorrelationEstimate",
    "LengthMismatch",
    "EmptySequence",
    "LengthTooLarge",
    "BRUTE_FORCE_MAX_LENGTH",
    "concatenate",
    "correlation",
    "coincidence_probability",
    "boole_bell_lhs",
    "boole_bell_lhs_exact",
    "boole_bell_lhs_prob",
    "brute_force_max_lhs",
]


class LengthMismatch(ValueError):
    """Sequences in one expression must share a length."""


class EmptySequence(ValueError):
    """Sequences must contain at least one outcome."""


class LengthTooLarge(ValueError):
    """Exhaustive enumeration is capped to keep runtime bounded."""


# Exhaustive search over triples is reduced to per-index product classes,
# so the cap is generous; raw 2**(3n) enumeration would stop near n=8.
BRUTE_FORCE_MAX_LENGTH = 12

_MINUS_SIGNS = {"-", "−"}  # ASCII hyphen and the unicode minus


@dataclass(frozen=True)
class SignSequence:
    """Fixed-length sequence of +1/-1 values, bit-packed.

    ``bits`` holds bit i set when entry i is +1.  Bits at positions >=
    ``length`` are cleared on construction so equal sequences always
    compare and hash equal.
    """

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 1:
            raise EmptySequence("a sign sequence needs at least one entry")
        object.__setattr__(self, "bits", self.bits & ((1 << self.length) - 1))

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignSequence":
        """Build from an iterable of +1/-1 integers."""
        bits = 0
        n = 0
        for s in signs:
            if s == 1:
                bits |= 1 << n
            elif s != -1:
                raise ValueError(f"sign entries must be +1 or -1, got {s!r}")
            n += 1
        return cls(n, bits)

    @classmethod
    def from_text(cls, text: str) -> "SignSequence":
        """Parse a '+'/'-' string; the unicode minus is accepted too."""
        bits = 0
        n = 0
        for ch in text.strip():
            if ch == "+":
                bits |= 1 << n
            elif ch not in _MINUS_SIGNS:
                raise ValueError(f"unexpected character {ch!r} in sign text")
            n += 1
        return cls(n, bits)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "SignSequence":
        """Build from a numpy array: bool (True = +1) or +1/-1 integers."""
        arr = np.asarray(values)
        if arr.ndim != 1:
            raise ValueError("expected a one-dimensional array")
        if arr.dtype != bool:
            if not np.all(np.abs(arr) == 1):
                raise ValueError("array entries must be +1 or -1")
            arr = arr > 0
        packed = np.packbits(arr, bitorder="little").tobytes()
        return cls(arr.size, int.from_bytes(packed, "little"))

    @classmethod
    def from_bytes(cls, blob: bytes) -> "SignSequence":
        """Inverse of :meth:`to_bytes`."""
        if len(blob) < 8:
            raise ValueError("truncated sign-sequence blob")
        n = int.from_bytes(blob[:8], "little")
        words = -(-n // 64)
        if len(blob) != 8 + 8 * words:
            raise ValueError("sign-sequence blob has wrong payload size")
        return cls(n, int.from_bytes(blob[8:], "little"))

    # -- views ----------------------------------------------------------

    def to_text(self) -> str:
        """Render as a '+'/'-' string (ASCII only)."""
        arr = self.to_array()
        return bytes(np.where(arr > 0, ord("+"), ord("-")).astype(np.uint8)).decode()

    def to_array(self) -> np.ndarray:
        """Entries as an int8 array of +1/-1."""
        nbytes = -(-self.length // 8)
        raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        ones = np.unpackbits(raw, count=self.length, bitorder="little")
        return (ones.astype(np.int8) * 2) - 1

    def to_bytes(self) -> bytes:
        """Serialize: 8-byte little-endian length, then packed 64-bit words."""
        words = -(-self.length // 64)
        return self.length.to_bytes(8, "little") + self.bits.to_bytes(8 * words, "little")

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, key):
        if isinstance(key, slice):
            start, stop, step = key.indices(self.length)
            if step != 1:
                raise ValueError("only contiguous slices are supported")
            if stop <= start:
                raise EmptySequence("slice selects no entries")
            return SignSequence(stop - start, self.bits >> start)
        idx = key.__index__()
        if idx < 0:
            idx += self.length
        if not 0 <= idx < self.length:
            raise IndexError("sign index out of range")
        return 1 if (self.bits >> idx) & 1 else -1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        for _ in range(self.length):
            yield 1 if bits & 1 else -1
            bits >>= 1

    def __neg__(self) -> "SignSequence":
        return SignSequence(self.length, ~self.bits)

    def __repr__(self) -> str:
        text = self.to_text() if self.length <= 32 else self.to_text()[:29] + "..."
        return f"SignSequence(length={self.length}, text='{text}')"


def concatenate(parts: Iterable[SignSequence]) -> SignSequence:
    """Join sequences end to end."""
    bits = 0
    n = 0
    for part in parts:
        bits |= part.bits << n
        n += part.length
    if n == 0:
        raise EmptySequence("nothing to concatenate")
    return SignSequence(n, bits)


@dataclass(frozen=True)
class CorrelationEstimate:
    """Empirical correlation with its exact integer numerator.

    ``value`` equals ``sum_products / n`` rounded to float; ``stderr`` is
    the iid estimate sqrt((1 - value^2)/n), zero for deterministic +-1
    correlations.
    """

    value: float
    n: int
    stderr: float
    sum_products: int = field(repr=False, default=0)

    def as_fraction(self) -> Fraction:
        return Fraction(self.sum_products, self.n)


def _require_same_length(f: SignSequence, g: SignSequence) -> None:
    if f.length != g.length:
        raise LengthMismatch(f"lengths differ: {f.length} vs {g.length}")


def _products_sum(f: SignSequence, g: SignSequence) -> int:
    # sum_i f_i g_i = n - 2 * (number of disagreeing positions)
    return f.length - 2 * (f.bits ^ g.bits).bit_count()


def correlation(f: SignSequence, g: SignSequence) -> CorrelationEstimate:
    """Empirical correlation (1/n) sum_i f_i g_i, exact in the numerator."""
    _require_same_length(f, g)
    n = f.length
    s = _products_sum(f, g)
    value = s / n
    stderr = (max(0.0, 1.0 - value * value) / n) ** 0.5
    return CorrelationEstimate(value=value, n=n, stderr=stderr, sum_products=s)


def coincidence_probability(f: SignSequence, g: SignSequence) -> Fraction:
    """Exact fraction of positions where the sequences agree.

    Equals (1 + <f,g>)/2, the identity relating matching frequency to
    correlation; see the tests for the rational-arithmetic check.
    """
    _require_same_length(f, g)
    agreements = f.length - (f.bits ^ g.bits).bit_count()
    return Fraction(agreements, f.length)


def boole_bell_lhs_exact(f: SignSequence, g: SignSequence, h: SignSequence) -> Fraction:
    """|<f,g> - <f,h>| + <g,h> as an exact rational."""
    _require_same_length(f, g)
    _require_same_length(f, h)
    numerator = abs(_products_sum(f, g) - _products_sum(f, h)) + _products_sum(g, h)
    assert numerator <= f.length  # holds term by term for any +-1 triple
    return Fraction(numerator, f.length)


def boole_bell_lhs(f: SignSequence, g: SignSequence, h: SignSequence) -> float:
    """|<f,g> - <f,h>| + <g,h>; never exceeds 1 for equal-length triples."""
    return float(boole_bell_lhs_exact(f, g, h))


def boole_bell_lhs_prob(
    f: SignSequence, g: SignSequence, h: SignSequence
) -> tuple[Fraction, Fraction]:
    """The matching-frequency form: (|P(f=g) - P(f=h)|, 1 - P(g=h)).

    left <= right always, and the gap equals (1 - boole_bell_lhs)/2
    exactly; both forms carry the same information.
    """
    left = abs(coincidence_probability(f, g) - coincidence_probability(f, h))
    right = 1 - coincidence_probability(g, h)
    return left, right


def brute_force_max_lhs(n: int) -> float:
    """Exhaustive maximum of the three-sequence bound at length n.

    Per index, the product triple (f_i g_i, f_i h_i, g_i h_i) can only be
    (+,+,+), (+,-,-), (-,+,-) or (-,-,+), so the search space collapses
    from 2**(3n) triples to compositions of n into four class counts.
    The result is exactly 1 for every n; the function recomputes it rather
    than asserting it.
    """
    if n < 1:
        raise EmptySequence("sequence length must be positive")
    if n > BRUTE_FORCE_MAX_LENGTH:
        raise LengthTooLarge(f"length {n} exceeds cap {BRUTE_FORCE_MAX_LENGTH}")
    best = -3 * n
    for c1 in range(n + 1):
        for c2 in range(n + 1 - c1):
            for c3 in range(n + 1 - c1 - c2):
                c4 = n - c1 - c2 - c3
                s_fg = c1 + c2 - c3 - c4
                s_fh = c1 - c2 + c3 - c4
                s_gh = c1 - c2 - c3 + c4
                value = abs(s_fg - s_fh) + s_gh
                if value > best:
                    best = value
    return best / n
