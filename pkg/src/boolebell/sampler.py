"""Outcome-sequence samplers with quantum statistics.

Two sources are modeled.  A prepared source carries a fixed axis ``a`` and
pre-committed signs ``u``; measuring along ``alpha`` yields x_i = +1 with
probability (1 + u_i (a.alpha))/2 so that E[u_i x_i] = a.alpha, the
spin-1/2 cosine law.  A singlet pair measured along (alpha, beta) follows
the joint law P(A=s, B=t) = (1 - s t (alpha.beta))/4: unbiased marginals,
E[AB] = -alpha.beta, and perfect anticorrelation at alpha = beta.

Every sampler consumes one uniform draw per outcome from an
:class:`~boolebell.rng.RngStream`, so runs are reproducible from
(seed, stream_id, counter) alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import UnitVector3
from .rng import RngStream
from .sequences import SignSequence

__all__ = [
    "InvalidProbability",
    "PreparedSource",
    "random_signs",
    "sample_prepared",
    "sample_singlet",
    "sample_singlet_partner",
    "clamp_unit_dot",
]


class InvalidProbability(ValueError):
    """A correlation target left [-1, 1] by more than the tolerance."""


_DOT_TOL = 1e-9


def clamp_unit_dot(value: float) -> float:
    """Snap a cosine to [-1, 1]; reject genuine excursions."""
    if abs(value) > 1.0 + _DOT_TOL:
        raise InvalidProbability(f"|{value}| > 1 is not a unit-vector cosine")
    return max(-1.0, min(1.0, value))


@dataclass(frozen=True)
class PreparedSource:
    """Spin-1/2 stream prepared along ``axis`` with sign pattern ``u``.

    Particle i is prepared along u_i * axis; ``u`` must be fixed before
    any measurement direction is chosen (the commitment protocol in
    :mod:`boolebell.realism` enforces this in experiments).
    """

    axis: UnitVector3
    u: SignSequence


def random_signs(n: int, rng: RngStream) -> SignSequence:
    """n fair independent signs."""
    if n < 1:
        raise ValueError("need at least one sign")
    return SignSequence.from_array(rng.uniforms(n) < 0.5)


def sample_prepared(src: PreparedSource, alpha: UnitVector3, rng: RngStream) -> SignSequence:
    """Measure the prepared stream along ``alpha``.

    Independently per index, x_i = +1 with probability
    (1 + u_i (a.alpha))/2; at alpha = axis this collapses to x = u exactly.
    """
    c = clamp_unit_dot(src.axis.dot(alpha))
    u = src.u.to_array().astype(np.float64)
    p_plus = 0.5 * (1.0 + u * c)
    return SignSequence.from_array(rng.uniforms(src.u.length) < p_plus)


def sample_singlet(
    alpha: UnitVector3, beta: UnitVector3, n: int, rng: RngStream
) -> tuple[SignSequence, SignSequence]:
    """One singlet run of n pairs measured along (alpha, beta).

    A is a fair coin per pair; B disagrees with A with probability
    (1 + alpha.beta)/2, reproducing the joint law exactly.
    """
    if n < 1:
        raise ValueError("need at least one pair")
    a_signs = rng.uniforms(n) < 0.5
    a_arr = np.where(a_signs, np.int8(1), np.int8(-1))
    return SignSequence.from_array(a_arr), _conditional_partner(a_arr, alpha.dot(beta), n, rng)


def sample_singlet_partner(
    fixed: SignSequence,
    fixed_direction: UnitVector3,
    other_direction: UnitVector3,
    rng: RngStream,
) -> SignSequence:
    """Other wing of a singlet run whose first wing is already known.

    Conditioned on one wing's outcomes along ``fixed_direction``, the other
    wing along ``other_direction`` flips each sign with probability
    (1 + fixed_direction.other_direction)/2.  Sampling A then B this way,
    or B then A, realizes the same joint law.
    """
    arr = fixed.to_array()
    c = fixed_direction.dot(other_direction)
    return _conditional_partner(arr, c, fixed.length, rng)


def _conditional_partner(
    known: np.ndarray, cosine: float, n: int, rng: RngStream
) -> SignSequence:
    c = clamp_unit_dot(cosine)
    flip = rng.uniforms(n) < 0.5 * (1.0 + c)
    return SignSequence.from_array(np.where(flip, -known, known))
