"""Local deterministic response models and the commitment-order protocol.

An :class:`LhvModel` draws a shared hidden unit vector lambda per particle
pair and answers every direction query with a deterministic sign, so
measured and counterfactual (unperformed) values all exist as genuine +-1
sequences.  Any triple of such sequences therefore satisfies the
three-sequence bound exactly; what such a model cannot do is reproduce the
cosine correlations, and the experiments module quantifies that failure.

The commitment protocol is the bookkeeping half: preparation signs must be
committed before a measurement direction is chosen, and a token is spent
by measuring.  Out-of-order use raises :class:`OrderingViolation`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .geometry import UnitVector3
from .rng import RngStream
from .sequences import SignSequence

__all__ = [
    "MODEL_NAMES",
    "LhvModel",
    "MissingHiddenState",
    "OrderingViolation",
    "CommitmentToken",
    "make_lhv_model",
    "sample_lhv",
    "counterfactual_values",
    "sign_model_correlation",
    "commit",
    "choose_direction",
    "measure",
]

MODEL_NAMES = ("sign-circle", "sign-sphere")


class MissingHiddenState(ValueError):
    """Counterfactual queries need the lambda draws of a prior run."""


class OrderingViolation(RuntimeError):
    """The commit -> choose-direction -> measure order was broken."""


def _sign_response(lambdas: np.ndarray, direction: UnitVector3) -> np.ndarray:
    # sign(direction . lambda) with sign(0) := +1
    s = lambdas @ direction.as_array()
    return np.where(s >= 0.0, np.int8(1), np.int8(-1))


def _mirrored_sign_response(lambdas: np.ndarray, direction: UnitVector3) -> np.ndarray:
    return -_sign_response(lambdas, direction)


def _orthonormal_to(e1: np.ndarray) -> np.ndarray:
    # deterministic perpendicular: Gram-Schmidt against the least-aligned axis
    pivot = np.zeros(3)
    pivot[int(np.argmin(np.abs(e1)))] = 1.0
    e2 = pivot - (pivot @ e1) * e1
    return e2 / np.linalg.norm(e2)


def _circle_frame(alpha: UnitVector3, beta: UnitVector3) -> tuple[np.ndarray, np.ndarray]:
    e1 = alpha.as_array()
    d = float(e1 @ beta.as_array())
    if abs(d) >= 1.0 - 1e-9:
        return e1, _orthonormal_to(e1)
    e2 = beta.as_array() - d * e1
    return e1, e2 / np.linalg.norm(e2)


def _circle_points(frame: tuple[np.ndarray, np.ndarray], n: int, rng: RngStream) -> np.ndarray:
    psi = 2.0 * math.pi * rng.uniforms(n)
    return np.outer(np.cos(psi), frame[0]) + np.outer(np.sin(psi), frame[1])


def _sphere_points(n: int, rng: RngStream) -> np.ndarray:
    z = 2.0 * rng.uniforms(n) - 1.0
    phi = 2.0 * math.pi * rng.uniforms(n)
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


@dataclass(frozen=True)
class LhvModel:
    """Hidden-variable law plus one deterministic response map per wing.

    ``response_a``/``response_b`` take (lambdas, own direction) only, so a
    wing's values cannot depend on the far setting; that is the locality
    property the tests check by permuting the far direction.
    """

    name: str
    hidden_variable_law: str
    draw_lambdas: Callable[[UnitVector3, UnitVector3, int, RngStream], np.ndarray]
    response_a: Callable[[np.ndarray, UnitVector3], np.ndarray]
    response_b: Callable[[np.ndarray, UnitVector3], np.ndarray]

    def pinned_to_plane(self, a: UnitVector3, b: UnitVector3) -> "LhvModel":
        """Fix the circle law to the (a, b) plane for a whole experiment.

        A single particle stream should have one hidden-variable law, not
        one per measurement pair; experiments pin the circle to the plane
        of the claimed axes.  The sphere law is unaffected.
        """
        if self.hidden_variable_law != "great-circle":
            return self
        frame = _circle_frame(a, b)

        def draw(alpha, beta, n, rng, _frame=frame):
            return _circle_points(_frame, n, rng)

        return replace(self, draw_lambdas=draw)


def make_lhv_model(name: str) -> LhvModel:
    """Built-in models: "sign-circle" and "sign-sphere".

    Both answer sign(direction . lambda) on one wing and its negation on
    the other; they differ in the lambda law (great circle through the two
    queried directions vs uniform sphere).  Either way the pair correlation
    at angle theta is -1 + 2 theta/pi.
    """
    if name == "sign-circle":

        def draw(alpha, beta, n, rng):
            return _circle_points(_circle_frame(alpha, beta), n, rng)

        law = "great-circle"
    elif name == "sign-sphere":

        def draw(alpha, beta, n, rng):
            return _sphere_points(n, rng)

        law = "uniform-sphere"
    else:
        raise ValueError(f"unknown model {name!r}; choose from {MODEL_NAMES}")
    return LhvModel(
        name=name,
        hidden_variable_law=law,
        draw_lambdas=draw,
        response_a=_sign_response,
        response_b=_mirrored_sign_response,
    )


def sign_model_correlation(theta: float) -> float:
    """Closed-form pair correlation of the built-in models at angle theta."""
    return -1.0 + 2.0 * theta / math.pi


def sample_lhv(
    model: LhvModel, alpha: UnitVector3, beta: UnitVector3, n: int, rng: RngStream
) -> tuple[SignSequence, SignSequence, np.ndarray]:
    """One run: draw lambdas, answer both wings, retain lambdas.

    The returned lambda buffer is marked read-only; assigned values must
    not change once produced, and counterfactual queries replay from it.
    """
    if n < 1:
        raise ValueError("need at least one pair")
    lambdas = model.draw_lambdas(alpha, beta, n, rng)
    lambdas.setflags(write=False)
    a_seq = SignSequence.from_array(model.response_a(lambdas, alpha))
    b_seq = SignSequence.from_array(model.response_b(lambdas, beta))
    return a_seq, b_seq, lambdas


def counterfactual_values(
    model: LhvModel, lambdas: np.ndarray | None, direction: UnitVector3, side: str
) -> SignSequence:
    """Signs the model assigns to an unperformed measurement.

    ``side`` picks the wing ("A" or "B") whose response map answers; the
    result is fully determined by the retained lambdas.
    """
    if lambdas is None or np.size(lambdas) == 0:
        raise MissingHiddenState("no retained hidden-variable draws")
    wing = side.upper()
    if wing == "A":
        return SignSequence.from_array(model.response_a(lambdas, direction))
    if wing == "B":
        return SignSequence.from_array(model.response_b(lambdas, direction))
    raise ValueError("side must be 'A' or 'B'")


_COMMITTED = "committed"
_DIRECTION_CHOSEN = "direction-chosen"
_MEASURED = "measured"


class CommitmentToken:
    """Single-use record of the commit -> choose -> measure chain."""

    __slots__ = ("u", "alpha", "_state")

    def __init__(self, u: SignSequence):
        if not isinstance(u, SignSequence):
            raise OrderingViolation("commitment requires a sign sequence")
        self.u = u
        self.alpha: UnitVector3 | None = None
        self._state = _COMMITTED

    @property
    def state(self) -> str:
        return self._state


def commit(u: SignSequence) -> CommitmentToken:
    """Fix the preparation signs; nothing about a direction exists yet."""
    return CommitmentToken(u)


def choose_direction(token: CommitmentToken, alpha: UnitVector3) -> CommitmentToken:
    """Attach a measurement direction to an already-committed token."""
    if not isinstance(token, CommitmentToken):
        raise OrderingViolation("direction chosen before any signs were committed")
    if token._state != _COMMITTED:
        raise OrderingViolation(f"cannot choose a direction on a {token._state} token")
    token.alpha = alpha
    token._state = _DIRECTION_CHOSEN
    return token


def measure(
    token: CommitmentToken, sampler: Callable[[SignSequence, UnitVector3], SignSequence]
) -> SignSequence:
    """Spend the token: run the sampler on (u, alpha) exactly once."""
    if not isinstance(token, CommitmentToken):
        raise OrderingViolation("measurement attempted without a committed token")
    if token._state == _COMMITTED:
        raise OrderingViolation("measurement attempted before choosing a direction")
    if token._state == _MEASURED:
        raise OrderingViolation("token already spent by a measurement")
    token._state = _MEASURED
    return sampler(token.u, token.alpha)
