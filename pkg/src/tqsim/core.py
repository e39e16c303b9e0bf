"""Foundational numeric types: complex amplitudes, Minkowski four-vectors,
seeded random streams, Born weights, and weighted stochastic selection.

Conventions used throughout the package:

* natural units, hbar = c = 1;
* metric signature (+, -, -, -), so timelike intervals are positive;
* amplitudes are plain Python ``complex`` values (``ComplexAmplitude`` is
  an alias kept for signature readability).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

ComplexAmplitude = complex


class DomainError(Exception):
    """A runtime failure of the physical model (not a configuration error)."""


class InvalidWeight(DomainError):
    """A selection weight is negative or non-finite."""


class NoCompetingTransactions(DomainError):
    """No candidate carries positive weight, so nothing can be actualized."""


@dataclass(frozen=True, slots=True)
class FourVector:
    """Spacetime or energy-momentum four-vector (t, x, y, z).

    Components must be finite; NaN or infinity raises ``ValueError`` at
    construction so downstream arithmetic never has to re-check.
    """

    t: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("t", "x", "y", "z"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"FourVector.{name} must be finite, got {v!r}")

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t + other.t, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t - other.t, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "FourVector":
        return FourVector(-self.t, -self.x, -self.y, -self.z)

    def spatial_norm2(self) -> float:
        """Squared Euclidean length of the spatial part."""
        return self.x * self.x + self.y * self.y + self.z * self.z


def minkowski_dot(a: FourVector, b: FourVector) -> float:
    """Minkowski inner product with signature (+, -, -, -)."""
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z


def born_weight(m: ComplexAmplitude) -> float:
    """Squared magnitude of an amplitude, conj(m) * m.

    This is the physical weight an offer/confirmation pairing carries; it is
    nonnegative and invariant under a global phase of ``m``.
    """
    return m.real * m.real + m.imag * m.imag


class RandomStream:
    """Deterministic random source with injective substream derivation.

    Built on numpy's counter-based Philox generator keyed through
    ``SeedSequence(seed, spawn_key=...)``: the same seed always reproduces the
    same sample sequence, and ``substream(i)`` derives an independent stream
    identified by the (seed, index path) pair, so parallel trials that each own
    a substream produce the same results as a serial replay.

    The bit stream is fixed by the Philox algorithm and numpy's SeedSequence;
    byte-identical reproducibility across machines additionally requires the
    same numpy version for the distribution methods (uniform, normal, poisson).
    """

    __slots__ = ("seed", "_spawn_key", "generator")

    def __init__(self, seed: int, _spawn_key: tuple[int, ...] = ()):
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ValueError(f"seed must be an integer, got {seed!r}")
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
        self.seed = seed
        self._spawn_key = tuple(_spawn_key)
        seq = np.random.SeedSequence(seed, spawn_key=self._spawn_key)
        self.generator = np.random.Generator(np.random.Philox(seq))

    def substream(self, index: int) -> "RandomStream":
        """Derive the independent stream for trial ``index`` (injective in
        (seed, index); nested derivation extends the index path)."""
        if not isinstance(index, int) or isinstance(index, bool) or index < 0:
            raise ValueError(f"substream index must be a nonnegative integer, got {index!r}")
        return RandomStream(self.seed, self._spawn_key + (index,))

    def __repr__(self):
        return f"RandomStream(seed={self.seed}, spawn_key={self._spawn_key})"


def _cumulative_weights(weights: Sequence[float]) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1:
        raise InvalidWeight("weights must be a one-dimensional sequence")
    if w.size == 0:
        raise NoCompetingTransactions("empty weight sequence")
    bad = ~np.isfinite(w) | (w < 0.0)
    if bad.any():
        i = int(np.argmax(bad))
        raise InvalidWeight(f"weights[{i}] = {w[i]!r} is negative or non-finite")
    cum = np.cumsum(w)
    if cum[-1] == 0.0:
        raise NoCompetingTransactions("all weights are zero")
    return cum


def weighted_select(weights: Sequence[float], rng: RandomStream) -> int:
    """Select index i with probability weights[i] / sum(weights).

    Consumes exactly one uniform variate. Zero-weight entries are never
    selected; negative or non-finite weights raise ``InvalidWeight`` and an
    empty or all-zero sequence raises ``NoCompetingTransactions``.
    """
    cum = _cumulative_weights(weights)
    u = rng.generator.random()
    idx = int(np.searchsorted(cum, u * cum[-1], side="right"))
    return min(idx, cum.size - 1)


def weighted_select_many(weights: Sequence[float], n: int, rng: RandomStream) -> np.ndarray:
    """Vectorized ``weighted_select``: ``n`` independent draws, one uniform
    variate per draw, bit-identical to ``n`` sequential single calls."""
    if n < 1:
        raise ValueError(f"draw count must be >= 1, got {n}")
    cum = _cumulative_weights(weights)
    u = rng.generator.random(n)
    idx = np.searchsorted(cum, u * cum[-1], side="right")
    return np.minimum(idx, cum.size - 1)
