"""The stochastic event engine: offers, confirmations, and actualization.

An emitted offer wave addresses a collection of potential absorbers with one
complex component each. Whether an absorber answers with a confirmation wave
is itself stochastic: a coupling g is the *amplitude* for confirmation, so a
confirmation is generated with probability g^2 (certainty in the
nonrelativistic regime, where couplings play no role). Each confirmation
pairs with its offer component to form an incipient transaction whose weight
is the Born weight of the component, and exactly one incipient transaction
wins the actualization lottery in proportion to its weight. An offer that
collects no confirmations produces no event at all.

Macroscopic detectors are modeled as N independent micro-absorbers sharing
one coupling; the chance that at least one of them confirms,
1 - (1 - g^2)^N, saturates to 1 for laboratory-scale N, which is what makes
squared-amplitude statistics look certain at the instrument level even
though each micro-coupling almost never fires.

The two-slit experiment is included as the canonical interference test bed:
each screen cell is an ideal macroscopic absorber, the per-cell offer is the
coherent two-path sum, and repeated actualization reproduces the analytic
Born pattern.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .core import (ComplexAmplitude, DomainError, RandomStream, born_weight,
                   weighted_select, weighted_select_many)
from .scattering import Coupling


class MissingComponent(DomainError):
    """An absorber and the offer wave do not address each other."""


class DegenerateGeometry(DomainError):
    """A propagation leg has zero length."""


class Regime(Enum):
    RELATIVISTIC = "relativistic"        # confirmation with probability g^2
    NONRELATIVISTIC = "nonrelativistic"  # confirmation with certainty


@dataclass(frozen=True, slots=True)
class PotentialAbsorber:
    """An entity that may answer an offer component with a confirmation."""

    id: Hashable
    coupling: Coupling
    label: str = ""


@dataclass(frozen=True)
class OfferWave:
    """Emitted wave: one finite complex component per addressed absorber id."""

    components: Mapping[Hashable, ComplexAmplitude]

    def __post_init__(self):
        comps = dict(self.components)
        if not comps:
            raise ValueError("an offer wave needs at least one component")
        for key, amp in comps.items():
            amp = complex(amp)
            if not cmath.isfinite(amp):
                raise ValueError(f"offer component for {key!r} is not finite: {amp!r}")
            comps[key] = amp
        object.__setattr__(self, "components", comps)


class ConfirmationWave(NamedTuple):
    """Absorber response; its amplitude is the conjugate of the offer component."""

    absorber_id: Hashable
    amplitude: ComplexAmplitude


@dataclass(frozen=True, slots=True)
class IncipientTransaction:
    """A confirmed offer component competing for actualization with weight
    born_weight(component); weights are only normalized against the rivals
    present in the same actualization."""

    absorber_id: Hashable
    weight: float


@dataclass(frozen=True, slots=True)
class DetectorArray:
    """N micro-absorbers sharing one coupling (a macroscopic detector)."""

    count: int
    coupling: Coupling

    def __post_init__(self):
        if not isinstance(self.count, int) or isinstance(self.count, bool) or self.count < 1:
            raise ValueError(f"DetectorArray.count must be an integer >= 1, got {self.count!r}")


def confirmation_probability(c: Coupling) -> float:
    """Probability g^2 that a single coupling generates a confirmation."""
    return c.g * c.g


def detector_response_probability(d: DetectorArray) -> float:
    """Probability that at least one of the N micro-absorbers confirms.

    1 - (1 - g^2)^N evaluated in log space, -expm1(N * log1p(-g^2)), so the
    complement survives in double precision up to N ~ 1e23 and beyond.
    """
    p = confirmation_probability(d.coupling)
    if d.count == 1:
        return p
    return -math.expm1(d.count * math.log1p(-p))


def detector_response_log_complement(d: DetectorArray) -> float:
    """log(1 - p_response) = N * log1p(-g^2), reportable even when the
    complement itself underflows to zero."""
    return d.count * math.log1p(-confirmation_probability(d.coupling))


def _require_mutual_addressing(ow: OfferWave, absorbers: Sequence[PotentialAbsorber]) -> None:
    ids = [a.id for a in absorbers]
    idset = set(ids)
    if len(idset) != len(ids):
        raise ValueError("absorber ids must be unique")
    for a_id in ids:
        if a_id not in ow.components:
            raise MissingComponent(f"offer wave has no component for absorber {a_id!r}")
    for key in ow.components:
        if key not in idset:
            raise MissingComponent(f"offer component {key!r} addresses no listed absorber")


def sample_confirmations(ow: OfferWave, absorbers: Sequence[PotentialAbsorber],
                         regime: Regime, rng: RandomStream) -> list[ConfirmationWave]:
    """Draw the set of confirmation waves answering an offer.

    Relativistic regime: each absorber confirms independently with
    probability g_i^2 (one uniform variate per absorber, in sequence order).
    Nonrelativistic regime: every addressed absorber confirms, no randomness.
    Each confirmation amplitude is the conjugate of the offer component.

    The returned list holds at most one confirmation per absorber (set
    semantics) in absorber sequence order.
    """
    _require_mutual_addressing(ow, absorbers)
    if regime is Regime.NONRELATIVISTIC:
        picked: Iterable[PotentialAbsorber] = absorbers
    else:
        u = rng.generator.random(len(absorbers))
        probs = np.fromiter((a.coupling.g * a.coupling.g for a in absorbers),
                            dtype=float, count=len(absorbers))
        picked = (absorbers[i] for i in np.flatnonzero(u < probs))
    return [ConfirmationWave(a.id, ow.components[a.id].conjugate()) for a in picked]


def form_incipient_transactions(ow: OfferWave,
                                cws: Iterable[ConfirmationWave]) -> list[IncipientTransaction]:
    """Pair confirmations with their offer components, sorted by absorber id.

    Weight = born_weight(offer component), the offer-times-conjugate product.
    A confirmation whose id the offer never addressed raises
    ``MissingComponent``. No confirmations means no possible transaction: the
    result is empty and the offer simply remains unconfirmed.
    """
    out = []
    for cw in sorted(cws, key=lambda c: c.absorber_id):
        try:
            comp = ow.components[cw.absorber_id]
        except KeyError:
            raise MissingComponent(
                f"confirmation from {cw.absorber_id!r} matches no offer component") from None
        out.append(IncipientTransaction(cw.absorber_id, born_weight(comp)))
    return out


def actualize(incipients: Sequence[IncipientTransaction], rng: RandomStream) -> Hashable:
    """Select exactly one winner, with probability proportional to weight.

    The spontaneous symmetry breaking of the competition: only one candidate
    can receive the emitted energy. Empty or all-zero competition raises
    ``NoCompetingTransactions``.
    """
    idx = weighted_select([t.weight for t in incipients], rng)
    return incipients[idx].absorber_id


def detector_confirmation_counts(d: DetectorArray, trials: int,
                                 rng: RandomStream) -> np.ndarray:
    """Confirmation counts from ``trials`` independent exposures of the array.

    Each trial thins the N micro-absorbers exactly as
    ``sample_confirmations`` does in the relativistic regime (one uniform per
    absorber, same stream consumption, so the two paths agree draw for draw);
    only the count is kept, which makes detector-scale N affordable.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    p = confirmation_probability(d.coupling)
    counts = np.empty(trials, dtype=np.int64)
    gen = rng.generator
    for i in range(trials):
        counts[i] = int(np.count_nonzero(gen.random(d.count) < p))
    return counts


# ---------------------------------------------------------------------------
# Two-slit experiment
# ---------------------------------------------------------------------------

Point = tuple[float, float]


def _check_point(name: str, p) -> Point:
    try:
        x, y = p
        x, y = float(x), float(y)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be a 2-D point, got {p!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"{name} has non-finite coordinates: {p!r}")
    return (x, y)


@dataclass(frozen=True)
class TwoSlitGeometry:
    """Source, two slits (either may be masked to None), screen cells, and
    the wavenumber k of the emitted wave. All positions are 2-D points."""

    source: Point
    slit_a: Point | None
    slit_b: Point | None
    cells: tuple[Point, ...]
    k: float

    def __post_init__(self):
        source = _check_point("source", self.source)
        object.__setattr__(self, "source", source)
        slits = {}
        for name in ("slit_a", "slit_b"):
            s = getattr(self, name)
            if s is not None:
                s = _check_point(name, s)
                slits[name] = s
            object.__setattr__(self, name, s)
        if not slits:
            raise ValueError("at least one slit must be present")
        if len(slits) == 2 and slits["slit_a"] == slits["slit_b"]:
            raise ValueError("slits must be distinct")
        cells = tuple(_check_point(f"cells[{i}]", c) for i, c in enumerate(self.cells))
        if not cells:
            raise ValueError("at least one screen cell is required")
        if len(set(cells)) != len(cells):
            raise ValueError("screen cells must be distinct")
        object.__setattr__(self, "cells", cells)
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise ValueError(f"wavenumber k must be finite and > 0, got {self.k!r}")

    @classmethod
    def standard(cls, source: Point = (0.0, 0.0), slit_a: Point | None = (1.0, 0.5),
                 slit_b: Point | None = (1.0, -0.5), screen_x: float = 3.0,
                 screen_ymin: float = -3.0, screen_ymax: float = 3.0,
                 cells: int = 201, k: float = 50.0) -> "TwoSlitGeometry":
        """Shipped default: source at the origin, slits at (1, +-0.5), a
        201-cell screen line at x = 3 spanning y in [-3, 3], k = 50."""
        ys = np.linspace(screen_ymin, screen_ymax, cells)
        return cls(source=source, slit_a=slit_a, slit_b=slit_b,
                   cells=tuple((screen_x, float(y)) for y in ys), k=k)

    def masked(self, keep: str) -> "TwoSlitGeometry":
        """Copy of the geometry with only slit 'A' or 'B' open."""
        if keep not in ("A", "B"):
            raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
        return TwoSlitGeometry(
            source=self.source,
            slit_a=self.slit_a if keep == "A" else None,
            slit_b=self.slit_b if keep == "B" else None,
            cells=self.cells, k=self.k)

    def open_slits(self) -> list[Point]:
        return [s for s in (self.slit_a, self.slit_b) if s is not None]


def _leg_amplitude(a: Point, b: Point, k: float) -> ComplexAmplitude:
    # outgoing spherical-wave kernel e^{ikL}/L restricted to the plane
    length = math.hypot(a[0] - b[0], a[1] - b[1])
    if length == 0.0:
        raise DegenerateGeometry(f"zero-length propagation leg between {a} and {b}")
    return cmath.exp(1j * k * length) / length


def two_slit_offer(geom: TwoSlitGeometry, cell_index: int) -> ComplexAmplitude:
    """Offer component reaching one screen cell: the coherent sum over open
    slits of (source -> slit) * (slit -> cell) leg amplitudes."""
    cell = geom.cells[cell_index]
    total = 0j
    for slit in geom.open_slits():
        total += _leg_amplitude(geom.source, slit, geom.k) * _leg_amplitude(slit, cell, geom.k)
    return total


def two_slit_weights(geom: TwoSlitGeometry) -> np.ndarray:
    """Unnormalized Born weights of the analytic pattern, one per cell."""
    return np.array([born_weight(two_slit_offer(geom, i)) for i in range(len(geom.cells))])


def two_slit_pattern(geom: TwoSlitGeometry, trials: int, rng: RandomStream) -> np.ndarray:
    """Histogram of actualized screen positions over ``trials`` emissions.

    Every screen cell is an ideal macroscopic absorber, so each trial's
    confirmed set is the full screen and the trial reduces to one Born-
    weighted actualization (one uniform variate per trial; the loop is
    vectorized through ``weighted_select_many``, draw-for-draw identical to
    per-trial ``actualize`` calls).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    ncells = len(geom.cells)
    offer = OfferWave({i: two_slit_offer(geom, i) for i in range(ncells)})
    screen = [PotentialAbsorber(i, Coupling(1.0), label="screen cell") for i in range(ncells)]
    confirmed = sample_confirmations(offer, screen, Regime.NONRELATIVISTIC, rng)
    incipients = form_incipient_transactions(offer, confirmed)
    winners = weighted_select_many([t.weight for t in incipients], trials, rng)
    return np.bincount(winners, minlength=ncells)


def fringe_visibility(geom: TwoSlitGeometry, resolution: int = 4001) -> float:
    """Michelson contrast (max-min)/(max+min) of the analytic pattern after
    dividing out the single-slit envelope.

    The pattern is the envelope |A|^2 + |B|^2 times a modulation in [0, 2];
    normalizing by the envelope isolates the fringes from the geometric 1/L
    falloff. Evaluated on a dense straight-line refinement of the screen
    segment so sampled extrema sit close to the true ones. A single open
    slit has modulation identically 1, hence visibility 0.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    slits = geom.open_slits()
    if len(slits) == 1:
        return 0.0
    (x0, y0), (x1, y1) = geom.cells[0], geom.cells[-1]
    ts = np.linspace(0.0, 1.0, resolution)
    pattern = np.empty(resolution)
    envelope = np.empty(resolution)
    for i, t in enumerate(ts):
        cell = (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
        legs = [_leg_amplitude(geom.source, s, geom.k) * _leg_amplitude(s, cell, geom.k)
                for s in slits]
        pattern[i] = born_weight(sum(legs))
        envelope[i] = sum(born_weight(a) for a in legs)
    m = pattern / envelope
    return float((m.max() - m.min()) / (m.max() + m.min()))
