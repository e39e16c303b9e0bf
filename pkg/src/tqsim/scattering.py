"""Tree-level two-diagram scalar scattering.

A toy electron-positron style process: two incoming and two outgoing
momenta exchange a massless quantum either by annihilation (s-channel,
q = p1 + p2) or by exchange (t-channel, q = p1 - p3). Spin is ignored and
the vertex strength is a single dimensionless coupling g, so each diagram
contributes (ig) * (i/q^2) * (ig) = -i g^2 / q^2 and the two contributions
interfere in the summed amplitude. There is no fermionic relative sign
between the diagrams; real Bhabha scattering has one, this scalar model
does not.

Amplitudes are bare products of the vertex and kernel factors (energy-
momentum conservation is imposed as a constructor invariant rather than
carried around as delta functions), and only the two lowest-order diagrams
are computed. Cross-sections, flux factors and spinor currents are out of
scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import ComplexAmplitude, FourVector, born_weight, minkowski_dot
from .propagators import green_generic

CONSERVATION_TOL = 1e-12
MASS_SHELL_TOL = 1e-12


class InvalidKinematics(ValueError):
    """External momenta violate conservation, mass shell, or energy positivity."""


class InvalidCoupling(ValueError):
    """Coupling outside [0, 1]; g^2 must be usable as a probability."""


@dataclass(frozen=True, slots=True)
class Coupling:
    """Dimensionless vertex interaction strength g, restricted to [0, 1]."""

    g: float

    def __post_init__(self):
        if not (math.isfinite(self.g) and 0.0 <= self.g <= 1.0):
            raise InvalidCoupling(f"coupling.g must lie in [0,1], got {self.g!r}")


class Channel(Enum):
    ANNIHILATION = "annihilation"
    EXCHANGE = "exchange"


def kinematic_violations(p1: FourVector, p2: FourVector, p3: FourVector,
                         p4: FourVector, mass: float = 0.0) -> list[str]:
    """All constraint violations of a candidate 2->2 momentum set (empty list
    means ``ScatterProcess`` would accept it)."""
    out = []
    if not (math.isfinite(mass) and mass >= 0.0):
        out.append(f"mass must be finite and >= 0, got {mass!r}")
        return out
    total_in = p1 + p2
    total_out = p3 + p4
    for comp in ("t", "x", "y", "z"):
        gap = abs(getattr(total_in, comp) - getattr(total_out, comp))
        if gap > CONSERVATION_TOL:
            out.append(f"conservation violated in component {comp} by {gap:.3e}")
    m2 = mass * mass
    for name, p in (("p1", p1), ("p2", p2), ("p3", p3), ("p4", p4)):
        gap = abs(minkowski_dot(p, p) - m2)
        if gap > MASS_SHELL_TOL:
            out.append(f"{name} off its mass shell: |p^2 - m^2| = {gap:.3e}")
        if not p.t > 0.0:
            out.append(f"{name} has non-positive energy {p.t!r}")
    return out


@dataclass(frozen=True, slots=True)
class ScatterProcess:
    """On-shell 2->2 kinematics: p1 + p2 -> p3 + p4, common external mass.

    Construction validates conservation (componentwise, 1e-12), the mass
    shell for every leg (1e-12) and positive energies.
    """

    p1: FourVector
    p2: FourVector
    p3: FourVector
    p4: FourVector
    mass: float = 0.0

    def __post_init__(self):
        problems = kinematic_violations(self.p1, self.p2, self.p3, self.p4, self.mass)
        if problems:
            raise InvalidKinematics("; ".join(problems))


def channel_momentum(proc: ScatterProcess, ch: Channel) -> FourVector:
    """Virtual-quantum momentum: p1+p2 for annihilation, p1-p3 for exchange."""
    if ch is Channel.ANNIHILATION:
        return proc.p1 + proc.p2
    return proc.p1 - proc.p3


def diagram_amplitude(proc: ScatterProcess, ch: Channel, c: Coupling) -> ComplexAmplitude:
    """Single-diagram amplitude (ig) * i/q^2 * (ig) = -i g^2 / q^2.

    Raises ``OnShellPole`` for q^2 = 0 (forward scattering in the exchange
    channel is genuinely singular for massless exchange).
    """
    vertex = 1j * c.g
    return vertex * green_generic(channel_momentum(proc, ch)) * vertex


def total_amplitude(proc: ScatterProcess, c: Coupling) -> ComplexAmplitude:
    """Sum of the two diagram amplitudes; the channels interfere."""
    return (diagram_amplitude(proc, Channel.ANNIHILATION, c)
            + diagram_amplitude(proc, Channel.EXCHANGE, c))


def scatter_probability(proc: ScatterProcess, c: Coupling) -> float:
    """Born weight |M|^2 of the summed amplitude."""
    return born_weight(total_amplitude(proc, c))


def interference_term(proc: ScatterProcess, c: Coupling) -> float:
    """Cross term 2 Re(conj(M1) M2), the part of |M|^2 beyond |M1|^2 + |M2|^2."""
    m1 = diagram_amplitude(proc, Channel.ANNIHILATION, c)
    m2 = diagram_amplitude(proc, Channel.EXCHANGE, c)
    return 2.0 * (m1.conjugate() * m2).real
