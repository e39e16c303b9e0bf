"""Momentum-space massless scalar propagators.

Five regulator prescriptions for the same 1/q^2 kernel:

* generic:        i / q^2                       (bare pole, errors on shell)
* Feynman:        i / (q^2 + i eps)
* retarded:       1 / ((q_t + i eps)^2 - |q|^2)
* advanced:       1 / ((q_t - i eps)^2 - |q|^2)
* time-symmetric: (retarded + advanced) / 2, evaluated in fused real form

Normalization: the generic and Feynman forms carry the explicit factor i of
the momentum-space kernel; the one-sided Green functions follow the plain
1/(...) convention so their average is real. Off shell the two conventions
agree up to that factor i as eps -> 0.

Everything here is a pure function of (q, eps); position-space distributional
forms are deliberately not implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import ComplexAmplitude, DomainError, FourVector, minkowski_dot

DEFAULT_EPSILON = 1e-9


class OnShellPole(DomainError):
    """q^2 = 0: the unregulated kernel is singular (forward/collinear light-like momentum)."""


@dataclass(frozen=True, slots=True)
class Regulator:
    """Infinitesimal imaginary displacement eps > 0, in units of momentum squared.

    Keep eps small relative to |q^2| when evaluating off shell; the shipped
    default is far below any |q^2| used in the bundled experiments.
    """

    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise ValueError(f"Regulator.epsilon must be finite and > 0, got {self.epsilon!r}")


class PropagatorKind(Enum):
    RETARDED = "retarded"
    ADVANCED = "advanced"
    FEYNMAN = "feynman"
    TIME_SYMMETRIC = "time_symmetric"
    GENERIC = "generic"


def green_generic(q: FourVector) -> ComplexAmplitude:
    """i / q^2 with no regulator; raises ``OnShellPole`` when q^2 = 0."""
    q2 = minkowski_dot(q, q)
    if q2 == 0.0:
        raise OnShellPole(f"q = {q} is light-like (q^2 = 0); generic kernel has a pole")
    return 1j / q2


def green_feynman(q: FourVector, reg: Regulator) -> ComplexAmplitude:
    """i / (q^2 + i eps); finite for every q since eps > 0."""
    return 1j / complex(minkowski_dot(q, q), reg.epsilon)


def _denominator_parts(q: FourVector, eps: float) -> tuple[float, float, float]:
    # (q_t + i eps)^2 - |q|^2 = re + i*im with re = q_t^2 - eps^2 - |q|^2,
    # im = 2 q_t eps. d = re^2 + im^2 > 0 for eps > 0, so no division hazard.
    re = (q.t * q.t - eps * eps) - q.spatial_norm2()
    im = 2.0 * q.t * eps
    return re, im, re * re + im * im


def green_retarded(q: FourVector, reg: Regulator) -> ComplexAmplitude:
    """1 / ((q_t + i eps)^2 - |q|^2), the forward-in-time Green function."""
    re, im, d = _denominator_parts(q, reg.epsilon)
    return complex(re / d, -im / d)


def green_advanced(q: FourVector, reg: Regulator) -> ComplexAmplitude:
    """1 / ((q_t - i eps)^2 - |q|^2), the time-reverse of ``green_retarded``."""
    re, im, d = _denominator_parts(q, reg.epsilon)
    return complex(re / d, im / d)


def green_time_symmetric(q: FourVector, reg: Regulator) -> ComplexAmplitude:
    """Average of the retarded and advanced Green functions.

    Evaluated in fused form: the two denominators are complex conjugates, so
    the average is exactly real, re / (re^2 + im^2), with re and im as in the
    one-sided functions. This is finite even on shell (conjugate-pair
    cancellation) and tends to 1/q^2 off shell as eps -> 0.
    """
    re, _, d = _denominator_parts(q, reg.epsilon)
    return complex(re / d, 0.0)


def green(kind: PropagatorKind, q: FourVector, reg: Regulator | None = None) -> ComplexAmplitude:
    """Evaluate the propagator of the given kind; ``reg`` defaults to
    ``Regulator()`` and is ignored by the generic kind."""
    if kind is PropagatorKind.GENERIC:
        return green_generic(q)
    if reg is None:
        reg = Regulator()
    if kind is PropagatorKind.FEYNMAN:
        return green_feynman(q, reg)
    if kind is PropagatorKind.RETARDED:
        return green_retarded(q, reg)
    if kind is PropagatorKind.ADVANCED:
        return green_advanced(q, reg)
    if kind is PropagatorKind.TIME_SYMMETRIC:
        return green_time_symmetric(q, reg)
    raise ValueError(f"unknown propagator kind {kind!r}")
