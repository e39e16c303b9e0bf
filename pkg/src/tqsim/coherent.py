"""Coherent states of a single field mode and their detection statistics.

A coherent state |alpha> has Fock coefficients c_n = e^{-|a|^2/2} a^n/sqrt(n!)
and is an eigenstate of the annihilation operator, so removing a quantum
leaves it unchanged; photon counts drawn from it are Poisson with mean
|alpha|^2. Quadrature measurements at local-oscillator phase theta have mean
sqrt(2)|alpha| cos(theta - arg alpha) and variance 1/2 independent of alpha:
the signal grows with |alpha| while the noise floor stays at the vacuum
level, which is the classical-limit statement this module exists to exhibit.

Quadrature convention: X_theta = (a e^{-i theta} + a^dagger e^{i theta}) / sqrt(2),
giving vacuum variance 1/2. Sampling uses the exact Gaussian law of the
coherent state rather than simulating a homodyne detector photon by photon.

Counting statistics depend only on |alpha|^2, never on a mode frequency;
energy bookkeeping per detected quantum is outside this model.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import ComplexAmplitude, RandomStream

QUADRATURE_VARIANCE = 0.5


def fock_truncation(alpha_sq: float) -> int:
    """Truncation level ceil(|a|^2 + 12 sqrt(|a|^2 + 1)); leaves Poisson tail
    mass below ~1e-20, enough for 1e-8 eigenvalue-property accuracy."""
    if not (math.isfinite(alpha_sq) and alpha_sq >= 0.0):
        raise ValueError(f"alpha_sq must be finite and >= 0, got {alpha_sq!r}")
    return math.ceil(alpha_sq + 12.0 * math.sqrt(alpha_sq + 1.0))


@dataclass(frozen=True)
class CoherentState:
    """Field amplitude alpha plus the Fock-space truncation level n_max.

    ``n_max=None`` (the default) applies ``fock_truncation``; passing a
    smaller explicit value weakens the truncated-norm and eigenvalue
    guarantees accordingly.
    """

    alpha: ComplexAmplitude
    n_max: int | None = None

    def __post_init__(self):
        alpha = complex(self.alpha)
        if not cmath.isfinite(alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)
        n_max = self.n_max
        if n_max is None:
            n_max = fock_truncation(self.mean_photon_number())
        if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 0:
            raise ValueError(f"n_max must be an integer >= 0, got {self.n_max!r}")
        object.__setattr__(self, "n_max", n_max)

    def mean_photon_number(self) -> float:
        return self.alpha.real ** 2 + self.alpha.imag ** 2


@dataclass(frozen=True, eq=False)
class FockVector:
    """Coefficients over the number basis |0> .. |n_max>.

    State vectors produced by ``coherent_coefficients`` carry squared norm
    within 1e-12 of 1 (truncated normalization); operator application can
    legitimately return unnormalized vectors, so the bound is not enforced
    at construction.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        coeff = np.asarray(self.coefficients, dtype=complex)
        if coeff.ndim != 1 or coeff.size == 0:
            raise ValueError("coefficients must be a nonempty 1-D sequence")
        object.__setattr__(self, "coefficients", coeff)

    @property
    def n_max(self) -> int:
        return self.coefficients.size - 1

    def squared_norm(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))


@dataclass(frozen=True, slots=True)
class QuadraturePhase:
    """Local-oscillator phase theta, radians (periodic, unrestricted)."""

    theta: float


def coherent_coefficients(s: CoherentState) -> FockVector:
    """Fock coefficients c_n = e^{-|a|^2/2} a^n / sqrt(n!), in log space.

    Magnitudes are assembled as exp(-|a|^2/2 + n log|a| - lgamma(n+1)/2) so
    mean photon numbers up to ~1e4 stay inside double range; the phase of
    a^n rotates separately.
    """
    a2 = s.mean_photon_number()
    n = np.arange(s.n_max + 1)
    if a2 == 0.0:
        coeff = np.zeros(s.n_max + 1, dtype=complex)
        coeff[0] = 1.0
        return FockVector(coeff)
    log_mag = -0.5 * a2 + n * (0.5 * math.log(a2)) \
        - 0.5 * np.array([math.lgamma(k + 1) for k in range(s.n_max + 1)])
    phase = cmath.phase(s.alpha)
    return FockVector(np.exp(log_mag) * np.exp(1j * phase * n))


def apply_annihilation(v: FockVector) -> FockVector:
    """Lowering operator on a truncated vector: out_n = sqrt(n+1) v_{n+1},
    with the top coefficient dropped (out_{n_max} = 0)."""
    coeff = v.coefficients
    out = np.zeros_like(coeff)
    n = np.arange(1, coeff.size)
    out[:-1] = np.sqrt(n) * coeff[1:]
    return FockVector(out)


def sample_photon_number(s: CoherentState, rng: RandomStream) -> int:
    """One photon-count sample: exactly Poisson(|alpha|^2), since
    |c_n|^2 is the Poisson pmf."""
    return int(rng.generator.poisson(s.mean_photon_number()))


def quadrature_statistics(s: CoherentState, phase: QuadraturePhase) -> tuple[float, float]:
    """(mean, variance) of X_theta in the coherent state:
    mean = sqrt(2)|alpha| cos(theta - arg alpha), variance = 1/2 always."""
    amp = abs(s.alpha)
    mean = math.sqrt(2.0) * amp * math.cos(phase.theta - cmath.phase(s.alpha))
    return mean, QUADRATURE_VARIANCE


def sample_quadrature_trace(s: CoherentState, phases, rng: RandomStream) -> np.ndarray:
    """One Gaussian quadrature sample per phase, at the exact per-phase
    (mean, variance); the Gaussian law is exact for a coherent state."""
    means = np.array([quadrature_statistics(s, p)[0] for p in phases])
    return rng.generator.normal(means, math.sqrt(QUADRATURE_VARIANCE))


def absorbing_box(s: CoherentState, trials: int, rng: RandomStream) -> float:
    """Mean photon count over repeated perfectly-absorbing-box exposures.

    Each trial asks "how many quanta were actualized?" and draws a
    Poisson(|alpha|^2) count (vectorized; consumes the stream exactly as
    repeated ``sample_photon_number`` calls would). The mean tends to
    |alpha|^2: a box around a mean-3 state counts 3 photons on average.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    counts = rng.generator.poisson(s.mean_photon_number(), size=trials)
    return float(counts.mean())
