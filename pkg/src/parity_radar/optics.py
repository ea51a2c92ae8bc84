"""Coherent-state amplitudes, their Wigner function and photon-number parity."""

from __future__ import annotations

import math
from dataclasses import dataclass

TWO_OVER_PI = 2.0 / math.pi


@dataclass(frozen=True)
class CoherentAmplitude:
    """Complex amplitude alpha of a single-mode coherent state |alpha>."""

    re: float
    im: float = 0.0

    @classmethod
    def from_complex(cls, z: complex) -> "CoherentAmplitude":
        return cls(float(z.real), float(z.imag))

    @classmethod
    def from_polar(cls, mean_photons: float, phase: float = 0.0) -> "CoherentAmplitude":
        if mean_photons < 0:
            raise ValueError(f"mean photon number must be >= 0, got {mean_photons}")
        r = math.sqrt(mean_photons)
        return cls(r * math.cos(phase), r * math.sin(phase))

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    def scaled(self, factor: float) -> "CoherentAmplitude":
        return CoherentAmplitude(self.re * factor, self.im * factor)

    def mean_photon_number(self) -> float:
        return mean_photon_number(self)

    def phase(self) -> float:
        """Argument in (-pi, pi]."""
        p = math.atan2(self.im, self.re)
        return math.pi if p == -math.pi else p


@dataclass(frozen=True)
class PhaseSpacePoint:
    """Complex phase-space coordinate gamma."""

    re: float
    im: float = 0.0


ORIGIN = PhaseSpacePoint(0.0, 0.0)
VACUUM = CoherentAmplitude(0.0, 0.0)


def mean_photon_number(a: CoherentAmplitude) -> float:
    return a.re * a.re + a.im * a.im


def wigner_coherent(p: PhaseSpacePoint, a: CoherentAmplitude) -> float:
    """Wigner function of |a> at p: (2/pi) exp(-2 |p - a|^2)."""
    d2 = (p.re - a.re) ** 2 + (p.im - a.im) ** 2
    return TWO_OVER_PI * math.exp(-2.0 * d2)


def log_parity(a: CoherentAmplitude) -> float:
    """Natural log of the parity expectation, exact for any amplitude."""
    return -2.0 * mean_photon_number(a)


def parity_expectation(a: CoherentAmplitude) -> float:
    """<(-1)^n> for a coherent state, exp(-2|a|^2).

    Underflows to exactly 0.0 once |a|^2 exceeds roughly 372; use
    :func:`log_parity` when the magnitude still matters.
    """
    return math.exp(log_parity(a))
