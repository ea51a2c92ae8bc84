"""Coherent-state propagation through the unfolded two-arm ranging interferometer.

The monostatic Michelson radar is treated as an equivalent Mach-Zehnder:
a coherent state |beta> enters port A with vacuum in port B, the target arm
picks up the range phase and Beer's-law loss, and the output ports carry

    port A:  alpha cos(phi / 2)
    port B:  alpha sin(phi / 2),     alpha = exp(-gamma R / 2) beta

with phi the target-arm phase minus the (lossless) reference-arm phase.
Global phases from the beamsplitter reflections are dropped, so a real
input gives real outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .optics import CoherentAmplitude, mean_photon_number

PLANCK = 6.62607015e-34  # J s
SPEED_OF_LIGHT = 299_792_458.0  # m / s


@dataclass(frozen=True)
class InterferometerConfig:
    wavelength: float  # m
    gamma: float = 0.0  # 1/m, intensity attenuation coefficient
    reference_phase: float = 0.0  # rad

    def __post_init__(self):
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be > 0, got {self.wavelength}")
        if not self.gamma >= 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    def with_reference(self, reference_phase: float) -> "InterferometerConfig":
        return InterferometerConfig(self.wavelength, self.gamma, reference_phase)


@dataclass(frozen=True)
class PortPair:
    port_a: CoherentAmplitude
    port_b: CoherentAmplitude

    @property
    def intensities(self) -> tuple[float, float]:
        return mean_photon_number(self.port_a), mean_photon_number(self.port_b)


def _check_range(range_m: float) -> None:
    if not range_m >= 0:
        raise ValueError(f"range must be >= 0, got {range_m}")


def range_phase(cfg: InterferometerConfig, range_m: float) -> float:
    """Target-arm phase 2 pi R / lambda."""
    _check_range(range_m)
    return cfg.wavenumber * range_m


def working_phase(cfg: InterferometerConfig, range_m: float) -> float:
    """Phase difference between target and reference arms."""
    return range_phase(cfg, range_m) - cfg.reference_phase


def attenuate(beta: CoherentAmplitude, cfg: InterferometerConfig, range_m: float) -> CoherentAmplitude:
    _check_range(range_m)
    return beta.scaled(math.exp(-0.5 * cfg.gamma * range_m))


def split_by_phase(alpha: CoherentAmplitude, phase: float) -> PortPair:
    """Output ports of the interferometer for an already-attenuated amplitude."""
    return PortPair(alpha.scaled(math.cos(0.5 * phase)), alpha.scaled(math.sin(0.5 * phase)))


def propagate(beta: CoherentAmplitude, cfg: InterferometerConfig, range_m: float) -> PortPair:
    return split_by_phase(attenuate(beta, cfg, range_m), working_phase(cfg, range_m))


def classical_difference(mean_photons: float, phase: float) -> float:
    """Intensity difference |a|^2 - |b|^2 = nbar cos(phi) between the two ports."""
    return mean_photons * math.cos(phase)


def link_budget(p_tx: float, range_m: float, a_tx: float, a_target: float,
                cfg: InterferometerConfig) -> float:
    """Received power for two-way spherical spreading.

        P_rx = P_tx * G_tx * (A_target / 4 pi R^2) * (A_rx / 4 pi R^2)
        G_tx = 4 pi A_tx / lambda^2,   A_rx = A_tx

    The transmitter illuminates the target with gain ``G_tx``; the target
    re-radiates the intercepted power isotropically and the receiving
    aperture (the same antenna) collects ``A_rx / 4 pi R^2`` of it. Beer's-law
    loss is not included here; apply :func:`attenuate` for that.
    """
    for name, value in (("p_tx", p_tx), ("range", range_m), ("a_tx", a_tx), ("a_target", a_target)):
        if not value > 0:
            raise ValueError(f"{name} must be > 0, got {value}")
    gain = 4.0 * math.pi * a_tx / cfg.wavelength**2
    sphere = 4.0 * math.pi * range_m**2
    return p_tx * gain * (a_target / sphere) * (a_tx / sphere)


def photon_energy(wavelength: float) -> float:
    return PLANCK * SPEED_OF_LIGHT / wavelength


def photons_per_dwell(p_rx: float, dwell: float, cfg: InterferometerConfig) -> float:
    if p_rx < 0 or dwell < 0:
        raise ValueError("power and dwell time must be >= 0")
    return p_rx * dwell / photon_energy(cfg.wavelength)
