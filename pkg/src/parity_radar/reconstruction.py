"""Parity reconstruction from homodyne dwells, fringe scans and phase locking.

The dark port (B) is read with the local oscillator at pi/2, where the
normalized intensity difference ``Y`` gives the port amplitude directly and
``exp(-Y^2 / 2 nbar_LO)`` is the photon-number parity of that port. The bright
port (A) is read with the local oscillator at half the expected working
phase, which keeps its parity signal narrow around the sweet spot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import homodyne
from .homodyne import DwellStatistics, HomodyneSetup
from .interferometer import SPEED_OF_LIGHT, InterferometerConfig, split_by_phase
from .optics import CoherentAmplitude

PORT_A = "A"
PORT_B = "B"
MIN_SIN_LO = 1e-6


@dataclass(frozen=True)
class ParitySample:
    phase_setpoint: float
    signal_value: float
    port: str
    amplitude: float = float("nan")  # signed port amplitude estimate, when available


@dataclass
class Interferogram:
    phases: np.ndarray
    signals: np.ndarray
    port: str = PORT_B
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.phases = np.asarray(self.phases, dtype=float)
        self.signals = np.asarray(self.signals, dtype=float)
        if self.phases.shape != self.signals.shape or self.phases.ndim != 1:
            raise ValueError("phases and signals must be 1-D arrays of equal length")
        if len(self.phases) > 1 and not np.all(np.diff(self.phases) > 0):
            raise ValueError("interferogram phases must be strictly increasing")

    def __len__(self) -> int:
        return len(self.phases)


# -- single-dwell estimators ---------------------------------------------------

def _check_lo(setup: HomodyneSetup) -> None:
    if not setup.efficiency > 0:
        raise ValueError("efficiency must be > 0 to fold it out of the difference")
    if not setup.lo_photons > 0:
        raise ValueError("local oscillator must be non-empty")


def normalized_difference(stats: DwellStatistics, setup: HomodyneSetup) -> float:
    """Y: the dwell-mean photocount difference with the efficiency folded out."""
    _check_lo(setup)
    return stats.mean_difference / setup.efficiency


def estimate_signed_amplitude(stats: DwellStatistics, setup: HomodyneSetup) -> float:
    """Real signal amplitude -Y / (2 sqrt(nbar_LO) sin theta_LO), sign kept.

    The difference is linear in the (real) port amplitude, so a negative
    reading is a genuine sign and not only noise.
    """
    s = math.sin(setup.lo_phase)
    if abs(s) < MIN_SIN_LO:
        raise ValueError(f"|sin(lo_phase)| < {MIN_SIN_LO}: amplitude inversion is singular")
    y = normalized_difference(stats, setup)
    return -y / (2.0 * setup.lo_amplitude * s)


def estimate_signal_amplitude(stats: DwellStatistics, setup: HomodyneSetup) -> float:
    """|a| = -Y / (2 sqrt(nbar_LO) sin theta_LO), clamped at zero."""
    return max(0.0, estimate_signed_amplitude(stats, setup))


def _parity_from_y(y: float, lo_photons: float) -> float:
    return math.exp(-y * y / (2.0 * lo_photons))


def reconstruct_parity_b(stats: DwellStatistics, setup: HomodyneSetup,
                         phase_setpoint: float = 0.0) -> ParitySample:
    if not math.isclose(math.sin(setup.lo_phase), 1.0, abs_tol=1e-12):
        raise ValueError("port B reconstruction needs the local oscillator at pi/2")
    y = normalized_difference(stats, setup)
    return ParitySample(phase_setpoint, _parity_from_y(y, setup.lo_photons), PORT_B,
                        estimate_signed_amplitude(stats, setup))


def port_a_setup(setup: HomodyneSetup, phase_guess: float) -> HomodyneSetup:
    return setup.with_phase(0.5 * phase_guess)


def reconstruct_parity_a(stats: DwellStatistics, setup: HomodyneSetup, phase_guess: float,
                         phase_setpoint: float = 0.0) -> ParitySample:
    """Bright-port parity, ``setup`` must carry the LO phase ``phase_guess / 2``."""
    if not math.isclose(setup.lo_phase, 0.5 * phase_guess, rel_tol=0.0, abs_tol=1e-12):
        raise ValueError(
            f"lo_phase {setup.lo_phase} does not match phase_guess/2 = {0.5 * phase_guess}")
    y = normalized_difference(stats, setup)
    return ParitySample(phase_setpoint, _parity_from_y(y, setup.lo_photons), PORT_A)


def per_shot_parity(differences: np.ndarray, setup: HomodyneSetup) -> float:
    """Mean of the parity transform applied shot by shot (biased; for comparison only)."""
    _check_lo(setup)
    y = np.asarray(differences, dtype=float) / setup.efficiency
    return float(np.mean(np.exp(-y * y / (2.0 * setup.lo_photons))))


def combine_ports(sa: ParitySample, sb: ParitySample) -> float:
    return 0.5 * (sa.signal_value + sb.signal_value)


# -- fringe scans ----------------------------------------------------------------

def phase_grid(start: float, stop: float, step: float) -> np.ndarray:
    if not step > 0:
        raise ValueError(f"step must be > 0, got {step}")
    if not stop > start:
        raise ValueError(f"empty phase range [{start}, {stop}]")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


def scan_fringe(cfg: InterferometerConfig, mean_photons: float, setup: HomodyneSetup,
                phases: Sequence[float], port: str = PORT_B, seed: int | None = None,
                guess_error: float = 0.0) -> Interferogram:
    """Reconstructed parity at each working phase in ``phases``.

    ``mean_photons`` is the return photon number at the detector (Beer's-law
    loss already applied). ``seed=None`` evaluates expectation values; otherwise
    scan point ``i`` is dwell ``i`` of the seeded stream. For port A the LO phase
    is set from the true working phase plus ``guess_error``.
    """
    alpha = CoherentAmplitude.from_polar(mean_photons)
    values = np.empty(len(phases))
    for i, phi in enumerate(phases):
        ports = split_by_phase(alpha, phi)
        if port == PORT_B:
            st = setup.with_phase(math.pi / 2)
            values[i] = reconstruct_parity_b(homodyne.dwell(ports.port_b, st, seed, i), st, phi).signal_value
        elif port == PORT_A:
            guess = phi + guess_error
            st = port_a_setup(setup, guess)
            values[i] = reconstruct_parity_a(homodyne.dwell(ports.port_a, st, seed, i), st, guess, phi).signal_value
        else:
            raise ValueError(f"unknown port {port!r}")
    meta = {
        "mean_photons": mean_photons,
        "lo_photons": setup.lo_photons,
        "shots": setup.shots,
        "seed": seed,
        "wavelength": cfg.wavelength,
    }
    return Interferogram(np.asarray(phases, dtype=float), values, port, meta)


def parity_fringe(mean_photons: float, phases) -> np.ndarray:
    """Noiseless dark-port parity exp(-2 nbar sin^2(phi/2))."""
    return np.exp(-2.0 * mean_photons * np.sin(0.5 * np.asarray(phases)) ** 2)


def classical_fringe(phases) -> np.ndarray:
    """Intensity-difference fringe cos(phi) rescaled to [0, 1]: (1 + cos phi) / 2."""
    return 0.5 * (1.0 + np.cos(np.asarray(phases)))


def fringe_fwhm(g: Interferogram) -> float:
    """Width of the tallest peak at half its height, by linear interpolation."""
    x, y = g.phases, g.signals
    if len(x) < 3:
        raise ValueError("interferogram too short to measure a width")
    k = int(np.argmax(y))
    half = 0.5 * y[k]

    def crossing(indices) -> float:
        prev = k
        for j in indices:
            if y[j] < half:
                return x[j] + (half - y[j]) * (x[prev] - x[j]) / (y[prev] - y[j])
            prev = j
        raise ValueError("no half-maximum crossing brackets the peak")

    left = crossing(range(k - 1, -1, -1))
    right = crossing(range(k + 1, len(x)))
    return right - left


def gaussian_fwhm(mean_photons: float) -> float:
    """2 sqrt(2 ln 2) / sqrt(nbar): half-max width of exp(-nbar phi^2 / 2)."""
    return 2.0 * math.sqrt(2.0 * math.log(2.0)) / math.sqrt(mean_photons)


def exact_fwhm(mean_photons: float) -> float:
    """Half-max width of exp(-2 nbar sin^2(phi/2)) about phi = 0."""
    return 4.0 * math.asin(math.sqrt(math.log(2.0) / (2.0 * mean_photons)))


def range_resolution(mean_photons: float, wavelength: float) -> float:
    """lambda / (2 pi sqrt(nbar))."""
    if not mean_photons > 0:
        raise ValueError("mean photon number must be > 0")
    return wavelength / (2.0 * math.pi * math.sqrt(mean_photons))


def classical_resolution(wavelength: float) -> float:
    return wavelength


# -- phase estimation and locking -------------------------------------------------

def phase_from_amplitude(signed_amplitude: float, mean_photons: float) -> float:
    """Working phase from the signed dark-port amplitude sqrt(nbar) sin(phi / 2)."""
    if not mean_photons > 0:
        raise ValueError("mean photon number must be > 0")
    x = signed_amplitude / math.sqrt(mean_photons)
    return 2.0 * math.asin(min(1.0, max(-1.0, x)))


def wrap_phase(phi: float) -> float:
    """Wrap to (-pi, pi]."""
    w = math.remainder(phi, 2.0 * math.pi)
    return math.pi if w == -math.pi else w


def sweet_spot_step(center_amplitude: float, amp_plus: float, amp_minus: float,
                    mean_photons: float, reference_phase: float, gain: float = 0.5) -> float:
    """One proportional update of the reference phase towards phi = 0.

    The magnitude comes from the centre dwell, 2 asin(a / sqrt(nbar)); the
    sign from the dither pair (``amp_plus`` measured with the reference raised
    by the probe offset, i.e. at working phase phi - probe). Only magnitudes
    are used, so clamped amplitude estimates work as well as signed ones.
    """
    if not 0 < gain <= 1:
        raise ValueError("gain must lie in (0, 1]")
    center_amplitude, amp_plus, amp_minus = abs(center_amplitude), abs(amp_plus), abs(amp_minus)
    magnitude = phase_from_amplitude(center_amplitude, mean_photons)
    sign = 1.0 if amp_plus < amp_minus else -1.0
    return reference_phase + gain * sign * magnitude


@dataclass
class SweetSpotController:
    """Proportional reference-phase feedback holding the working phase near zero."""

    gain: float = 0.5
    history: list = field(default_factory=list)

    def __post_init__(self):
        if not 0 < self.gain <= 1:
            raise ValueError("gain must lie in (0, 1]")

    def update(self, reference_phase: float, phase_estimate: float) -> float:
        self.history.append(phase_estimate)
        return reference_phase + self.gain * phase_estimate


@dataclass(frozen=True)
class ChirpFix:
    range: float
    coarse_range: float
    fringe_index: int
    ambiguous: bool


def coarse_range_from_chirp(time_of_flight: float, wavelength: float, phase: float = 0.0,
                            timing_sigma: float = 0.0) -> ChirpFix:
    """Absolute range from a chirp round-trip time and the interferometric phase.

    ``phase`` is the absolute target-arm phase estimate (any multiple of 2 pi
    may be added). The fringe index is the integer that brings
    ``lambda * phase / 2 pi`` closest to the coarse range ``c t / 2``. The fix is
    ambiguous once the timing uncertainty exceeds lambda / 2c.
    """
    if time_of_flight < 0:
        raise ValueError("time of flight must be >= 0")
    coarse = 0.5 * SPEED_OF_LIGHT * time_of_flight
    cycles = phase / (2.0 * math.pi)
    index = round(coarse / wavelength - cycles)
    return ChirpFix(wavelength * (index + cycles), coarse, int(index),
                    timing_sigma > wavelength / (2.0 * SPEED_OF_LIGHT))
