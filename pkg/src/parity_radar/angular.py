"""Arrival-angle estimation with a two-cavity receiver baseline.

A plane wave arriving at angle theta from broadside reaches the two cavities
(separation L) with a relative phase k L sin(theta). Each cavity collects half
the return, alpha / sqrt2, and the waveguides meet on a balanced mixer whose
outputs carry alpha cos(phi/2) (bright) and alpha sin(phi/2) (dark). The dark
port is read exactly like the ranging port B.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import homodyne
from .homodyne import DwellStatistics, HomodyneSetup
from .interferometer import split_by_phase
from .optics import CoherentAmplitude
from .reconstruction import ParitySample, phase_from_amplitude, reconstruct_parity_b

ALTITUDINAL = "altitudinal"
AZIMUTHAL = "azimuthal"


@dataclass(frozen=True)
class BaselineGeometry:
    baseline: float  # m
    wavelength: float  # m
    orientation: str = ALTITUDINAL
    rotation: float | None = None  # about the bilateral axis; defaults from orientation

    def __post_init__(self):
        if not self.baseline > 0:
            raise ValueError("baseline must be > 0")
        if not self.wavelength > 0:
            raise ValueError("wavelength must be > 0")
        if self.orientation not in (ALTITUDINAL, AZIMUTHAL):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if self.rotation is None:
            object.__setattr__(self, "rotation", 0.0 if self.orientation == ALTITUDINAL else math.pi / 2)

    @property
    def k_l(self) -> float:
        return 2.0 * math.pi * self.baseline / self.wavelength

    def rotated(self) -> "BaselineGeometry":
        """The same pair turned a quarter turn about its bilateral axis."""
        other = AZIMUTHAL if self.orientation == ALTITUDINAL else ALTITUDINAL
        return BaselineGeometry(self.baseline, self.wavelength, other)


@dataclass(frozen=True)
class AngleEstimate:
    theta: float
    sigma_theta: float
    port_signals: tuple[ParitySample, ParitySample]
    phase: float = 0.0
    ambiguous: bool = False


def baseline_phase(geom: BaselineGeometry, theta: float) -> float:
    if abs(theta) > math.pi / 2:
        raise ValueError("angle must lie within +-pi/2 of broadside")
    return geom.k_l * math.sin(theta)


def fringe_ambiguous(geom: BaselineGeometry, theta: float) -> bool:
    """True when the baseline phase at ``theta`` lies outside the principal fringe."""
    return geom.k_l * abs(math.sin(theta)) > math.pi


def angle_resolution(mean_photons: float, geom: BaselineGeometry) -> float:
    """(lambda / L) / (2 pi sqrt(nbar)), valid near broadside."""
    if not mean_photons > 0:
        raise ValueError("mean photon number must be > 0")
    return geom.wavelength / (2.0 * math.pi * geom.baseline * math.sqrt(mean_photons))


def receive_plane_wave(alpha: CoherentAmplitude, geom: BaselineGeometry, theta: float,
                       setup: HomodyneSetup, seed: int | None, dwell: int = 0,
                       phase_offset: float = 0.0) -> tuple[DwellStatistics, DwellStatistics]:
    """Homodyne dwells ``(bright, dark)`` at the mixer outputs.

    ``phase_offset`` is the compensating phase in the lagging guide, so the
    mixer sees ``baseline_phase - phase_offset``. Both ports use the LO setting
    of ``setup``; ``seed=None`` returns expectation values.
    """
    # alpha / sqrt2 per cavity; the mixer recombines them to alpha cos, alpha sin of phi/2
    ports = split_by_phase(alpha, baseline_phase(geom, theta) - phase_offset)
    bright = homodyne.dwell(ports.port_a, setup, seed, 2 * dwell)
    dark = homodyne.dwell(ports.port_b, setup, seed, 2 * dwell + 1)
    return bright, dark


def estimate_angle(dwells: tuple[DwellStatistics, DwellStatistics], geom: BaselineGeometry,
                   mean_photons: float, setup: HomodyneSetup,
                   prior: tuple[float, float] | None = None) -> AngleEstimate:
    """Angle from a ``(bright, dark)`` dwell pair read with the LO at pi/2.

    The signed dark-port amplitude sqrt(nbar) sin(phi/2) gives phi in the
    principal fringe. A ``prior`` ``(theta, sigma)`` picks the branch and fringe order and
    the estimate is flagged ambiguous when the prior's phase spread exceeds a
    quarter fringe either side. Without a prior the target is assumed to lie in
    the principal fringe, and the estimate is flagged when it sits within
    three phase sigmas of that fringe's edge.
    """
    bright, dark = dwells
    setup = setup.with_phase(math.pi / 2)
    dark_sample = reconstruct_parity_b(dark, setup, 0.0)
    bright_sample = reconstruct_parity_b(bright, setup, 0.0)
    phi = phase_from_amplitude(dark_sample.amplitude, mean_photons)
    kl = geom.k_l
    if prior is None:
        sigma_phi = 1.0 / math.sqrt(mean_photons * setup.shots)
        ambiguous = kl > math.pi and abs(phi) + 3.0 * sigma_phi > math.pi
    else:
        theta_c, sigma_c = prior
        # sin(phi/2) fixes phi only up to phi + 4 pi m or 2 pi - phi + 4 pi m
        target = kl * math.sin(theta_c)
        candidates = [c + 4.0 * math.pi * round((target - c) / (4.0 * math.pi))
                      for c in (phi, 2.0 * math.pi - phi)]
        phi = min(candidates, key=lambda c: abs(c - target))
        ambiguous = kl * math.cos(theta_c) * sigma_c > math.pi / 2
    if abs(phi) > kl:
        raise ValueError(f"phase {phi:.6g} exceeds k L = {kl:.6g}: no physical angle")
    return AngleEstimate(math.asin(phi / kl), angle_resolution(mean_photons, geom),
                         (bright_sample, dark_sample), phi, ambiguous)


def estimate_azimuth(dwells: tuple[DwellStatistics, DwellStatistics], geom: BaselineGeometry,
                     mean_photons: float, setup: HomodyneSetup,
                     prior: tuple[float, float] | None = None) -> AngleEstimate:
    if geom.orientation != AZIMUTHAL:
        raise ValueError("azimuth needs the receiver pair in the azimuthal orientation")
    return estimate_angle(dwells, geom, mean_photons, setup, prior)
