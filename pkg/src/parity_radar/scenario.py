"""Moving-target scenarios and the closed-loop tracking driver."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import savgol_filter

from . import homodyne
from .angular import ALTITUDINAL, AZIMUTHAL, BaselineGeometry, estimate_angle, receive_plane_wave
from .homodyne import HomodyneSetup
from .interferometer import (SPEED_OF_LIGHT, InterferometerConfig, link_budget,
                             photons_per_dwell, split_by_phase)
from .optics import CoherentAmplitude
from .reconstruction import (SweetSpotController, combine_ports, coarse_range_from_chirp,
                             phase_from_amplitude, port_a_setup, range_resolution,
                             reconstruct_parity_a, reconstruct_parity_b)


@dataclass(frozen=True)
class Scenario:
    # target kinematics
    initial_range: float = 1.0e5  # m
    radial_velocity: float = 0.0  # m/s
    radial_acceleration: float = 0.0  # m/s^2
    theta0: float = 0.0  # rad, altitude
    phi0: float = 0.0  # rad, azimuth
    theta_rate: float = 0.0  # rad/s
    phi_rate: float = 0.0  # rad/s
    # radar
    wavelength: float = 0.03  # m
    gamma: float = 0.0  # 1/m
    mean_photons: float = 100.0  # transmitted photons per shot when use_link_budget is off
    use_link_budget: bool = False
    transmit_power: float = 1.0e3  # W
    dwell_time: float = 1.0e-3  # s, integration time per shot for the link budget
    aperture_area: float = 1.0  # m^2
    target_area: float = 1.0  # m^2
    baseline: float = 3.0  # m
    # detection
    lo_photons: float = 1.0e6
    shots: int = 1
    efficiency: float = 1.0
    dark_rate: float = 0.0
    # loop
    dwell_period: float = 1.0e-3  # s
    dwells: int = 200
    gain: float = 0.5
    timing_sigma: float = 1.0e-11  # s, chirp round-trip timing noise
    angle_prior_sigma: float = 1.0e-4  # rad, initial angle prior
    diff_window: int = 11
    seed: int = 0

    def __post_init__(self):
        positive = ("initial_range", "wavelength", "dwell_period", "lo_photons", "baseline",
                    "transmit_power", "dwell_time", "aperture_area", "target_area")
        for name in positive:
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        if self.dwells < 1:
            raise ValueError("dwells must be >= 1")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not self.mean_photons > 0:
            raise ValueError("mean_photons must be > 0")
        if self.gamma < 0 or self.timing_sigma < 0:
            raise ValueError("gamma and timing_sigma must be >= 0")
        if not 0 < self.gain <= 1:
            raise ValueError("gain must lie in (0, 1]")

    @property
    def interferometer(self) -> InterferometerConfig:
        return InterferometerConfig(self.wavelength, self.gamma)

    @property
    def homodyne_setup(self) -> HomodyneSetup:
        return HomodyneSetup(math.sqrt(self.lo_photons), math.pi / 2, self.efficiency,
                             self.shots, self.dark_rate)

    def return_photons(self, range_m: float) -> float:
        """Mean photons per shot reaching the detector from ``range_m``."""
        if self.use_link_budget:
            cfg = self.interferometer
            p_rx = link_budget(self.transmit_power, range_m, self.aperture_area, self.target_area, cfg)
            n = photons_per_dwell(p_rx, self.dwell_time, cfg)
        else:
            n = self.mean_photons
        return n * math.exp(-self.gamma * range_m)


@dataclass
class TrackState:
    time: float
    range: float
    theta: float
    phi: float
    sigma_range: float
    sigma_theta: float
    sigma_phi: float
    locked: bool
    ambiguous: bool
    parity: float
    reference_phase: float
    mean_photons: float
    true_range: float
    true_theta: float
    true_phi: float
    velocity: float = math.nan
    acceleration: float = math.nan
    theta_rate: float = math.nan
    phi_rate: float = math.nan


TRACK_COLUMNS = [
    "time_s", "range_m", "theta_rad", "phi_rad", "sigma_range_m", "sigma_theta_rad",
    "sigma_phi_rad", "velocity_mps", "acceleration_mps2", "theta_rate_radps", "phi_rate_radps",
    "locked", "ambiguous", "parity", "reference_phase_rad", "mean_photons",
    "true_range_m", "true_theta_rad", "true_phi_rad",
]


def track_rows(track: list[TrackState]) -> list[list]:
    return [[s.time, s.range, s.theta, s.phi, s.sigma_range, s.sigma_theta, s.sigma_phi,
             s.velocity, s.acceleration, s.theta_rate, s.phi_rate, int(s.locked), int(s.ambiguous),
             s.parity, s.reference_phase, s.mean_photons, s.true_range, s.true_theta, s.true_phi]
            for s in track]


def evolve_target(s: Scenario, t: float) -> tuple[float, float, float]:
    """Ballistic range and linearly drifting angles at time ``t``."""
    if t < 0:
        raise ValueError("time must be >= 0")
    r = s.initial_range + s.radial_velocity * t + 0.5 * s.radial_acceleration * t * t
    if not r > 0:
        raise ValueError(f"target range {r} m at t = {t} s is not positive")
    return r, s.theta0 + s.theta_rate * t, s.phi0 + s.phi_rate * t


def differentiate_track(values, dt: float, window: int) -> tuple[np.ndarray, np.ndarray]:
    """First and second derivatives from sliding quadratic least-squares fits.

    Interior points use the centred fit over ``window`` samples; the first and
    last ``window // 2`` points are evaluated on the edge window's fit.
    """
    values = np.asarray(values, dtype=float)
    if window < 3 or window % 2 == 0:
        raise ValueError("window must be odd and >= 3")
    if window > len(values):
        raise ValueError(f"window {window} exceeds track length {len(values)}")
    vel = savgol_filter(values, window, 2, deriv=1, delta=dt, mode="interp")
    acc = savgol_filter(values, window, 2, deriv=2, delta=dt, mode="interp")
    return vel, acc


@dataclass
class _AngleChannel:
    geom: BaselineGeometry
    prior: tuple[float, float]
    slot: int

    def measure(self, alpha, theta, setup, seed, dwell, mean_photons):
        # homodyne dwells 16 i + 2 slot (+1); slot 0 is the ranging pair
        dwells = receive_plane_wave(alpha, self.geom, theta, setup, seed, 8 * dwell + self.slot)
        est = estimate_angle(dwells, self.geom, mean_photons, setup, self.prior)
        self.prior = (est.theta, 3.0 * est.sigma_theta)
        return est


CHIRP_STREAM = 1 << 20
ACQUIRE_DWELL = 1 << 30


def _chirp_time(s: Scenario, range_m: float, seed: int | None, dwell: int) -> float:
    tof = 2.0 * range_m / SPEED_OF_LIGHT
    if seed is None or s.timing_sigma == 0:
        return tof
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(dwell, CHIRP_STREAM)))
    return max(0.0, tof + s.timing_sigma * rng.standard_normal())


def run_track(s: Scenario, noiseless: bool = False, seed: int | None = None) -> list[TrackState]:
    """Closed-loop ranging and angle tracking, one :class:`TrackState` per dwell.

    Each dwell reads both interferometer ports by homodyne, takes the signed
    working phase from the dark-port amplitude, fixes the fringe order with a chirp round trip, and
    then steps the reference phase towards the sweet spot. A dwell whose phase
    estimate cannot be trusted is marked unlocked and the reference is reset
    from the chirp range.
    """
    seed = s.seed if seed is None else seed
    stream = None if noiseless else seed
    setup = s.homodyne_setup
    setup_b = setup.with_phase(math.pi / 2)
    k = 2.0 * math.pi / s.wavelength
    controller = SweetSpotController(s.gain)
    angles = [
        _AngleChannel(BaselineGeometry(s.baseline, s.wavelength, ALTITUDINAL), (s.theta0, s.angle_prior_sigma), 1),
        _AngleChannel(BaselineGeometry(s.baseline, s.wavelength, AZIMUTHAL), (s.phi0, s.angle_prior_sigma), 2),
    ]

    # initial acquisition from a chirp alone
    r0, _, _ = evolve_target(s, 0.0)
    acquire = coarse_range_from_chirp(_chirp_time(s, r0, stream, ACQUIRE_DWELL), s.wavelength,
                                      0.0, s.timing_sigma)
    reference = k * acquire.coarse_range
    phase_estimate = reference

    track: list[TrackState] = []
    for i in range(s.dwells):
        t = i * s.dwell_period
        r, theta, phi_az = evolve_target(s, t)
        nbar = s.return_photons(r)
        alpha = CoherentAmplitude.from_polar(nbar)
        working = k * r - reference
        ports = split_by_phase(alpha, working)
        sb = reconstruct_parity_b(homodyne.dwell(ports.port_b, setup_b, stream, 16 * i),
                                  setup_b, reference)
        guess = phase_estimate - reference
        setup_a = port_a_setup(setup, guess)
        sa = reconstruct_parity_a(homodyne.dwell(ports.port_a, setup_a, stream, 16 * i + 1),
                                  setup_a, guess, reference)
        phase = phase_from_amplitude(sb.amplitude, nbar)

        fix = coarse_range_from_chirp(_chirp_time(s, r, stream, i), s.wavelength,
                                      reference + phase, s.timing_sigma)
        sigma_phase = 1.0 / math.sqrt(nbar * s.shots)
        locked = abs(phase) + 3.0 * sigma_phase <= math.pi
        if locked:
            phase_estimate = reference + phase
            range_hat = fix.range
            reference = controller.update(reference, phase)
        else:
            range_hat = fix.coarse_range
            reference = k * fix.coarse_range
            phase_estimate = reference

        th = angles[0].measure(alpha, theta, setup_b, stream, i, nbar)
        ph = angles[1].measure(alpha, phi_az, setup_b, stream, i, nbar)

        track.append(TrackState(
            time=t, range=range_hat, theta=th.theta, phi=ph.theta,
            sigma_range=range_resolution(nbar, s.wavelength),
            sigma_theta=th.sigma_theta, sigma_phi=ph.sigma_theta,
            locked=locked, ambiguous=fix.ambiguous or th.ambiguous or ph.ambiguous,
            parity=combine_ports(sa, sb), reference_phase=reference,
            mean_photons=nbar, true_range=r, true_theta=theta, true_phi=phi_az,
        ))

    _fill_derivatives(track, s.dwell_period, s.diff_window)
    return track


def _fill_derivatives(track: list[TrackState], dt: float, window: int) -> None:
    n = len(track)
    window = min(window, n if n % 2 else n - 1)
    if window < 3:
        return
    vel, acc = differentiate_track([p.range for p in track], dt, window)
    th_rate, _ = differentiate_track([p.theta for p in track], dt, window)
    ph_rate, _ = differentiate_track([p.phi for p in track], dt, window)
    for p, v, a, tr, pr in zip(track, vel, acc, th_rate, ph_rate):
        p.velocity, p.acceleration = float(v), float(a)
        p.theta_rate, p.phi_rate = float(tr), float(pr)
