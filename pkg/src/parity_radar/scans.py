"""Experiment drivers behind the CLI subcommands: each writes CSV + JSON (+ SVG)."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import plotting
from .angular import (ALTITUDINAL, BaselineGeometry, angle_resolution, estimate_angle,
                      fringe_ambiguous, receive_plane_wave)
from .config import ScanSettings, config_dict
from .io import write_dataset
from .optics import CoherentAmplitude
from .reconstruction import (PORT_A, PORT_B, Interferogram, classical_fringe, exact_fwhm,
                             fringe_fwhm, gaussian_fwhm, phase_grid, range_resolution, scan_fringe)
from .scenario import TRACK_COLUMNS, Scenario, run_track, track_rows

FRINGE_COLUMNS = ["phase_rad", "signal", "port", "shots", "seed"]
ANGLE_COLUMNS = FRINGE_COLUMNS + ["theta_rad", "theta_hat_rad", "ambiguous"]
SWEEP_COLUMNS = ["mean_photons", "fwhm_rad", "fwhm_gaussian_rad", "fwhm_exact_rad",
                 "range_resolution_m", "classical_resolution_m"]


def _seed(scenario: Scenario, noiseless: bool) -> int | None:
    return None if noiseless else scenario.seed


def loglog_slope(x, y) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def run_fringe_scan(scenario: Scenario, scan: ScanSettings, out_dir: Path,
                    noiseless: bool = False, svg: bool = False) -> dict:
    phases = phase_grid(scan.phase_min, scan.phase_max, scan.phase_step)
    seed = _seed(scenario, noiseless)
    nbar = scenario.return_photons(scenario.initial_range)
    setup = scenario.homodyne_setup
    cfg = scenario.interferometer
    port_b = scan_fringe(cfg, nbar, setup, phases, PORT_B, seed)
    port_a = scan_fringe(cfg, nbar, setup, phases, PORT_A, seed, scan.guess_error)
    classical = classical_fringe(phases)

    rows = [[p, v, g.port, setup.shots, seed] for g in (port_b, port_a)
            for p, v in zip(g.phases, g.signals)]
    try:
        fwhm = fringe_fwhm(port_b)
    except ValueError:
        fwhm = math.nan
    # measured over one full period so a narrow scan window still brackets it
    full = phase_grid(-math.pi, math.pi, min(scan.phase_step, 0.01))
    classical_width = fringe_fwhm(Interferogram(full, classical_fringe(full), "classical"))
    summary = {
        "mean_photons": nbar,
        "noiseless": noiseless,
        "fwhm_rad": fwhm,
        "fwhm_gaussian_rad": gaussian_fwhm(nbar),
        "classical_fwhm_rad": classical_width,
        "narrowing_ratio": classical_width / fwhm,
        "range_resolution_m": range_resolution(nbar, scenario.wavelength),
        "classical_resolution_m": scenario.wavelength,
    }
    conf = config_dict(scenario, scan)
    csv_path, json_path = write_dataset(out_dir, "fringe_scan", conf, FRINGE_COLUMNS, rows,
                                        noiseless=noiseless, summary=summary)
    cl_csv, _ = write_dataset(out_dir, "classical_fringe", conf, ["phase_rad", "signal"],
                              zip(phases, classical))
    files = [csv_path, json_path, cl_csv]
    if svg:
        files.append(plotting.fringe_figure(phases, port_b.signals, classical,
                                            Path(out_dir) / "fringe_scan.svg", nbar))
    return {"files": files, "summary": summary, "port_b": port_b, "port_a": port_a}


def run_angle_scan(scenario: Scenario, scan: ScanSettings, out_dir: Path,
                   noiseless: bool = False, svg: bool = False) -> dict:
    thetas = phase_grid(scan.theta_min, scan.theta_max, scan.theta_step)
    seed = _seed(scenario, noiseless)
    nbar = scenario.return_photons(scenario.initial_range)
    geom = BaselineGeometry(scenario.baseline, scenario.wavelength, ALTITUDINAL)
    setup = scenario.homodyne_setup
    alpha = CoherentAmplitude.from_polar(nbar)
    rows, signals, estimates = [], [], []
    for i, theta in enumerate(thetas):
        dwells = receive_plane_wave(alpha, geom, theta, setup, seed, i)
        try:
            est = estimate_angle(dwells, geom, nbar, setup)
            theta_hat, flagged, sample = est.theta, est.ambiguous, est.port_signals[1]
        except ValueError:
            theta_hat, flagged, sample = math.nan, True, None
        signal = sample.signal_value if sample else math.nan
        flagged = flagged or fringe_ambiguous(geom, theta)
        rows.append([geom.k_l * math.sin(theta), signal, PORT_B, setup.shots, seed,
                     theta, theta_hat, flagged])
        signals.append(signal)
        estimates.append(theta_hat)
    summary = {"mean_photons": nbar, "noiseless": noiseless,
               "sigma_theta_rad": angle_resolution(nbar, geom),
               "classical_resolution_rad": geom.wavelength / geom.baseline}
    csv_path, json_path = write_dataset(out_dir, "angle_scan", config_dict(scenario, scan),
                                        ANGLE_COLUMNS, rows, noiseless=noiseless, summary=summary)
    files = [csv_path, json_path]
    if svg:
        files.append(plotting.angle_figure(thetas, signals, estimates, Path(out_dir) / "angle_scan.svg"))
    return {"files": files, "summary": summary, "rows": rows}


def measure_fwhm(scenario: Scenario, nbar: float, seed: int | None) -> float:
    """FWHM of a dark-port scan over +-3 Gaussian widths at a step of width / 40."""
    width = gaussian_fwhm(nbar)
    phases = phase_grid(-3.0 * width, 3.0 * width, width / 40.0)
    g = scan_fringe(scenario.interferometer, nbar, scenario.homodyne_setup, phases, PORT_B, seed)
    return fringe_fwhm(g)


def run_resolution_sweep(scenario: Scenario, scan: ScanSettings, out_dir: Path,
                         noiseless: bool = False, svg: bool = False) -> dict:
    photons = [float(n) for n in scan.sweep_photons]
    if len(photons) < 2 or min(photons) <= 0:
        raise ValueError("sweep_photons needs at least two positive values")
    seed = _seed(scenario, noiseless)
    fwhm = [measure_fwhm(scenario, n, seed) for n in photons]
    rows = [[n, w, gaussian_fwhm(n), exact_fwhm(n), range_resolution(n, scenario.wavelength),
             scenario.wavelength] for n, w in zip(photons, fwhm)]
    summary = {"noiseless": noiseless, "loglog_slope": loglog_slope(photons, fwhm)}
    csv_path, json_path = write_dataset(out_dir, "resolution_sweep", config_dict(scenario, scan),
                                        SWEEP_COLUMNS, rows, noiseless=noiseless, summary=summary)
    files = [csv_path, json_path]
    if svg:
        files.append(plotting.sweep_figure(photons, fwhm, [gaussian_fwhm(n) for n in photons],
                                           Path(out_dir) / "resolution_sweep.svg"))
    return {"files": files, "summary": summary, "rows": rows}


def run_track_files(scenario: Scenario, out_dir: Path, noiseless: bool = False,
                    svg: bool = False) -> dict:
    track = run_track(scenario, noiseless=noiseless)
    err = np.array([p.range - p.true_range for p in track])
    summary = {
        "noiseless": noiseless,
        "dwells": len(track),
        "locked_fraction": float(np.mean([p.locked for p in track])),
        "range_error_std_m": float(np.std(err)),
        "range_resolution_m": track[0].sigma_range,
    }
    csv_path, json_path = write_dataset(out_dir, "track", config_dict(scenario), TRACK_COLUMNS,
                                        track_rows(track), noiseless=noiseless, summary=summary)
    files = [csv_path, json_path]
    if svg:
        files.append(plotting.track_figure([p.time for p in track], err,
                                           [p.sigma_range for p in track],
                                           [p.theta for p in track], [p.phi for p in track],
                                           Path(out_dir) / "track.svg"))
    return {"files": files, "summary": summary, "track": track}
