import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from parity_radar.homodyne import DwellStatistics, HomodyneSetup, expected_dwell, sample_counts
from parity_radar.interferometer import InterferometerConfig, split_by_phase
from parity_radar.optics import CoherentAmplitude
from parity_radar.reconstruction import (PORT_A, PORT_B, Interferogram, ParitySample,
                                         SweetSpotController, classical_fringe, combine_ports,
                                         coarse_range_from_chirp, estimate_signal_amplitude,
                                         estimate_signed_amplitude, exact_fwhm, fringe_fwhm,
                                         gaussian_fwhm, parity_fringe, per_shot_parity,
                                         phase_from_amplitude, phase_grid, port_a_setup,
                                         range_resolution, reconstruct_parity_a,
                                         reconstruct_parity_b, scan_fringe, sweet_spot_step,
                                         wrap_phase)

LO = HomodyneSetup(1000.0)
CFG = InterferometerConfig(0.03)


def port_b_noiseless(nbar, phi, setup=LO):
    b = split_by_phase(CoherentAmplitude.from_polar(nbar), phi).port_b
    return reconstruct_parity_b(expected_dwell(b, setup), setup, phi)


def port_a_noiseless(nbar, phi, guess, setup=LO):
    a = split_by_phase(CoherentAmplitude.from_polar(nbar), phi).port_a
    st_a = port_a_setup(setup, guess)
    return reconstruct_parity_a(expected_dwell(a, st_a), st_a, guess, phi)


@given(st.floats(0, 30), st.floats(-math.pi, math.pi))
def test_port_b_noiseless_equals_parity(nbar, phi):
    s = port_b_noiseless(nbar, phi)
    assert s.port == PORT_B
    assert s.signal_value == pytest.approx(math.exp(-2 * nbar * math.sin(phi / 2) ** 2), abs=1e-10)
    assert s.amplitude == pytest.approx(math.sqrt(nbar) * math.sin(phi / 2), abs=1e-9)


def test_port_a_examples():
    # exp(-2 nbar cos^2(phi/2) sin^2(phi/2)) at nbar = 100, phi = 0.1, computed in mpmath
    assert port_a_noiseless(100, 0.1, 0.1).signal_value == pytest.approx(0.607541037888608, rel=1e-9)
    # guess 0.05 too high: LO phase 0.075
    assert port_a_noiseless(100, 0.1, 0.15).signal_value == pytest.approx(0.326251306923035, rel=1e-9)


def test_port_a_requires_matching_lo_phase():
    a = CoherentAmplitude(5.0)
    with pytest.raises(ValueError):
        reconstruct_parity_a(expected_dwell(a, LO), LO, 0.1)


def test_port_b_requires_quadrature_lo():
    with pytest.raises(ValueError):
        reconstruct_parity_b(expected_dwell(CoherentAmplitude(1.0), LO.with_phase(0.3)),
                             LO.with_phase(0.3))


def test_singular_lo_phase_is_rejected():
    st0 = LO.with_phase(0.0)
    with pytest.raises(ValueError):
        estimate_signed_amplitude(expected_dwell(CoherentAmplitude(1.0), st0), st0)


def test_zero_efficiency_rejected():
    setup = HomodyneSetup(10.0, efficiency=0.0)
    with pytest.raises(ValueError):
        estimate_signal_amplitude(DwellStatistics(0.0, 1.0, 1), setup)


def test_amplitude_estimators():
    st_neg = expected_dwell(CoherentAmplitude(-2.0), LO)
    assert estimate_signed_amplitude(st_neg, LO) == pytest.approx(-2.0)
    assert estimate_signal_amplitude(st_neg, LO) == 0.0
    assert estimate_signal_amplitude(expected_dwell(CoherentAmplitude(2.0), LO), LO) == pytest.approx(2.0)


def test_combine_ports_example():
    sa = port_a_noiseless(100, 0.05, 0.05)
    sb = port_b_noiseless(100, 0.05)
    assert sa.signal_value == pytest.approx(0.882588803493326, rel=1e-9)
    assert sb.signal_value == pytest.approx(0.882519882658905, rel=1e-9)
    assert combine_ports(sa, sb) == pytest.approx(0.882554343076116, rel=1e-9)


def test_combine_ports_is_mean():
    assert combine_ports(ParitySample(0, 0.2, PORT_A), ParitySample(0, 0.6, PORT_B)) == pytest.approx(0.4)


def _averaging_gap(amplitude, seed=1):
    setup = HomodyneSetup(1000.0, shots=50_000)
    d, e = sample_counts(CoherentAmplitude(amplitude), setup, seed)
    diff = e - d
    mean_first = math.exp(-np.mean(diff) ** 2 / (2 * setup.lo_photons))
    return per_shot_parity(diff, setup), mean_first


def test_per_shot_parity_exceeds_mean_first_away_from_dark_fringe():
    per_shot, mean_first = _averaging_gap(1.0)
    # per-shot Y / |delta| is N(-2a, 1), so E[exp(-Y^2 / 2 nbar_LO)] = exp(-a^2) / sqrt 2
    assert per_shot == pytest.approx(math.exp(-1.0) / math.sqrt(2), rel=0.02)
    assert mean_first == pytest.approx(math.exp(-2.0), rel=0.02)
    assert per_shot > mean_first


def test_per_shot_parity_gap_reverses_at_dark_fringe():
    per_shot, mean_first = _averaging_gap(0.0)
    assert per_shot == pytest.approx(1 / math.sqrt(2), rel=0.02)
    assert mean_first == pytest.approx(1.0, abs=1e-3)
    assert per_shot < mean_first


def test_phase_grid():
    g = phase_grid(-1.0, 1.0, 0.5)
    assert np.allclose(g, [-1, -0.5, 0, 0.5, 1])
    with pytest.raises(ValueError):
        phase_grid(0, 1, 0)
    with pytest.raises(ValueError):
        phase_grid(1, 0, 0.1)


def test_interferogram_validation():
    with pytest.raises(ValueError):
        Interferogram([0.0, 0.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        Interferogram([0.0, 1.0], [1.0])
    assert len(Interferogram([0.0, 1.0], [1.0, 0.5])) == 2


def test_scan_fringe_noiseless():
    phases = phase_grid(-0.5, 0.5, 0.01)
    g = scan_fringe(CFG, 100.0, LO, phases, PORT_B)
    assert np.allclose(g.signals, parity_fringe(100.0, phases), atol=1e-10)
    assert g.metadata["seed"] is None
    ga = scan_fringe(CFG, 100.0, LO, phases, PORT_A)
    expect = np.exp(-200 * np.cos(phases / 2) ** 2 * np.sin(phases / 2) ** 2)
    assert np.allclose(ga.signals, expect, atol=1e-10)
    with pytest.raises(ValueError):
        scan_fringe(CFG, 100.0, LO, phases, "C")


def test_scan_fringe_seeded_is_reproducible():
    phases = phase_grid(-0.2, 0.2, 0.05)
    setup = LO.with_shots(200)
    a = scan_fringe(CFG, 100.0, setup, phases, PORT_B, seed=3)
    b = scan_fringe(CFG, 100.0, setup, phases, PORT_B, seed=3)
    assert np.array_equal(a.signals, b.signals)


def test_fwhm_values():
    assert gaussian_fwhm(100) == pytest.approx(0.235482004503095, rel=1e-12)
    assert exact_fwhm(100) == pytest.approx(0.235618236815150, rel=1e-12)
    phases = phase_grid(-math.pi, math.pi, 1e-3)
    g = Interferogram(phases, parity_fringe(100.0, phases))
    assert fringe_fwhm(g) == pytest.approx(exact_fwhm(100), rel=1e-5)
    assert fringe_fwhm(Interferogram(phases, classical_fringe(phases))) == pytest.approx(math.pi, rel=1e-5)


def test_fwhm_needs_bracketing_crossings():
    x = np.linspace(-0.1, 0.1, 11)
    with pytest.raises(ValueError):
        fringe_fwhm(Interferogram(x, parity_fringe(100.0, x)))
    with pytest.raises(ValueError):
        fringe_fwhm(Interferogram([0.0, 1.0], [1.0, 0.0]))


def test_range_resolution():
    assert range_resolution(100, 0.03) == pytest.approx(0.03 / 62.83185307, rel=1e-9)
    with pytest.raises(ValueError):
        range_resolution(0, 0.03)


@given(st.floats(-3.0, 3.0), st.floats(1, 1e4))
def test_phase_from_amplitude_inverts(phi, nbar):
    amp = math.sqrt(nbar) * math.sin(phi / 2)
    assert phase_from_amplitude(amp, nbar) == pytest.approx(phi, abs=1e-9)


def test_phase_from_amplitude_clips():
    assert phase_from_amplitude(50.0, 100.0) == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        phase_from_amplitude(1.0, 0.0)


@given(st.floats(-100, 100))
def test_wrap_phase_range(phi):
    w = wrap_phase(phi)
    assert -math.pi < w <= math.pi
    assert math.cos(w) == pytest.approx(math.cos(phi), abs=1e-9)


def test_wrap_phase_edge():
    assert wrap_phase(-math.pi) == math.pi
    assert wrap_phase(3 * math.pi) == pytest.approx(math.pi)


def test_sweet_spot_step_sign():
    nbar = 100.0
    phi, probe = 0.2, 0.05
    amp = lambda p: math.sqrt(nbar) * math.sin(p / 2)
    new = sweet_spot_step(amp(phi), amp(phi - probe), amp(phi + probe), nbar, 1.0, gain=1.0)
    assert new == pytest.approx(1.0 + phi)
    new = sweet_spot_step(amp(-phi), amp(-phi - probe), amp(-phi + probe), nbar, 1.0, gain=1.0)
    assert new == pytest.approx(1.0 - phi)
    with pytest.raises(ValueError):
        sweet_spot_step(0, 0, 0, nbar, 0, gain=0)


def test_controller_converges():
    ctrl = SweetSpotController(gain=0.5)
    true_phase, ref = 1.0, 0.0
    for _ in range(40):
        ref = ctrl.update(ref, true_phase - ref)
    assert ref == pytest.approx(true_phase, abs=1e-9)
    assert len(ctrl.history) == 40
    with pytest.raises(ValueError):
        SweetSpotController(gain=1.5)


def test_chirp_fix():
    lam = 0.03
    r = 1234.5678
    tof = 2 * r / 299792458.0
    phi = 2 * math.pi * r / lam
    fix = coarse_range_from_chirp(tof + 1e-11, lam, wrap_phase(phi), 1e-11)
    assert fix.range == pytest.approx(r, abs=1e-9)
    assert not fix.ambiguous
    assert coarse_range_from_chirp(tof, lam, 0.0, 1e-9).ambiguous
    with pytest.raises(ValueError):
        coarse_range_from_chirp(-1.0, lam)
