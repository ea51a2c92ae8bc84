"""Balanced homodyne detection at the photocount level.

The signal mode b is mixed with a local oscillator c on a 50-50 beamsplitter
(e = (b + i c)/sqrt2, d = (c + i b)/sqrt2). For coherent inputs both outputs
are coherent, so the detector counts are independent Poisson variables and
their difference is Skellam distributed. For a real signal amplitude ``a``::

    <n_e> = eta (a^2 + |delta|^2 - 2 a |delta| sin(theta_LO)) / 2
    <n_d> = eta (a^2 + |delta|^2 + 2 a |delta| sin(theta_LO)) / 2

Randomness is counter based: shots are grouped in fixed blocks of
:data:`BLOCK_SHOTS`, and each block draws from its own stream keyed by
``(seed, dwell, block)``. Any block can be regenerated on its own, so dwells
and blocks may be evaluated in any order or in parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optics import CoherentAmplitude

BLOCK_SHOTS = 4096


@dataclass(frozen=True)
class HomodyneSetup:
    lo_amplitude: float  # |delta_LO|
    lo_phase: float = math.pi / 2
    efficiency: float = 1.0
    shots: int = 1
    dark_rate: float = 0.0  # mean dark counts per detector per shot

    def __post_init__(self):
        if self.lo_amplitude < 0:
            raise ValueError("lo_amplitude must be >= 0")
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError("efficiency must lie in [0, 1]")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if self.dark_rate < 0:
            raise ValueError("dark_rate must be >= 0")

    @property
    def lo_photons(self) -> float:
        return self.lo_amplitude**2

    def with_phase(self, lo_phase: float) -> "HomodyneSetup":
        return HomodyneSetup(self.lo_amplitude, lo_phase, self.efficiency, self.shots, self.dark_rate)

    def with_shots(self, shots: int) -> "HomodyneSetup":
        return HomodyneSetup(self.lo_amplitude, self.lo_phase, self.efficiency, shots, self.dark_rate)


@dataclass(frozen=True)
class ShotRecord:
    count_d: int
    count_e: int

    @property
    def difference(self) -> int:
        return self.count_e - self.count_d


@dataclass(frozen=True)
class DwellStatistics:
    mean_difference: float
    var_difference: float
    shots: int


def detector_means(signal: CoherentAmplitude, setup: HomodyneSetup) -> tuple[float, float]:
    """Mean counts ``(mean_e, mean_d)`` at the two detectors.

    Works for complex signal amplitudes; for a real amplitude it reduces to
    the expressions in the module docstring.
    """
    b = complex(signal)
    c = setup.lo_amplitude * complex(math.cos(setup.lo_phase), math.sin(setup.lo_phase))
    e = (b + 1j * c) / math.sqrt(2.0)
    d = (c + 1j * b) / math.sqrt(2.0)
    eta = setup.efficiency
    return eta * abs(e) ** 2 + setup.dark_rate, eta * abs(d) ** 2 + setup.dark_rate


def expected_difference(signal: CoherentAmplitude, setup: HomodyneSetup) -> float:
    """<n_e - n_d> = 2 eta Im(b conj(c)), free of the cancellation in mean_e - mean_d."""
    b = complex(signal)
    c = setup.lo_amplitude * complex(math.cos(setup.lo_phase), math.sin(setup.lo_phase))
    return 2.0 * setup.efficiency * (b * c.conjugate()).imag


def block_rng(seed: int, dwell: int, block: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(dwell, block))
    return np.random.Generator(np.random.Philox(ss))


def sample_counts(signal: CoherentAmplitude, setup: HomodyneSetup, seed: int,
                  dwell: int = 0, shots: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Photocount arrays ``(count_d, count_e)`` for one dwell."""
    n = setup.shots if shots is None else shots
    mean_e, mean_d = detector_means(signal, setup)
    count_d = np.empty(n, dtype=np.int64)
    count_e = np.empty(n, dtype=np.int64)
    for block, start in enumerate(range(0, n, BLOCK_SHOTS)):
        stop = min(start + BLOCK_SHOTS, n)
        rng = block_rng(seed, dwell, block)
        # draw the full block so a shot's value never depends on the dwell length
        count_d[start:stop] = rng.poisson(mean_d, BLOCK_SHOTS)[: stop - start]
        count_e[start:stop] = rng.poisson(mean_e, BLOCK_SHOTS)[: stop - start]
    return count_d, count_e


def sample_shot(signal: CoherentAmplitude, setup: HomodyneSetup, seed: int,
                dwell: int = 0, shot: int = 0) -> ShotRecord:
    block, offset = divmod(shot, BLOCK_SHOTS)
    mean_e, mean_d = detector_means(signal, setup)
    rng = block_rng(seed, dwell, block)
    d = rng.poisson(mean_d, BLOCK_SHOTS)[offset]
    e = rng.poisson(mean_e, BLOCK_SHOTS)[offset]
    return ShotRecord(int(d), int(e))


def summarize(differences: np.ndarray) -> DwellStatistics:
    n = len(differences)
    if n < 1:
        raise ValueError("need at least one shot")
    mean = float(np.mean(differences))
    var = float(np.var(differences, ddof=1)) if n > 1 else 0.0
    return DwellStatistics(mean, var, n)


def measure_dwell(signal: CoherentAmplitude, setup: HomodyneSetup, seed: int,
                  dwell: int = 0) -> DwellStatistics:
    count_d, count_e = sample_counts(signal, setup, seed, dwell)
    return summarize(count_e - count_d)


def expected_dwell(signal: CoherentAmplitude, setup: HomodyneSetup) -> DwellStatistics:
    """Noiseless dwell: exact Skellam mean and variance in place of sample moments."""
    mean_e, mean_d = detector_means(signal, setup)
    return DwellStatistics(expected_difference(signal, setup), mean_e + mean_d, setup.shots)


def dwell(signal: CoherentAmplitude, setup: HomodyneSetup, seed: int | None,
          dwell_index: int = 0) -> DwellStatistics:
    """Sampled dwell, or the expectation-value dwell when ``seed`` is None."""
    if seed is None:
        return expected_dwell(signal, setup)
    return measure_dwell(signal, setup, seed, dwell_index)
