"""Super-resolving coherent-state radar: interferometer, homodyne parity readout and tracking."""

from .angular import (AngleEstimate, BaselineGeometry, angle_resolution, baseline_phase,
                      estimate_angle, estimate_azimuth, receive_plane_wave)
from .homodyne import (DwellStatistics, HomodyneSetup, ShotRecord, detector_means,
                       measure_dwell, sample_shot)
from .interferometer import (InterferometerConfig, PortPair, attenuate, link_budget,
                             photons_per_dwell, propagate, range_phase)
from .optics import (CoherentAmplitude, PhaseSpacePoint, log_parity, mean_photon_number,
                     parity_expectation, wigner_coherent)
from .reconstruction import (Interferogram, ParitySample, SweetSpotController,
                             coarse_range_from_chirp, combine_ports, estimate_signal_amplitude,
                             fringe_fwhm, range_resolution, reconstruct_parity_a,
                             reconstruct_parity_b, scan_fringe)
from .scenario import Scenario, TrackState, differentiate_track, evolve_target, run_track

__version__ = "0.1.0"
