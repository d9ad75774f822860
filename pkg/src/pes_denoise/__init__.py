"""1-D signal denoising with projection-derived soft thresholds.

The threshold for each subband comes from projecting the band onto the
epigraph of the l1 norm, so no noise-variance estimate is needed.  The
package ships wavelet and pyramid decompositions, two classical
baselines, test-signal generators, and a Monte-Carlo experiment harness
with a CLI (``pes-denoise``).
"""

from ._kernels import BACKEND, USE_NUMBA
from .denoise import (
    DenoiseConfig,
    baseline_three_sigma,
    baseline_universal,
    denoise,
    estimate_sigma,
    pes_l1_pyramid,
    pes_l1_wavelet,
    universal_threshold,
)
from .harness import (
    ExperimentReport,
    ExperimentSpec,
    ReportRow,
    emit_csv,
    emit_spectrum_csv,
    grand_means,
    parse_csv,
    run_experiment,
)
from .projections import (
    BallProjection,
    EpigraphProjection,
    l1_ball_max_size,
    project_epigraph_l1,
    project_l1_ball,
    soft_threshold,
)
from .signals import (
    SIGNAL_NAMES,
    NoiseSpec,
    add_gaussian_noise,
    generate_test_signal,
    noise_sigma,
    signal_from_csv,
    signal_to_csv,
    snr_db,
)
from .spectrum import (
    BandwidthEstimate,
    estimate_bandwidth,
    levels_for_bandwidth,
    magnitude_spectrum,
    select_levels,
)
from .transforms import (
    BANK_NAMES,
    DEFAULT_BANK,
    FilterBank,
    PyramidSet,
    SubbandSet,
    default_cutoffs,
    design_lowpass,
    dwt_analysis,
    dwt_synthesis,
    get_filter_bank,
    load_filter_bank,
    lowpass_filter,
    pyramid_analysis,
    pyramid_synthesis,
    qmf_highpass,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BANK_NAMES",
    "BallProjection",
    "BandwidthEstimate",
    "DEFAULT_BANK",
    "DenoiseConfig",
    "EpigraphProjection",
    "ExperimentReport",
    "ExperimentSpec",
    "FilterBank",
    "NoiseSpec",
    "PyramidSet",
    "ReportRow",
    "SIGNAL_NAMES",
    "SubbandSet",
    "USE_NUMBA",
    "add_gaussian_noise",
    "baseline_three_sigma",
    "baseline_universal",
    "default_cutoffs",
    "denoise",
    "design_lowpass",
    "dwt_analysis",
    "dwt_synthesis",
    "emit_csv",
    "emit_spectrum_csv",
    "estimate_bandwidth",
    "estimate_sigma",
    "generate_test_signal",
    "get_filter_bank",
    "grand_means",
    "l1_ball_max_size",
    "levels_for_bandwidth",
    "load_filter_bank",
    "lowpass_filter",
    "magnitude_spectrum",
    "noise_sigma",
    "parse_csv",
    "pes_l1_pyramid",
    "pes_l1_wavelet",
    "project_epigraph_l1",
    "project_l1_ball",
    "pyramid_analysis",
    "pyramid_synthesis",
    "qmf_highpass",
    "run_experiment",
    "select_levels",
    "signal_from_csv",
    "signal_to_csv",
    "snr_db",
    "soft_threshold",
    "universal_threshold",
]
