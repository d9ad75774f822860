"""End-to-end denoising pipelines.

Two projection-driven methods (wavelet subbands or pyramid highbands,
each shrunk by the epigraph projection, which derives its own threshold
from the data) and two classical baselines that need a noise estimate
(the universal threshold and the 3-sigma rule).  The lowband / deepest
lowpass component always passes through untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .projections import project_epigraph_l1, soft_threshold
from .spectrum import (
    DEFAULT_ALPHA,
    DEFAULT_MAX_LEVELS,
    DEFAULT_SMOOTH_WINDOW,
    select_levels,
)
from .transforms import (
    DEFAULT_BANK,
    FilterBank,
    default_cutoffs,
    dwt_analysis,
    dwt_synthesis,
    get_filter_bank,
    pyramid_analysis,
    pyramid_synthesis,
)

METHODS = ("pes-wavelet", "pes-pyramid", "universal", "three-sigma")
DEFAULT_TAPS = 129


@dataclass(frozen=True)
class DenoiseConfig:
    method: str = "pes-wavelet"
    bank: str = DEFAULT_BANK
    levels: int | None = None  # None -> choose from the spectrum
    gamma: float = 1.0
    taps: int = DEFAULT_TAPS
    strict_paper_mode: bool = False
    alpha: float = DEFAULT_ALPHA
    smooth_window: int = DEFAULT_SMOOTH_WINDOW
    max_levels: int = DEFAULT_MAX_LEVELS

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        if self.levels is not None and self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be nonnegative, got {self.gamma}")
        if self.taps < 3 or self.taps % 2 == 0:
            raise ValueError(f"taps must be an odd integer >= 3, got {self.taps}")


def estimate_sigma(finest_detail: np.ndarray) -> float:
    """Robust noise scale: median(|finest detail band|) / 0.6745."""
    band = np.asarray(finest_detail, dtype=float)
    if band.shape[0] < 8:
        raise ValueError(f"need at least 8 coefficients, got {band.shape[0]}")
    return float(np.median(np.abs(band)) / 0.6745)


def _resolve_levels(x: np.ndarray, cfg: DenoiseConfig) -> int:
    if cfg.levels is not None:
        return cfg.levels
    return select_levels(x, cfg.alpha, cfg.smooth_window, cfg.max_levels)


def _shrink_band(band: np.ndarray, strict: bool) -> np.ndarray:
    # All-zero bands carry nothing to threshold; the projection is
    # undefined there and they pass through.
    if not np.any(band):
        return band
    return project_epigraph_l1(band, strict_paper_mode=strict).w_p


def pes_l1_wavelet(x: np.ndarray, cfg: DenoiseConfig) -> np.ndarray:
    """Wavelet denoising with per-band thresholds from epigraph projections."""
    bank = get_filter_bank(cfg.bank)
    bands = dwt_analysis(x, bank, _resolve_levels(x, cfg))
    shrunk = [_shrink_band(band, cfg.strict_paper_mode) for band in bands.details]
    return dwt_synthesis(replace(bands, details=shrunk), bank)


def pes_l1_pyramid(x: np.ndarray, cfg: DenoiseConfig) -> np.ndarray:
    """Pyramid denoising: each stage's highband is shrunk by projection."""
    levels = _resolve_levels(x, cfg)
    pyramid = pyramid_analysis(x, default_cutoffs(levels), cfg.taps)
    shrunk = [_shrink_band(x_hp, cfg.strict_paper_mode) for _, x_hp in pyramid.stages]
    return pyramid_synthesis(pyramid, shrunk)


def universal_threshold(sigma: float, n: int, gamma: float = 1.0) -> float:
    """gamma * sigma * sqrt(2 ln N / N) with sigma in signal units."""
    return gamma * sigma * np.sqrt(2.0 * np.log(n) / n)


def baseline_universal(x: np.ndarray, cfg: DenoiseConfig) -> np.ndarray:
    """One universal threshold across all detail bands (needs sigma-hat)."""
    x = np.asarray(x, dtype=float)
    bank = get_filter_bank(cfg.bank)
    bands = dwt_analysis(x, bank, _resolve_levels(x, cfg))
    # Band coefficients carry the analysis 1/sqrt(N) scale; the MAD there
    # estimates sigma/sqrt(N), so scale back up to signal units.
    sigma = estimate_sigma(bands.details[0]) * np.sqrt(x.shape[0])
    theta = universal_threshold(sigma, x.shape[0], cfg.gamma)
    shrunk = [soft_threshold(band, theta) for band in bands.details]
    return dwt_synthesis(replace(bands, details=shrunk), bank)


def baseline_three_sigma(x: np.ndarray, cfg: DenoiseConfig) -> np.ndarray:
    """Per-band soft threshold 3*sigma-hat, sigma-hat from the finest band."""
    bank = get_filter_bank(cfg.bank)
    bands = dwt_analysis(x, bank, _resolve_levels(x, cfg))
    theta = 3.0 * estimate_sigma(bands.details[0])
    shrunk = [soft_threshold(band, theta) for band in bands.details]
    return dwt_synthesis(replace(bands, details=shrunk), bank)


_DISPATCH = {
    "pes-wavelet": pes_l1_wavelet,
    "pes-pyramid": pes_l1_pyramid,
    "universal": baseline_universal,
    "three-sigma": baseline_three_sigma,
}


def denoise(x: np.ndarray, cfg: DenoiseConfig) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[0] == 0:
        raise ValueError("cannot denoise an empty signal")
    return _DISPATCH[cfg.method](x, cfg)
