"""Bandwidth estimation from the Fourier magnitude and level selection.

The decomposition depth L is chosen so that pi/2^L stays above the
observed signal bandwidth omega0.  The bandwidth is read off the
smoothed magnitude spectrum: the top quarter of the band is treated as
noise-dominated, its median sets the noise floor, and omega0 is the
lowest frequency above which the smoothed magnitude never exceeds
alpha times that floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_ALPHA = 3.0
DEFAULT_SMOOTH_WINDOW = 9
DEFAULT_MAX_LEVELS = 6


@dataclass(frozen=True)
class BandwidthEstimate:
    omega0: float
    noise_floor: float
    levels: int
    degenerate: bool = False


def magnitude_spectrum(x: np.ndarray) -> np.ndarray:
    """|DFT| at bins 0..N/2 (real-input half spectrum); bin k <-> 2*pi*k/N."""
    x = np.asarray(x, dtype=float)
    if x.shape[0] < 16:
        raise ValueError(f"need at least 16 samples, got {x.shape[0]}")
    return np.abs(np.fft.rfft(x))


def _smooth(mag: np.ndarray, window: int) -> np.ndarray:
    if window < 1 or window % 2 == 0:
        raise ValueError(f"smooth window must be a positive odd integer, got {window}")
    if window == 1:
        return mag.copy()
    padded = np.pad(mag, window // 2, mode="reflect")
    return np.convolve(padded, np.ones(window) / window, mode="valid")


def levels_for_bandwidth(omega0: float, max_levels: int = DEFAULT_MAX_LEVELS) -> int:
    """Largest L in [1, max_levels] with pi/2^L strictly above omega0."""
    if not 0.0 < omega0 < math.pi:
        raise ValueError(f"omega0 must lie in (0, pi), got {omega0}")
    levels = int(math.floor(math.log2(math.pi / omega0)))
    while math.pi / (1 << max(levels, 0)) <= omega0:
        levels -= 1
    return max(1, min(max_levels, levels))


def estimate_bandwidth(
    mag: np.ndarray,
    alpha: float = DEFAULT_ALPHA,
    smooth_window: int = DEFAULT_SMOOTH_WINDOW,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> BandwidthEstimate:
    if alpha <= 1.0:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    smoothed = _smooth(np.asarray(mag, dtype=float), smooth_window)
    m = smoothed.shape[0]
    noise_floor = float(np.median(smoothed[(3 * m) // 4:]))
    above = np.nonzero(smoothed >= alpha * noise_floor)[0]
    if above.size == 0:
        # Nothing clears the floor criterion: report the first bin and
        # the deepest decomposition, flagged.
        return BandwidthEstimate(
            omega0=math.pi / (m - 1), noise_floor=noise_floor, levels=max_levels, degenerate=True
        )
    crossing = int(above.max()) + 1
    if crossing >= m - 1:
        # Magnitude stays above the floor to the Nyquist bin: no L >= 1
        # can satisfy pi/2^L > omega0.
        return BandwidthEstimate(
            omega0=math.pi, noise_floor=noise_floor, levels=1, degenerate=True
        )
    omega0 = math.pi * crossing / (m - 1)
    levels = levels_for_bandwidth(omega0, max_levels)
    degenerate = math.pi / (1 << levels) <= omega0
    return BandwidthEstimate(omega0=omega0, noise_floor=noise_floor, levels=levels, degenerate=degenerate)


def select_levels(
    x: np.ndarray,
    alpha: float = DEFAULT_ALPHA,
    smooth_window: int = DEFAULT_SMOOTH_WINDOW,
    max_levels: int = DEFAULT_MAX_LEVELS,
) -> int:
    """Decomposition depth for a (noisy) signal, straight from its spectrum."""
    return estimate_bandwidth(magnitude_spectrum(x), alpha, smooth_window, max_levels).levels
