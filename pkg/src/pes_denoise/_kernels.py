"""Low-level numeric kernels, JIT-compiled when numba is available.

The hot loops (filter-bank analysis/synthesis steps, circular FIR
filtering, the sorted l1-ball core) exist twice: a scalar-loop variant
compiled with ``numba.njit`` and a vectorized pure-numpy fallback.
Setting the environment variable ``PES_DENOISE_NUMBA=0`` forces the
numpy path; otherwise numba is used whenever it imports.  Both paths
compute the same quantities (differences are limited to float summation
order, well below 1e-12 relative).

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but stay importable
    njit = None
    _HAS_NUMBA = False

USE_NUMBA = _HAS_NUMBA and os.environ.get("PES_DENOISE_NUMBA", "1") != "0"


# ---------------------------------------------------------------------------
# pure-numpy implementations


def dwt_step_np(x: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    """One analysis split: correlate with lo/hi and keep even phases.

    Periodic boundary: indices wrap modulo len(x).
    """
    n = x.shape[0]
    half = n // 2
    idx = (2 * np.arange(half)[:, None] + np.arange(lo.shape[0])[None, :]) % n
    gathered = x[idx]
    return gathered @ lo, gathered @ hi


def idwt_step_np(a: np.ndarray, d: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    """Adjoint of :func:`dwt_step_np`: scatter-add taps back to the grid."""
    half = a.shape[0]
    n = 2 * half
    idx = (2 * np.arange(half)[:, None] + np.arange(lo.shape[0])[None, :]) % n
    y = np.zeros(n)
    np.add.at(y, idx, lo[None, :] * a[:, None] + hi[None, :] * d[:, None])
    return y


def circular_fir_np(x: np.ndarray, h: np.ndarray, delay: int):
    """Circular convolution with the group delay compensated by shift."""
    y = np.zeros(x.shape[0])
    for j in range(h.shape[0]):
        y += h[j] * np.roll(x, j - delay)
    return y


def l1_ball_core_np(mu: np.ndarray, d: float):
    """Threshold from a descending-sorted magnitude sequence.

    Returns (rho, theta) with rho the largest index j (1-based) where
    mu_j - (sum_{r<=j} mu_r - d)/j stays positive, and theta the
    corresponding shrinkage amount.  Caller handles interior/degenerate
    cases; here the input is assumed strictly outside the ball.
    """
    cs = np.cumsum(mu)
    j = np.arange(1, mu.shape[0] + 1)
    keep = mu - (cs - d) / j > 0.0
    rho = int(np.nonzero(keep)[0].max()) + 1
    theta = (cs[rho - 1] - d) / rho
    return rho, float(theta)


# ---------------------------------------------------------------------------
# numba implementations (scalar loops; same arithmetic, element order)

if _HAS_NUMBA:

    @njit(cache=True, nogil=True)
    def dwt_step_nb(x, lo, hi):  # pragma: no cover - exercised via dispatch
        n = x.shape[0]
        half = n // 2
        taps = lo.shape[0]
        a = np.zeros(half)
        d = np.zeros(half)
        for k in range(half):
            sa = 0.0
            sd = 0.0
            base = 2 * k
            for j in range(taps):
                v = x[(base + j) % n]
                sa += lo[j] * v
                sd += hi[j] * v
            a[k] = sa
            d[k] = sd
        return a, d

    @njit(cache=True, nogil=True)
    def idwt_step_nb(a, d, lo, hi):  # pragma: no cover
        half = a.shape[0]
        n = 2 * half
        taps = lo.shape[0]
        y = np.zeros(n)
        for k in range(half):
            base = 2 * k
            for j in range(taps):
                y[(base + j) % n] += lo[j] * a[k] + hi[j] * d[k]
        return y

    @njit(cache=True, nogil=True)
    def circular_fir_nb(x, h, delay):  # pragma: no cover
        n = x.shape[0]
        taps = h.shape[0]
        y = np.zeros(n)
        for k in range(n):
            s = 0.0
            for j in range(taps):
                s += h[j] * x[(k + delay - j) % n]
            y[k] = s
        return y

    @njit(cache=True, nogil=True)
    def l1_ball_core_nb(mu, d):  # pragma: no cover
        k = mu.shape[0]
        cs = 0.0
        rho = 0
        theta = 0.0
        for j in range(k):
            cs += mu[j]
            t = (cs - d) / (j + 1)
            if mu[j] - t > 0.0:
                rho = j + 1
                theta = t
        return rho, theta

else:  # pragma: no cover
    dwt_step_nb = None
    idwt_step_nb = None
    circular_fir_nb = None
    l1_ball_core_nb = None


if USE_NUMBA:
    dwt_step = dwt_step_nb
    idwt_step = idwt_step_nb
    circular_fir = circular_fir_nb
    l1_ball_core = l1_ball_core_nb
    BACKEND = "numba"
else:
    dwt_step = dwt_step_np
    idwt_step = idwt_step_np
    circular_fir = circular_fir_np
    l1_ball_core = l1_ball_core_np
    BACKEND = "numpy"
