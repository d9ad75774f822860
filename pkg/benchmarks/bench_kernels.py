"""Kernel backend shootout: numba JIT loops vs the numpy fallbacks.

Run as a script:

    python3 benchmarks/bench_kernels.py [--repeats 7]

Each kernel is timed as the best of N repeats after a warmup call, so
JIT compilation never lands inside a measurement.
"""

import argparse
import time

import numpy as np

from pes_denoise import _kernels as kernels
from pes_denoise.transforms import design_lowpass, get_filter_bank


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def dwt_roundtrip(step, unstep, x, bank, levels):
    current = x
    pairs = []
    for _ in range(levels):
        low, high = step(current, bank.analysis_lo, bank.analysis_hi)
        pairs.append(high)
        current = low
    for high in reversed(pairs):
        current = unstep(current, high, bank.synthesis_lo, bank.synthesis_hi)
    return current


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7, help="timing repeats per kernel")
    parser.add_argument("--inner", type=int, default=20, help="kernel calls per measurement")
    args = parser.parse_args()

    if not kernels._HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    bank = get_filter_bank("db4")
    x = rng.normal(size=4096)
    h = design_lowpass(np.pi / 2, 129)
    delay = 64
    mu = np.sort(np.abs(rng.normal(size=4096)))[::-1].copy()
    d = float(0.25 * mu.sum())

    cases = {
        "dwt roundtrip n=4096 L=5": (
            lambda: dwt_roundtrip(kernels.dwt_step_np, kernels.idwt_step_np, x, bank, 5),
            lambda: dwt_roundtrip(kernels.dwt_step_nb, kernels.idwt_step_nb, x, bank, 5),
        ),
        "circular FIR n=4096 taps=129": (
            lambda: kernels.circular_fir_np(x, h, delay),
            lambda: kernels.circular_fir_nb(x, h, delay),
        ),
        "l1-ball core K=4096": (
            lambda: kernels.l1_ball_core_np(mu, d),
            lambda: kernels.l1_ball_core_nb(mu, d),
        ),
    }

    print(f"{'kernel':<30} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for label, (fn_np, fn_nb) in cases.items():
        fn_nb()  # JIT warmup
        t_np = best_of(lambda: [fn_np() for _ in range(args.inner)], args.repeats)
        t_nb = best_of(lambda: [fn_nb() for _ in range(args.inner)], args.repeats)
        per_np = t_np / args.inner * 1e6
        per_nb = t_nb / args.inner * 1e6
        print(f"{label:<30} {per_np:>8.1f}us {per_nb:>8.1f}us {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
