"""Monte-Carlo experiment runner and CSV emission.

Every method in a cell (signal x noise fraction) sees the same noisy
instances, seeded as base_seed + trial, so method comparisons are
paired.  Trials run on a thread pool (capped by PES_DENOISE_THREADS) and
are aggregated in trial order, keeping reports deterministic.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .denoise import DenoiseConfig, denoise
from .signals import NoiseSpec, add_gaussian_noise, generate_test_signal, snr_db

DEFAULT_SIGNALS = ("blocks", "heavy-sine", "doppler", "bumps", "piece-regular", "cusp")
DEFAULT_FRACTIONS = (0.10, 0.20, 0.30)
DEFAULT_METHODS = (
    DenoiseConfig(method="pes-pyramid"),
    DenoiseConfig(method="pes-wavelet"),
    DenoiseConfig(method="universal"),
    DenoiseConfig(method="three-sigma"),
)

CSV_HEADER = "signal,fraction,method,input_snr_db,output_snr_db,stddev_db,trials"


@dataclass(frozen=True)
class ExperimentSpec:
    signals: tuple[str, ...] = DEFAULT_SIGNALS
    noise_fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    trials: int = 300
    methods: tuple[DenoiseConfig, ...] = DEFAULT_METHODS
    base_seed: int = 0
    n: int = 1024

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        for fraction in self.noise_fractions:
            if not 0.0 < fraction <= 1.0:
                raise ValueError(f"noise fractions must be in (0, 1], got {fraction}")


@dataclass(frozen=True)
class ReportRow:
    signal: str
    fraction: float
    method: str
    mean_input_snr_db: float
    mean_output_snr_db: float
    stddev_output_snr_db: float
    trials: int
    excluded: int = 0  # +inf sentinels left out of the means


@dataclass(frozen=True)
class ExperimentReport:
    rows: tuple[ReportRow, ...]
    errors: tuple[str, ...] = field(default_factory=tuple)


def _worker_count() -> int:
    cap = os.environ.get("PES_DENOISE_THREADS")
    if cap:
        return max(1, int(cap))
    return max(1, os.cpu_count() or 1)


def _summarize(values: list[float]) -> tuple[float, float, int]:
    """Mean and population stddev with +inf sentinels excluded."""
    finite = [v for v in values if math.isfinite(v)]
    excluded = len(values) - len(finite)
    if not finite:
        return math.inf, 0.0, excluded
    return float(np.mean(finite)), float(np.std(finite)), excluded


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    rows: list[ReportRow] = []
    errors: list[str] = []
    method_names = [cfg.method for cfg in spec.methods]

    for signal_name in spec.signals:
        clean = generate_test_signal(signal_name, spec.n)
        for fraction in spec.noise_fractions:

            def one_trial(trial: int) -> tuple[float, list[float]]:
                noisy = add_gaussian_noise(clean, NoiseSpec(fraction, spec.base_seed + trial))
                input_snr = snr_db(clean, noisy)
                outputs = [snr_db(clean, denoise(noisy, cfg)) for cfg in spec.methods]
                return input_snr, outputs

            try:
                with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
                    results = list(pool.map(one_trial, range(spec.trials)))
            except Exception as exc:  # noqa: BLE001 - cell aborts, error is reported
                errors.append(f"{signal_name}/{fraction:g}: {type(exc).__name__}: {exc}")
                continue

            input_mean = float(np.mean([r[0] for r in results]))
            for idx, method in enumerate(method_names):
                mean_out, std_out, excluded = _summarize([r[1][idx] for r in results])
                rows.append(
                    ReportRow(
                        signal=signal_name,
                        fraction=fraction,
                        method=method,
                        mean_input_snr_db=input_mean,
                        mean_output_snr_db=mean_out,
                        stddev_output_snr_db=std_out,
                        trials=spec.trials,
                        excluded=excluded,
                    )
                )
    return ExperimentReport(rows=tuple(rows), errors=tuple(errors))


def emit_csv(report: ExperimentReport) -> str:
    lines = [CSV_HEADER]
    for row in report.rows:
        lines.append(
            f"{row.signal},{row.fraction:.4f},{row.method},"
            f"{row.mean_input_snr_db:.4f},{row.mean_output_snr_db:.4f},"
            f"{row.stddev_output_snr_db:.4f},{row.trials}"
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> ExperimentReport:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or unexpected report header")
    rows = []
    for line in lines[1:]:
        signal, fraction, method, snr_in, snr_out, std, trials = line.split(",")
        rows.append(
            ReportRow(
                signal=signal,
                fraction=float(fraction),
                method=method,
                mean_input_snr_db=float(snr_in),
                mean_output_snr_db=float(snr_out),
                stddev_output_snr_db=float(std),
                trials=int(trials),
            )
        )
    return ExperimentReport(rows=tuple(rows))


def emit_spectrum_csv(omegas: np.ndarray, magnitudes: np.ndarray) -> str:
    lines = ["omega,magnitude"]
    for omega, magnitude in zip(omegas, magnitudes):
        lines.append(f"{repr(float(omega))},{repr(float(magnitude))}")
    return "\n".join(lines) + "\n"


def grand_means(report: ExperimentReport) -> dict[str, float]:
    """Per-method mean of the cell means (finite cells only)."""
    sums: dict[str, list[float]] = {}
    for row in report.rows:
        if math.isfinite(row.mean_output_snr_db):
            sums.setdefault(row.method, []).append(row.mean_output_snr_db)
    return {method: float(np.mean(vals)) for method, vals in sums.items()}
