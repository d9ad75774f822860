"""End-to-end acceptance suite.

Each test exercises one shipping criterion, logs a one-line PASS/FAIL
verdict for the terminal summary, then asserts.  Tolerances and scales
are fixed here on purpose; loosening them is a functional change, not a
test cleanup.
"""

import time

import numpy as np
from scipy.optimize import bisect

from pes_denoise.cli import main as cli_main
from pes_denoise.denoise import DenoiseConfig, denoise
from pes_denoise.harness import ExperimentSpec, grand_means, run_experiment
from pes_denoise.projections import project_epigraph_l1, project_l1_ball, soft_threshold
from pes_denoise.signals import NoiseSpec, add_gaussian_noise, generate_test_signal, snr_db
from pes_denoise.spectrum import select_levels
from pes_denoise.transforms import (
    BANK_NAMES,
    default_cutoffs,
    dwt_analysis,
    dwt_synthesis,
    get_filter_bank,
    pyramid_analysis,
)


def _ball_oracle_theta(w: np.ndarray, d: float) -> float:
    """Independent route: bisect the soft-threshold amount directly."""
    if np.sum(np.abs(w)) <= d:
        return 0.0

    def gap(theta: float) -> float:
        return float(np.sum(np.maximum(np.abs(w) - theta, 0.0)) - d)

    return bisect(gap, 0.0, float(np.max(np.abs(w))), xtol=1e-12)


def test_criterion_01_ball_projection_matches_oracle(acceptance_log):
    rng = np.random.default_rng(101)
    worst = 0.0
    start = time.perf_counter()
    for _ in range(1000):
        k = int(rng.integers(1, 65))
        w = rng.uniform(-10.0, 10.0, k)
        d = float(rng.uniform(0.0, 1.5 * np.sum(np.abs(w))))
        got = project_l1_ball(w, d)
        want = soft_threshold(w, _ball_oracle_theta(w, d))
        worst = max(worst, float(np.max(np.abs(got.w_p - want))))
        norm_err = abs(float(np.sum(np.abs(got.w_p))) - min(d, float(np.sum(np.abs(w)))))
        worst = max(worst, norm_err)
    elapsed = time.perf_counter() - start
    passed = worst < 1e-9 and elapsed < 5.0
    acceptance_log(
        1,
        "ball projection matches threshold-bisection oracle",
        passed,
        f"worst_abs_err={worst:.2e} elapsed={elapsed:.2f}s (1000 instances)",
    )
    assert worst < 1e-9
    assert elapsed < 5.0


def test_criterion_02_epigraph_projection_is_optimal(acceptance_log):
    # feasible means inside the ball of the size the projection reports;
    # w_p must be the closest such point to w on either code path
    rng = np.random.default_rng(102)
    worst_violation = 0.0
    for _ in range(100):
        k = int(rng.integers(1, 17))
        w = rng.uniform(-10.0, 10.0, k)
        if not np.any(w):
            w[0] = 1.0
        result = project_epigraph_l1(w)
        own = float(np.linalg.norm(w - result.w_p))

        # 10000 feasible points: half broad, half clustered near the
        # answer, all scaled into the reported ball
        broad = rng.uniform(-20.0, 20.0, (5000, k)) * rng.random((5000, 1))
        near = result.w_p[None, :] + rng.normal(0.0, 0.5, (5000, k))
        candidates = np.vstack([broad, near])
        norms = np.sum(np.abs(candidates), axis=1)
        scale = np.minimum(1.0, result.d / np.maximum(norms, 1e-300))
        candidates *= scale[:, None]
        dist = np.sqrt(np.sum((candidates - w[None, :]) ** 2, axis=1))
        worst_violation = max(worst_violation, float(np.max(own - dist)))
    passed = worst_violation <= 1e-9
    acceptance_log(
        2,
        "no sampled point in the reported ball beats the projection",
        passed,
        f"worst_violation={worst_violation:.2e} (100 instances x 10000 samples)",
    )
    assert worst_violation <= 1e-9


def test_criterion_03_epigraph_hand_case(acceptance_log):
    result = project_epigraph_l1(np.array([1.0, 1.0]))
    errs = [
        float(np.max(np.abs(result.w_p - np.array([1.0, 1.0]) / 3.0))),
        abs(result.z_p - 2.0 / 3.0),
        abs(result.d - 2.0 / 3.0),
    ]
    passed = max(errs) < 1e-12 and result.fast_path
    acceptance_log(
        3,
        "two-ones hand case lands on ([1/3,1/3], 2/3) via the fast path",
        passed,
        f"max_err={max(errs):.2e} fast_path={result.fast_path}",
    )
    assert max(errs) < 1e-12
    assert result.fast_path


def test_criterion_04_wavelet_invertibility_and_energy(acceptance_log):
    rng = np.random.default_rng(104)
    banks = [get_filter_bank(name) for name in BANK_NAMES]
    worst_rt = worst_energy = 0.0
    for _ in range(1000):
        x = rng.normal(size=512)
        energy = float(np.sum((x / np.sqrt(x.size)) ** 2))
        for bank in banks:
            for levels in range(1, 6):
                bands = dwt_analysis(x, bank, levels)
                rt = np.linalg.norm(dwt_synthesis(bands, bank) - x) / np.linalg.norm(x)
                coeff = float(np.sum(bands.lowband**2) + sum(np.sum(d**2) for d in bands.details))
                worst_rt = max(worst_rt, float(rt))
                worst_energy = max(worst_energy, abs(coeff - energy) / energy)
    passed = worst_rt < 1e-10 and worst_energy < 1e-10
    acceptance_log(
        4,
        "wavelet round-trip and energy budget hold for every bank and depth",
        passed,
        f"worst_roundtrip={worst_rt:.2e} worst_energy={worst_energy:.2e} "
        f"(1000 signals x {len(banks) * 5} configs)",
    )
    assert worst_rt < 1e-10
    assert worst_energy < 1e-10


def test_criterion_05_pyramid_bitwise_additivity(acceptance_log):
    rng = np.random.default_rng(105)
    checked = failures = 0
    for levels in range(1, 5):
        for taps in (65, 129):
            cutoffs = default_cutoffs(levels)
            for _ in range(100):
                x = 10.0 + rng.normal(size=256)
                pyramid = pyramid_analysis(x, cutoffs, taps=taps)
                current = x
                for x_lp, x_hp in pyramid.stages:
                    checked += 1
                    if not np.array_equal(x_lp + x_hp, current):
                        failures += 1
                    current = x_lp
    # the subtraction itself is exact for any input, by construction
    zero_mean = rng.normal(size=256)
    pyramid = pyramid_analysis(zero_mean, default_cutoffs(3), taps=65)
    current = zero_mean
    definitional_ok = True
    for x_lp, x_hp in pyramid.stages:
        definitional_ok &= bool(np.array_equal(x_hp, current - x_lp))
        current = x_lp
    passed = failures == 0 and definitional_ok
    acceptance_log(
        5,
        "pyramid stages recombine bit-exactly on offset signals",
        passed,
        f"failures={failures}/{checked} stage checks, definitional_ok={definitional_ok}",
    )
    assert failures == 0
    assert definitional_ok


def test_criterion_06_level_selection_vote(acceptance_log):
    clean = generate_test_signal("piece-regular", 512)
    rates = {}
    for fraction in (0.10, 0.20, 0.30):
        hits = sum(
            select_levels(add_gaussian_noise(clean, NoiseSpec(fraction, seed=s))) == 3
            for s in range(100)
        )
        rates[fraction] = hits
    passed = all(hits >= 90 for hits in rates.values())
    detail = " ".join(f"{frac:.0%}:{hits}/100" for frac, hits in rates.items())
    acceptance_log(6, "piece-regular level vote picks depth 3", passed, detail)
    assert passed


def test_criterion_07_heavy_sine_quality_gate(acceptance_log):
    start = time.perf_counter()
    clean = generate_test_signal("heavy-sine", 1024)
    inputs, pyr, wav = [], [], []
    for seed in range(100):
        noisy = add_gaussian_noise(clean, NoiseSpec(0.20, seed=seed))
        inputs.append(snr_db(clean, noisy))
        pyr.append(snr_db(clean, denoise(noisy, DenoiseConfig(method="pes-pyramid"))))
        wav.append(snr_db(clean, denoise(noisy, DenoiseConfig(method="pes-wavelet"))))
    elapsed = time.perf_counter() - start
    mean_in, mean_pyr, mean_wav = (float(np.mean(v)) for v in (inputs, pyr, wav))
    passed = abs(mean_in - 11.75) <= 0.5 and mean_pyr >= 20.0 and mean_wav >= 20.0 and elapsed < 60.0
    acceptance_log(
        7,
        "heavy-sine at 20% noise clears 20 dB on both epigraph paths",
        passed,
        f"input={mean_in:.2f} pyramid={mean_pyr:.2f} wavelet={mean_wav:.2f} "
        f"elapsed={elapsed:.1f}s",
    )
    assert abs(mean_in - 11.75) <= 0.5
    assert mean_pyr >= 20.0
    assert mean_wav >= 20.0
    assert elapsed < 60.0


def test_criterion_08_comparative_grand_means(acceptance_log):
    spec = ExperimentSpec(
        trials=100,
        methods=(DenoiseConfig(method="pes-pyramid"), DenoiseConfig(method="three-sigma")),
    )
    report = run_experiment(spec)
    means = grand_means(report)
    gap = means["pes-pyramid"] - means["three-sigma"]
    passed = not report.errors and gap >= 1.0
    acceptance_log(
        8,
        "pyramid grand mean leads the three-sigma baseline by 1 dB",
        passed,
        f"pes-pyramid={means['pes-pyramid']:.2f} three-sigma={means['three-sigma']:.2f} "
        f"gap={gap:+.3f} (needs >= +1.0)",
    )
    assert not report.errors
    assert gap >= 1.0


def test_criterion_09_sigma_estimator_independence(acceptance_log, monkeypatch):
    import sys

    cases = []
    for name, fraction in (("doppler", 0.2), ("bumps", 0.3), ("heavy-sine", 0.1)):
        noisy = add_gaussian_noise(generate_test_signal(name, 512), NoiseSpec(fraction, seed=1))
        cases.append(
            (
                noisy,
                denoise(noisy, DenoiseConfig(method="pes-wavelet")),
                denoise(noisy, DenoiseConfig(method="pes-pyramid")),
            )
        )

    def poisoned(_band):
        raise RuntimeError("noise-level estimation must not be consulted")

    monkeypatch.setattr(sys.modules["pes_denoise.denoise"], "estimate_sigma", poisoned)
    identical = True
    baselines_blocked = True
    for noisy, want_wav, want_pyr in cases:
        identical &= bool(
            np.array_equal(denoise(noisy, DenoiseConfig(method="pes-wavelet")), want_wav)
        )
        identical &= bool(
            np.array_equal(denoise(noisy, DenoiseConfig(method="pes-pyramid")), want_pyr)
        )
        for method in ("universal", "three-sigma"):
            try:
                denoise(noisy, DenoiseConfig(method=method))
                baselines_blocked = False
            except RuntimeError:
                pass
    passed = identical and baselines_blocked
    acceptance_log(
        9,
        "epigraph paths never consult the noise-level estimator",
        passed,
        f"outputs_identical={identical} baselines_blocked={baselines_blocked}",
    )
    assert identical
    assert baselines_blocked


def test_criterion_10_cli_byte_determinism(acceptance_log, tmp_path):
    invocations = [
        ["generate", "--signal", "blocks", "--n", "256"],
        ["denoise", "--signal", "heavy-sine", "--noise", "0.2",
         "--method", "pes-pyramid", "--seed", "3"],
        ["spectrum", "--signal", "piece-regular", "--n", "512", "--noise", "0.2"],
        ["experiment", "--signal", "cusp", "--signal", "blocks",
         "--noise", "0.1", "--noise", "0.3",
         "--method", "pes-wavelet", "--method", "universal",
         "--trials", "2", "--n", "512"],
    ]
    compared = 0
    all_equal = True
    rcs = []
    for idx, argv in enumerate(invocations):
        dir_a = tmp_path / f"run{idx}_a"
        dir_b = tmp_path / f"run{idx}_b"
        rcs.append(cli_main(argv + ["--out", str(dir_a)]))
        rcs.append(cli_main(argv + ["--out", str(dir_b)]))
        files_a = sorted(p.name for p in dir_a.iterdir())
        files_b = sorted(p.name for p in dir_b.iterdir())
        all_equal &= files_a == files_b
        for name in files_a:
            compared += 1
            all_equal &= (dir_a / name).read_bytes() == (dir_b / name).read_bytes()
    passed = all(rc == 0 for rc in rcs) and all_equal and compared >= 6
    acceptance_log(
        10,
        "repeated CLI runs with one seed produce byte-identical files",
        passed,
        f"files_compared={compared} exit_codes={sorted(set(rcs))}",
    )
    assert all(rc == 0 for rc in rcs)
    assert all_equal
    assert compared >= 6
