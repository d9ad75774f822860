"""Experiment runner: pairing, determinism, aggregation, CSV round-trips."""

import math

import numpy as np
import pytest

from pes_denoise.denoise import DenoiseConfig
from pes_denoise.harness import (
    CSV_HEADER,
    ExperimentReport,
    ExperimentSpec,
    ReportRow,
    _summarize,
    emit_csv,
    emit_spectrum_csv,
    grand_means,
    parse_csv,
    run_experiment,
)

SMALL = ExperimentSpec(
    signals=("heavy-sine",),
    noise_fractions=(0.2,),
    trials=5,
    methods=(DenoiseConfig(method="pes-pyramid"), DenoiseConfig(method="three-sigma")),
    base_seed=0,
    n=512,
)


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec(trials=0)
    with pytest.raises(ValueError):
        ExperimentSpec(noise_fractions=(0.2, 1.5))


def test_run_experiment_is_deterministic():
    a = run_experiment(SMALL)
    b = run_experiment(SMALL)
    assert a == b
    assert len(a.rows) == 2 and not a.errors


def test_rows_are_ordered_and_labeled():
    report = run_experiment(SMALL)
    assert [r.method for r in report.rows] == ["pes-pyramid", "three-sigma"]
    row = report.rows[0]
    assert row.signal == "heavy-sine" and row.fraction == 0.2 and row.trials == 5
    # both methods summarize the identical noisy instances
    assert report.rows[0].mean_input_snr_db == report.rows[1].mean_input_snr_db


def test_pyramid_beats_input_snr_by_wide_margin():
    spec = ExperimentSpec(
        signals=("heavy-sine",),
        noise_fractions=(0.2,),
        trials=25,
        methods=(DenoiseConfig(method="pes-pyramid"),),
        n=1024,
    )
    row = run_experiment(spec).rows[0]
    assert row.mean_output_snr_db - row.mean_input_snr_db >= 8.0


def test_duplicated_method_pairs_exactly():
    spec = ExperimentSpec(
        signals=("doppler",),
        noise_fractions=(0.3,),
        trials=4,
        methods=(DenoiseConfig(method="pes-wavelet"), DenoiseConfig(method="pes-wavelet")),
        n=512,
    )
    rows = run_experiment(spec).rows
    assert rows[0].mean_output_snr_db == rows[1].mean_output_snr_db
    assert rows[0].stddev_output_snr_db == rows[1].stddev_output_snr_db


def test_summarize_excludes_infinite_sentinels():
    mean, std, excluded = _summarize([1.0, math.inf, 3.0])
    assert mean == 2.0 and std == 1.0 and excluded == 1
    mean, std, excluded = _summarize([math.inf, math.inf])
    assert mean == math.inf and std == 0.0 and excluded == 2


def test_cell_errors_are_recorded_not_raised():
    spec = ExperimentSpec(
        signals=("blocks",),
        noise_fractions=(0.2,),
        trials=2,
        methods=(DenoiseConfig(method="pes-wavelet", bank="nope"),),
        n=512,
    )
    report = run_experiment(spec)
    assert report.rows == ()
    assert len(report.errors) == 1
    assert report.errors[0].startswith("blocks/0.2:")


def test_single_thread_cap_matches_default(monkeypatch):
    baseline = run_experiment(SMALL)
    monkeypatch.setenv("PES_DENOISE_THREADS", "1")
    assert run_experiment(SMALL) == baseline


def test_emit_csv_shapes():
    assert emit_csv(ExperimentReport(rows=())) == CSV_HEADER + "\n"
    row = ReportRow("blocks", 0.1, "universal", 10.123456, 15.98765, 0.5, 7)
    text = emit_csv(ExperimentReport(rows=(row,)))
    lines = text.splitlines()
    assert len(lines) == 2
    assert lines[1] == "blocks,0.1000,universal,10.1235,15.9877,0.5000,7"


def test_csv_roundtrip_to_four_decimals():
    report = run_experiment(SMALL)
    parsed = parse_csv(emit_csv(report))
    assert len(parsed.rows) == len(report.rows)
    for got, want in zip(parsed.rows, report.rows):
        assert got.signal == want.signal and got.method == want.method
        assert got.trials == want.trials
        assert abs(got.fraction - want.fraction) < 5e-5
        assert abs(got.mean_input_snr_db - want.mean_input_snr_db) < 5e-5
        assert abs(got.mean_output_snr_db - want.mean_output_snr_db) < 5e-5
        assert abs(got.stddev_output_snr_db - want.stddev_output_snr_db) < 5e-5


def test_parse_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_csv("signal,oops\nblocks,1\n")


def test_emit_spectrum_csv_roundtrips_floats():
    omegas = np.array([0.0, 0.1234567890123456])
    mags = np.array([1.5, 2.25e-13])
    lines = emit_spectrum_csv(omegas, mags).splitlines()
    assert lines[0] == "omega,magnitude"
    got = [tuple(float(tok) for tok in line.split(",")) for line in lines[1:]]
    assert got == [(0.0, 1.5), (0.1234567890123456, 2.25e-13)]


def test_grand_means_averages_cell_means():
    rows = (
        ReportRow("a", 0.1, "m1", 0.0, 10.0, 0.0, 1),
        ReportRow("b", 0.1, "m1", 0.0, 20.0, 0.0, 1),
        ReportRow("a", 0.1, "m2", 0.0, math.inf, 0.0, 1),
        ReportRow("a", 0.2, "m2", 0.0, 5.0, 0.0, 1),
    )
    means = grand_means(ExperimentReport(rows=rows))
    assert means == {"m1": 15.0, "m2": 5.0}
