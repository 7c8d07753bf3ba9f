"""Command-line interface: argument parsing, output, exit codes."""

import math

import numpy as np
import pytest

from pskamr import (
    ComplexSignal,
    ModulationScheme,
    apply_plan,
    make_plan,
    save_plan,
    save_samples,
)
from pskamr.bench import CSV_HEADER
from pskamr.cli import main, parse_snr_spec

from conftest import desk_signal


# ------------------------------------------------------------ parse_snr_spec

@pytest.mark.parametrize(
    "text,expected",
    [
        ("0:5:15", (0.0, 5.0, 10.0, 15.0)),
        ("-5:5:5", (-5.0, 0.0, 5.0)),
        ("0:2.5:5", (0.0, 2.5, 5.0)),
        ("0:7:10", (0.0, 7.0)),
        ("10", (10.0,)),
        ("3,1,2", (3.0, 1.0, 2.0)),
        ("inf", (math.inf,)),
        ("10,inf", (10.0, math.inf)),
    ],
)
def test_snr_spec_grammar(text, expected):
    assert parse_snr_spec(text) == expected


@pytest.mark.parametrize("text", ["", "5:0:10", "5:-1:10", "10:5:0", "1:2", "a,b"])
def test_snr_spec_rejects_malformed_input(text):
    with pytest.raises(ValueError):
        parse_snr_spec(text)


# ------------------------------------------------------------------ sweep

SWEEP_FAST = [
    "sweep", "--schemes", "msk", "--snr", "inf", "--paths", "nyquist",
    "--trials", "2", "--preset", "desk",
]


def test_sweep_writes_csv_to_stdout(capsys):
    assert main(SWEEP_FAST) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2
    assert lines[1].startswith("msk,inf,nyquist,2,")


def test_sweep_writes_csv_to_a_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    assert main(SWEEP_FAST + ["--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    content = target.read_text()
    assert content.startswith(CSV_HEADER)
    assert content.endswith("\n")


def test_sweep_row_count_covers_the_grid(capsys):
    code = main([
        "sweep", "--schemes", "msk,qpsk", "--snr", "inf,20",
        "--paths", "nyquist", "--trials", "1", "--preset", "desk",
    ])
    assert code == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 1 + 2 * 2


def test_sweep_rejects_unknown_scheme(capsys):
    assert main(SWEEP_FAST[:2] + ["nonsense"] + SWEEP_FAST[3:]) == 2
    assert "unknown scheme" in capsys.readouterr().err


def test_sweep_rejects_bad_snr_spec(capsys):
    argv = list(SWEEP_FAST)
    argv[argv.index("inf")] = "5:0:10"
    assert main(argv) == 2
    assert "step" in capsys.readouterr().err


def test_sweep_rejects_unwritable_output(tmp_path):
    target = tmp_path / "missing_dir" / "out.csv"
    assert main(SWEEP_FAST + ["--out", str(target)]) == 3


# ---------------------------------------------------------------- classify

def test_classify_nyquist_samples(tmp_path, capsys):
    signal = desk_signal(ModulationScheme.QPSK, seed=0)
    sample_file = tmp_path / "qpsk.txt"
    save_samples(signal, sample_file)
    assert main(["classify", "--input", str(sample_file)]) == 0
    out = capsys.readouterr().out
    assert "label: qpsk" in out
    assert "counts: c1=0 c2=3 c3=-" in out
    assert "carrier_hz: 500.0000" in out
    assert "symbol_rate_hz: 800.0000" in out


def test_classify_compressive_measurements(tmp_path, capsys):
    signal = desk_signal(ModulationScheme.MSK, seed=2)
    plan = make_plan(len(signal), 614, seed=77)
    measurements = ComplexSignal(
        samples=apply_plan(plan, signal), rate_hz=signal.rate_hz
    )
    sample_file = tmp_path / "msk_meas.txt"
    plan_file = tmp_path / "plan.txt"
    save_samples(measurements, sample_file)
    save_plan(plan, plan_file)
    code = main([
        "classify", "--input", str(sample_file), "--plan", str(plan_file),
    ])
    assert code == 0
    assert "label: msk" in capsys.readouterr().out


def test_classify_rate_override(tmp_path, capsys):
    # halving the declared rate halves every frequency readout
    signal = desk_signal(ModulationScheme.MSK, seed=2)
    sample_file = tmp_path / "msk.txt"
    save_samples(signal, sample_file)
    assert main([
        "classify", "--input", str(sample_file), "--rate", "3200",
    ]) == 0
    out = capsys.readouterr().out
    assert "label: msk" in out
    assert "carrier_hz: 250.0000" in out


def test_classify_missing_input_is_an_io_error(tmp_path):
    assert main(["classify", "--input", str(tmp_path / "nope.txt")]) == 3


def test_classify_malformed_input_is_an_io_error(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("not a header\n")
    assert main(["classify", "--input", str(bad)]) == 3


def test_classify_rejects_nonpositive_rate(tmp_path):
    signal = desk_signal(ModulationScheme.MSK, seed=2)
    sample_file = tmp_path / "msk.txt"
    save_samples(signal, sample_file)
    assert main([
        "classify", "--input", str(sample_file), "--rate", "-1",
    ]) == 2


def test_classify_plan_length_mismatch_is_a_usage_error(tmp_path):
    signal = desk_signal(ModulationScheme.MSK, seed=2)
    plan = make_plan(len(signal), 614, seed=77)
    sample_file = tmp_path / "full.txt"
    plan_file = tmp_path / "plan.txt"
    save_samples(signal, sample_file)  # full-rate signal, not measurements
    save_plan(plan, plan_file)
    assert main([
        "classify", "--input", str(sample_file), "--plan", str(plan_file),
    ]) == 2
