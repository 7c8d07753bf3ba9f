"""Command-line interface: benchmark sweeps and one-shot classification.

Exit codes: 0 on success, 2 for bad arguments, 3 for I/O failures.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .bench import (
    CSV_HEADER,
    PRESETS,
    SamplingPath,
    SweepConfig,
    load_samples,
    run_sweep,
    sweep_to_csv,
)
from .classify import classify_features
from .features import extract_features
from .sensing import load_plan
from .waveforms import ComplexSignal, ModulationScheme

__all__ = ["main", "parse_snr_spec"]

_EXIT_OK = 0
_EXIT_USAGE = 2
_EXIT_IO = 3


def parse_snr_spec(text: str) -> tuple[float, ...]:
    """Parse an SNR grid: 'a:step:b' (inclusive) or a comma list.

    Values may be any float, including 'inf' for the noiseless case.
    """
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("SNR range must look like start:step:stop")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("SNR range step must be positive")
        values = []
        k = 0
        while True:
            v = start + k * step
            if v > stop + 1e-9:
                break
            values.append(round(v, 9))
            k += 1
        if not values:
            raise ValueError("empty SNR range")
        return tuple(values)
    values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    if not values:
        raise ValueError("no SNR values given")
    return values


def _parse_schemes(text: str) -> tuple[ModulationScheme, ...]:
    try:
        return tuple(ModulationScheme(tok.strip().lower())
                     for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ValueError(f"unknown scheme in {text!r}") from exc


def _parse_paths(text: str) -> tuple[SamplingPath, ...]:
    try:
        return tuple(SamplingPath(tok.strip().lower())
                     for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ValueError(f"unknown path in {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amr",
        description="PSK-family modulation recognition benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a Monte Carlo SNR sweep")
    sweep.add_argument("--schemes", default="bpsk,qpsk,8psk,oqpsk,msk",
                       help="comma-separated schemes")
    sweep.add_argument("--snr", default="0:5:15",
                       help="SNR grid in dB: start:step:stop or comma list")
    sweep.add_argument("--paths", default="ncs",
                       help="comma-separated sampling paths (ncs,nyquist)")
    sweep.add_argument("--ratio", type=float, default=0.3,
                       help="compressive measurement ratio")
    sweep.add_argument("--trials", type=int, default=None,
                       help="trials per cell (default from preset)")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out", default="-",
                       help="output CSV path, '-' for stdout")
    sweep.add_argument("--preset", choices=sorted(PRESETS), default="paper",
                       help="signal-scale preset")
    sweep.add_argument("--parallel", type=int, default=0,
                       help="worker processes (0 = run in-process)")

    classify = sub.add_parser("classify", help="classify a sample file")
    classify.add_argument("--input", required=True,
                          help="sample file: header 'N rate_hz', then 're im' rows")
    classify.add_argument("--plan", default=None,
                          help="measurement plan file; omit for Nyquist samples")
    classify.add_argument("--rate", type=float, default=None,
                          help="override the sample rate from the file header")
    return parser


def _cmd_sweep(args: argparse.Namespace) -> int:
    try:
        schemes = _parse_schemes(args.schemes)
        snrs = parse_snr_spec(args.snr)
        paths = _parse_paths(args.paths)
        preset = PRESETS[args.preset]
        trials = args.trials if args.trials is not None else preset["trials"]
        config = SweepConfig(
            schemes=schemes,
            snrs_db=snrs,
            paths=paths,
            trials=trials,
            seed=args.seed,
            num_symbols=preset["num_symbols"],
            ratio=args.ratio,
            parallel=args.parallel,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    csv_text = sweep_to_csv(run_sweep(config))
    if args.out == "-":
        sys.stdout.write(csv_text)
    else:
        try:
            with open(args.out, "w", encoding="ascii", newline="") as fh:
                fh.write(csv_text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return _EXIT_IO
    return _EXIT_OK


def _cmd_classify(args: argparse.Namespace) -> int:
    try:
        signal = load_samples(args.input)
        plan = load_plan(args.plan) if args.plan else None
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_IO
    except ValueError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return _EXIT_IO
    if args.rate is not None:
        if args.rate <= 0:
            print("error: --rate must be positive", file=sys.stderr)
            return _EXIT_USAGE
        signal = ComplexSignal(samples=signal.samples, rate_hz=args.rate)
    try:
        features = extract_features(signal, plan=plan)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    result = classify_features(features)
    counts = result.counts.as_dict()
    shown = " ".join(
        f"c{[2, 4, 8].index(order) + 1}={'-' if counts[order] is None else counts[order]}"
        for order in (2, 4, 8)
    )
    print(f"label: {result.label}")
    print(f"counts: {shown}")
    est = result.parameters
    if est.carrier_hz is not None:
        print(f"carrier_hz: {est.carrier_hz:.4f}")
    if est.symbol_rate_hz is not None:
        print(f"symbol_rate_hz: {est.symbol_rate_hz:.4f}")
    return _EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep":
        return _cmd_sweep(args)
    return _cmd_classify(args)


if __name__ == "__main__":
    sys.exit(main())
