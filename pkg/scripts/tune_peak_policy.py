#!/usr/bin/env python3
"""Measure the spectral statistics that the peak-detection policy relies on.

For each scheme and transform order this script reports, over many seeds:

* relative amplitude of each detected line (vs the strongest line),
* local contrast (bin magnitude over the median of its neighborhood)
  for accepted peaks and for the strongest rejected candidate,
* the peak-count histogram on the full-rate path and, optionally, on
  the compressive-reconstruction path.

Use it to sanity-check PeakPolicy thresholds after touching the
detector: accepted-peak contrast should sit well above the rejected
clutter, and the count histograms should be concentrated on the
expected pattern for every scheme.

Example:
    python scripts/tune_peak_policy.py --seeds 25 --num-symbols 256 --ncs
"""

import argparse
import sys
from collections import Counter

import numpy as np

from pskamr import (
    ModulationScheme,
    SignalSpec,
    synthesize,
    npt,
    dense_spectrum,
    detect_peaks,
    extract_features,
    make_plan,
    apply_plan,
    ComplexSignal,
)

ORDERS = {
    ModulationScheme.BPSK: (2, 4),
    ModulationScheme.QPSK: (2, 4),
    ModulationScheme.PSK8: (2, 4, 8),
    ModulationScheme.OQPSK: (2, 4),
    ModulationScheme.MSK: (2, 4),
}


def dense_stats(scheme, order, seeds, num_symbols):
    counts = Counter()
    rels = []
    for seed in range(seeds):
        spec = SignalSpec(scheme=scheme, num_symbols=num_symbols, seed=seed)
        powered = npt(synthesize(spec), order=order)
        estimate = dense_spectrum(powered)
        peaks = detect_peaks(estimate)
        counts[peaks.count] += 1
        if peaks.count:
            top = max(p.magnitude for p in peaks.peaks)
            rels.extend(p.magnitude / top for p in peaks.peaks)
    return counts, rels


def ncs_counts(scheme, seeds, num_symbols, ratio):
    counts2, counts4 = Counter(), Counter()
    for seed in range(seeds):
        spec = SignalSpec(scheme=scheme, num_symbols=num_symbols, seed=seed)
        signal = synthesize(spec)
        length = signal.samples.size
        plan = make_plan(length, round(ratio * length), seed=seed + 10_000)
        gathered = ComplexSignal(
            samples=apply_plan(plan, signal), rate_hz=signal.rate_hz
        )
        feats = extract_features(gathered, plan=plan, orders=(2, 4))
        counts2[feats.counts.order2] += 1
        counts4[feats.counts.order4] += 1
    return counts2, counts4


def fmt_hist(counter):
    return "  ".join(f"{k}:{v}" for k, v in sorted(counter.items()))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seeds", type=int, default=25)
    parser.add_argument("--num-symbols", type=int, default=256)
    parser.add_argument("--ratio", type=float, default=0.3)
    parser.add_argument(
        "--ncs", action="store_true",
        help="also histogram counts on the compressive path (slower)",
    )
    args = parser.parse_args(argv)

    print(f"{args.seeds} seeds, {args.num_symbols} symbols\n")
    print("full-rate path: count histograms and line amplitudes")
    for scheme, orders in ORDERS.items():
        for order in orders:
            counts, rels = dense_stats(
                scheme, order, args.seeds, args.num_symbols
            )
            rel_txt = ""
            if rels:
                rels = np.asarray(rels)
                rel_txt = (f"  rel amp min/med: "
                           f"{rels.min():.3f}/{np.median(rels):.3f}")
            print(f"  {scheme.value:6s} order {order}: "
                  f"counts {fmt_hist(counts)}{rel_txt}")

    if args.ncs:
        print("\ncompressive path: count histograms (orders 2 and 4)")
        for scheme in ORDERS:
            counts2, counts4 = ncs_counts(
                scheme, args.seeds, args.num_symbols, args.ratio
            )
            print(f"  {scheme.value:6s} order 2: {fmt_hist(counts2)}   "
                  f"order 4: {fmt_hist(counts4)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
