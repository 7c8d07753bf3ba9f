"""Modulation decision tree and carrier/symbol-rate estimation.

Counting the dominant lines of the squared, fourth-power, and (when
needed) eighth-power spectra separates the PSK family: BPSK shows the
full three- or five-line comb already at order 2; OQPSK and MSK keep two
order-2 lines but differ at order 4, where MSK again shows exactly two
while OQPSK collapses to its centre line (plus optional weak sides);
QPSK needs order 4 for any lines at all, and 8PSK needs order 8.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .features import PeakCounts, PeakSet, SpectralFeatures
from .waveforms import ModulationScheme

__all__ = [
    "ParameterEstimate",
    "ClassificationResult",
    "classify_counts",
    "estimate_parameters",
    "classify_features",
]

_BPSK_COUNTS = (3, 5)
_SIDE_COUNTS = (3, 5)
_OQPSK_ORDER4 = (1, 3, 5)


@dataclass(frozen=True)
class ParameterEstimate:
    """Carrier frequency and symbol rate recovered from peak geometry."""

    carrier_hz: Optional[float] = None
    symbol_rate_hz: Optional[float] = None


@dataclass(frozen=True)
class ClassificationResult:
    scheme: Optional[ModulationScheme]
    counts: PeakCounts
    parameters: ParameterEstimate

    @property
    def label(self) -> str:
        return self.scheme.value if self.scheme is not None else "unknown"


def classify_counts(counts: PeakCounts) -> Optional[ModulationScheme]:
    """Map per-order line counts to a modulation scheme.

    Returns None when the pattern matches no scheme.  A missing order-8
    count only matters in the branch that consults it.
    """
    c1, c2, c3 = counts.order2, counts.order4, counts.order8
    if c1 in _BPSK_COUNTS:
        return ModulationScheme.BPSK
    if c1 == 2 and c2 == 2:
        return ModulationScheme.MSK
    if c1 == 2 and c2 in _OQPSK_ORDER4:
        return ModulationScheme.OQPSK
    if c1 == 0 and c2 in _SIDE_COUNTS:
        return ModulationScheme.QPSK
    if c1 == 0 and c2 == 0 and c3 in _SIDE_COUNTS:
        return ModulationScheme.PSK8
    return None


def _unwrapped_frequencies(ps: PeakSet) -> np.ndarray:
    """Peak frequencies unwrapped around the strongest line, ascending.

    Line frequencies live modulo the sampling rate, so a comb straddling
    DC comes back split across both ends of the band; recentring every
    line within half a band of the dominant one restores the geometry.
    """
    freqs = np.array([p.freq_hz for p in ps.peaks])
    anchor = float(freqs[int(np.argmax([p.magnitude for p in ps.peaks]))])
    half_band = ps.rate_hz / 2.0
    delta = (freqs - anchor + half_band) % ps.rate_hz - half_band
    return np.sort(anchor + delta)


def _comb_geometry(freqs: np.ndarray) -> tuple[float, float]:
    """Centre and mean adjacent spacing of an odd evenly spaced comb."""
    centre = float(np.median(freqs))
    spacing = float(np.mean(np.diff(freqs)))
    return centre, spacing


def estimate_parameters(
    scheme: Optional[ModulationScheme],
    features: SpectralFeatures,
) -> ParameterEstimate:
    """Recover fc and Rs from the detected line geometry.

    Order-2 lines sit at 2fc + k*Rs (BPSK), 2fc +- Rs (OQPSK), or
    2fc +- Rs/2 (MSK); QPSK uses the order-4 comb at 4fc + k*Rs.  8PSK
    estimates are not reported: its order-8 comb sits at 8fc modulo the
    sampling rate, where the centre is ambiguous under aliasing.
    """
    none = ParameterEstimate()
    if scheme is None or scheme is ModulationScheme.PSK8:
        return none

    if scheme is ModulationScheme.QPSK:
        ps = features.peak_sets.get(4)
        if ps is None or ps.count not in _SIDE_COUNTS:
            return none
        centre, spacing = _comb_geometry(_unwrapped_frequencies(ps))
        return ParameterEstimate(carrier_hz=centre / 4.0, symbol_rate_hz=spacing)

    ps = features.peak_sets.get(2)
    if ps is None:
        return none
    freqs = _unwrapped_frequencies(ps) if ps.count else np.array([])
    if scheme is ModulationScheme.BPSK:
        if ps.count not in _BPSK_COUNTS:
            return none
        centre, spacing = _comb_geometry(freqs)
        return ParameterEstimate(carrier_hz=centre / 2.0, symbol_rate_hz=spacing)
    if ps.count != 2:
        return none
    lo, hi = float(freqs[0]), float(freqs[1])
    centre = (lo + hi) / 2.0
    if scheme is ModulationScheme.OQPSK:
        return ParameterEstimate(carrier_hz=centre / 2.0,
                                 symbol_rate_hz=(hi - lo) / 2.0)
    # MSK: lines at 2fc +- Rs/2.
    return ParameterEstimate(carrier_hz=centre / 2.0, symbol_rate_hz=hi - lo)


def classify_features(features: SpectralFeatures) -> ClassificationResult:
    """Run the decision tree and parameter estimation on peak sets."""
    counts = features.counts
    scheme = classify_counts(counts)
    params = estimate_parameters(scheme, features)
    return ClassificationResult(scheme=scheme, counts=counts, parameters=params)
