"""Decision tree over line counts and parameter estimation geometry."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pskamr import (
    ClassificationResult,
    ModulationScheme,
    ParameterEstimate,
    classify_counts,
    classify_features,
    estimate_parameters,
)
from pskamr.features import Peak, PeakCounts, PeakSet, SpectralFeatures

RATE = 6400.0
BINS = 8192


def peak_set(freqs, order, magnitudes=None):
    if magnitudes is None:
        magnitudes = [1.0] * len(freqs)
    peaks = tuple(
        Peak(bin_index=round(f / RATE * BINS), freq_hz=float(f), magnitude=m)
        for f, m in zip(freqs, magnitudes)
    )
    return PeakSet(peaks=peaks, order=order, num_bins=BINS, rate_hz=RATE)


def features_with(order2=None, order4=None, order8=None):
    sets = {}
    if order2 is not None:
        sets[2] = peak_set(order2, 2)
    if order4 is not None:
        sets[4] = peak_set(order4, 4)
    if order8 is not None:
        sets[8] = peak_set(order8, 8)
    return SpectralFeatures(peak_sets=sets, rate_hz=RATE)


# ------------------------------------------------------------ decision tree

@pytest.mark.parametrize(
    "counts,expected",
    [
        ((3, 3, None), ModulationScheme.BPSK),
        ((3, 5, None), ModulationScheme.BPSK),
        ((5, 5, None), ModulationScheme.BPSK),
        ((3, 0, None), ModulationScheme.BPSK),
        ((2, 2, None), ModulationScheme.MSK),
        ((2, 1, None), ModulationScheme.OQPSK),
        ((2, 3, None), ModulationScheme.OQPSK),
        ((2, 5, None), ModulationScheme.OQPSK),
        ((0, 3, None), ModulationScheme.QPSK),
        ((0, 5, None), ModulationScheme.QPSK),
        ((0, 0, 3), ModulationScheme.PSK8),
        ((0, 0, 5), ModulationScheme.PSK8),
        ((0, 0, 0), None),
        ((0, 0, None), None),
        ((0, 0, 2), None),
        ((0, 1, None), None),
        ((0, 2, None), None),
        ((1, 3, None), None),
        ((2, 0, None), None),
        ((2, 4, None), None),
        ((4, 4, None), None),
        ((None, None, None), None),
    ],
)
def test_count_patterns_map_to_schemes(counts, expected):
    pattern = PeakCounts(order2=counts[0], order4=counts[1], order8=counts[2])
    assert classify_counts(pattern) is expected


@settings(max_examples=200, deadline=None)
@given(
    c=st.tuples(
        *[st.one_of(st.none(), st.integers(min_value=0, max_value=8))] * 3
    )
)
def test_tree_is_total_property(c):
    out = classify_counts(PeakCounts(order2=c[0], order4=c[1], order8=c[2]))
    assert out is None or isinstance(out, ModulationScheme)


# ------------------------------------------------------------ estimators

def test_bpsk_geometry_reads_half_centre_and_spacing():
    features = features_with(order2=[200.0, 1000.0, 1800.0])
    est = estimate_parameters(ModulationScheme.BPSK, features)
    assert est.carrier_hz == pytest.approx(500.0)
    assert est.symbol_rate_hz == pytest.approx(800.0)


def test_bpsk_five_line_comb_unwraps_across_dc():
    # lines at 1000 + k*800 for k in -2..2; the k=-2 line wraps to 5800 Hz
    comb = peak_set(
        [5800.0, 200.0, 1000.0, 1800.0, 2600.0], 2,
        magnitudes=[0.1, 0.15, 1.0, 0.15, 0.1],
    )
    features = SpectralFeatures(peak_sets={2: comb}, rate_hz=RATE)
    est = estimate_parameters(ModulationScheme.BPSK, features)
    assert est.carrier_hz == pytest.approx(500.0)
    assert est.symbol_rate_hz == pytest.approx(800.0)


def test_qpsk_geometry_reads_quarter_centre_from_order_four():
    features = features_with(order2=[], order4=[1200.0, 2000.0, 2800.0])
    est = estimate_parameters(ModulationScheme.QPSK, features)
    assert est.carrier_hz == pytest.approx(500.0)
    assert est.symbol_rate_hz == pytest.approx(800.0)


def test_oqpsk_geometry_reads_midpoint_and_half_gap():
    features = features_with(order2=[200.0, 1800.0])
    est = estimate_parameters(ModulationScheme.OQPSK, features)
    assert est.carrier_hz == pytest.approx(500.0)
    assert est.symbol_rate_hz == pytest.approx(800.0)


def test_msk_geometry_reads_midpoint_and_full_gap():
    features = features_with(order2=[600.0, 1400.0])
    est = estimate_parameters(ModulationScheme.MSK, features)
    assert est.carrier_hz == pytest.approx(500.0)
    assert est.symbol_rate_hz == pytest.approx(800.0)


def test_8psk_and_unknown_produce_no_estimates():
    features = features_with(order2=[], order4=[], order8=[4000.0, 3200.0, 4800.0])
    assert estimate_parameters(ModulationScheme.PSK8, features) == ParameterEstimate()
    assert estimate_parameters(None, features) == ParameterEstimate()


def test_estimators_require_the_expected_line_count():
    # two lines cannot be a BPSK comb; three cannot be an MSK pair
    two = features_with(order2=[200.0, 1800.0])
    assert estimate_parameters(ModulationScheme.BPSK, two) == ParameterEstimate()
    three = features_with(order2=[200.0, 1000.0, 1800.0])
    assert estimate_parameters(ModulationScheme.MSK, three) == ParameterEstimate()
    missing = features_with(order4=[1200.0, 2000.0, 2800.0])
    assert estimate_parameters(ModulationScheme.MSK, missing) == ParameterEstimate()
    wrong_qpsk = features_with(order2=[], order4=[2000.0])
    assert estimate_parameters(ModulationScheme.QPSK, wrong_qpsk) == ParameterEstimate()


# ---------------------------------------------------------- classify_features

def test_classify_features_combines_tree_and_estimates():
    features = features_with(order2=[600.0, 1400.0], order4=[1200.0, 2800.0])
    result = classify_features(features)
    assert isinstance(result, ClassificationResult)
    assert result.scheme is ModulationScheme.MSK
    assert result.label == "msk"
    assert result.counts.order2 == 2 and result.counts.order4 == 2
    assert result.parameters.carrier_hz == pytest.approx(500.0)
    assert result.parameters.symbol_rate_hz == pytest.approx(800.0)


def test_unknown_pattern_yields_the_unknown_label():
    result = classify_features(features_with(order2=[], order4=[], order8=[]))
    assert result.scheme is None
    assert result.label == "unknown"
    assert result.parameters == ParameterEstimate()
