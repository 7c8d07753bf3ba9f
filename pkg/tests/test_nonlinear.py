"""Power-law transform and dense spectral analysis."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pskamr import (
    ComplexSignal,
    ModulationScheme,
    SpectrumEstimate,
    VALID_ORDERS,
    dense_spectrum,
    npt,
)

from conftest import desk_signal, random_signal


def test_valid_orders_are_the_powers_of_two_up_to_eight():
    assert VALID_ORDERS == (1, 2, 4, 8)


def test_npt_order_one_is_an_identity_copy():
    signal = random_signal(0)
    out = npt(signal, 1)
    assert out is not signal
    assert np.array_equal(out.samples, signal.samples)
    assert out.rate_hz == signal.rate_hz


def test_npt_squares_elementwise():
    signal = random_signal(1)
    assert np.array_equal(npt(signal, 2).samples, signal.samples**2)


def test_npt_is_a_power_homomorphism():
    signal = random_signal(2)
    twice_squared = npt(npt(signal, 2), 2).samples
    fourth = npt(signal, 4).samples
    assert np.allclose(twice_squared, fourth, rtol=1e-13, atol=0)
    assert np.allclose(
        npt(npt(signal, 4), 2).samples, npt(signal, 8).samples,
        rtol=1e-13, atol=0,
    )


@pytest.mark.parametrize("order", [0, 3, 5, 16, -2])
def test_npt_rejects_undefined_orders(order):
    with pytest.raises(ValueError):
        npt(random_signal(3), order)


def test_dense_spectrum_is_the_unnormalized_dft():
    signal = random_signal(4, rate_hz=48.0)
    est = dense_spectrum(signal, order=1)
    assert np.array_equal(est.coeffs, np.fft.fft(signal.samples))
    assert est.rate_hz == 48.0
    assert est.order == 1
    assert est.bin_hz() == 48.0 / len(signal)
    with pytest.raises(ValueError):
        dense_spectrum(signal, order=3)


def test_spectrum_estimate_validation():
    with pytest.raises(ValueError):
        SpectrumEstimate(coeffs=np.array([]), rate_hz=1.0, order=2)
    with pytest.raises(ValueError):
        SpectrumEstimate(coeffs=np.ones(4), rate_hz=-1.0, order=2)
    with pytest.raises(ValueError):
        SpectrumEstimate(coeffs=np.ones(4), rate_hz=1.0, order=3)


def bin_of(freq_hz, length, rate_hz=6400.0):
    return round(freq_hz / rate_hz * length)


def test_squared_bpsk_concentrates_at_twice_the_carrier():
    signal = desk_signal(ModulationScheme.BPSK)
    est = dense_spectrum(npt(signal, 2), order=2)
    assert int(np.argmax(np.abs(est.coeffs))) == bin_of(1000.0, len(signal))


def test_squared_msk_splits_into_two_lines_around_twice_the_carrier():
    signal = desk_signal(ModulationScheme.MSK)
    mags = np.abs(dense_spectrum(npt(signal, 2), order=2).coeffs)
    top_two = set(np.argsort(mags)[-2:])
    expected = {bin_of(600.0, len(signal)), bin_of(1400.0, len(signal))}
    assert top_two == expected


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**20),
       order=st.sampled_from([2, 4, 8]))
def test_npt_magnitude_and_phase_property(seed, order):
    signal = random_signal(seed, length=64)
    powered = npt(signal, order).samples
    assert np.allclose(np.abs(powered), np.abs(signal.samples) ** order,
                       rtol=1e-10)
    phase_residue = np.angle(
        powered * np.exp(-1j * order * np.angle(signal.samples))
    )
    assert np.allclose(phase_residue, 0.0, atol=1e-7)
