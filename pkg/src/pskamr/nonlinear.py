"""Power-law (Nth-power) transform and dense spectral analysis.

Raising a PSK signal elementwise to the power N wipes the order-N phase
modulation and concentrates the spectrum onto a handful of lines around
N times the carrier, offset by multiples (or, for MSK, half-integer
multiples) of the symbol rate.  The analysis convention throughout the
package: the spectrum is the unnormalized forward DFT, and synthesis
back to samples is the inverse DFT with the 1/L factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .waveforms import ComplexSignal

__all__ = ["VALID_ORDERS", "SpectrumEstimate", "npt", "dense_spectrum"]

#: Transform orders with a defined meaning in this pipeline.
VALID_ORDERS = (1, 2, 4, 8)


def _check_order(order: int) -> int:
    if order not in VALID_ORDERS:
        raise ValueError(f"order must be one of {VALID_ORDERS}, got {order}")
    return int(order)


@dataclass(frozen=True, eq=False)
class SpectrumEstimate:
    """DFT-domain coefficients of an order-`order` power-law transform.

    Bin b of `coeffs` corresponds to frequency b * rate_hz / len(coeffs),
    wrapping modulo rate_hz.
    """

    coeffs: np.ndarray
    rate_hz: float
    order: int

    def __post_init__(self) -> None:
        coeffs = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise ValueError("coeffs must be a nonempty 1-D array")
        if not (self.rate_hz > 0 and math.isfinite(self.rate_hz)):
            raise ValueError(f"rate_hz must be finite and > 0, got {self.rate_hz}")
        _check_order(self.order)
        object.__setattr__(self, "coeffs", coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def bin_hz(self) -> float:
        return self.rate_hz / len(self.coeffs)


def npt(signal: ComplexSignal, order: int) -> ComplexSignal:
    """Elementwise Nth power of the samples; order 1 is the identity."""
    order = _check_order(order)
    if order == 1:
        return ComplexSignal(signal.samples.copy(), signal.rate_hz)
    return ComplexSignal(signal.samples**order, signal.rate_hz)


def dense_spectrum(signal: ComplexSignal, order: int = 1) -> SpectrumEstimate:
    """Unnormalized forward DFT of `signal`.

    `order` only annotates which power-law transform produced the input;
    it does not change the computation.
    """
    return SpectrumEstimate(np.fft.fft(signal.samples), signal.rate_hz, _check_order(order))
