"""Complex-baseband PSK-family waveform synthesis and AWGN channel.

Schemes: BPSK / QPSK / 8PSK with root-raised-cosine pulse shaping, plus
offset QPSK (quadrature arm delayed half a symbol) and MSK (half-sine
quadrature arms, constant envelope).  All signals are analytic
(single-sided carrier): samples = A * baseband * exp(j*2*pi*fc*t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "ModulationScheme",
    "SignalSpec",
    "ComplexSignal",
    "rrc_pulse",
    "synthesize",
    "add_awgn",
    "PULSE_SPAN_SYMBOLS",
]

# Symbol span of the shaping filter used by synthesize().
PULSE_SPAN_SYMBOLS = 8


class ModulationScheme(str, Enum):
    BPSK = "bpsk"
    QPSK = "qpsk"
    PSK8 = "8psk"
    OQPSK = "oqpsk"
    MSK = "msk"


#: Constellation size for the linearly modulated (RRC-shaped) schemes.
_MPSK_ORDER = {
    ModulationScheme.BPSK: 2,
    ModulationScheme.QPSK: 4,
    ModulationScheme.PSK8: 8,
}


@dataclass(frozen=True)
class SignalSpec:
    """Everything needed to synthesize one deterministic test signal.

    ``amplitude = 0`` is allowed as a noise-only hook: the synthesized
    signal is identically zero and ``add_awgn`` then injects unit-power
    noise for finite SNRs.

    ``order8`` declares that eighth-power spectral analysis may be run
    downstream, which tightens the anti-alias guard: all dominant
    spectral lines of the eighth-power signal must stay inside the
    sampled band (8*fc + 3*Rs <= fs).  Without it only fourth-power
    analysis is protected (4*fc + 3*Rs < fs).
    """

    scheme: ModulationScheme
    amplitude: float = 1.0
    carrier_hz: float = 500.0
    symbol_rate_hz: float = 800.0
    rolloff: float = 0.5
    num_symbols: int = 1024
    nyquist_rate_hz: float = 6400.0
    seed: int = 0
    order8: bool = True

    def __post_init__(self) -> None:
        if not isinstance(self.scheme, ModulationScheme):
            object.__setattr__(self, "scheme", ModulationScheme(self.scheme))
        if not (self.amplitude >= 0 and math.isfinite(self.amplitude)):
            raise ValueError(f"amplitude must be finite and >= 0, got {self.amplitude}")
        if not (self.carrier_hz > 0 and math.isfinite(self.carrier_hz)):
            raise ValueError(f"carrier_hz must be finite and > 0, got {self.carrier_hz}")
        if not (self.symbol_rate_hz > 0 and math.isfinite(self.symbol_rate_hz)):
            raise ValueError(f"symbol_rate_hz must be finite and > 0, got {self.symbol_rate_hz}")
        if not (0.0 <= self.rolloff <= 1.0):
            raise ValueError(f"rolloff must lie in [0, 1], got {self.rolloff}")
        if not (isinstance(self.num_symbols, int) and self.num_symbols >= 1):
            raise ValueError(f"num_symbols must be a positive integer, got {self.num_symbols}")
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed}")
        ratio = self.nyquist_rate_hz / self.symbol_rate_hz
        sps = int(round(ratio))
        if not (math.isfinite(ratio) and abs(ratio - sps) < 1e-9 and sps >= 2):
            raise ValueError(
                "nyquist_rate_hz must be an integer multiple (>= 2) of symbol_rate_hz, "
                f"got ratio {ratio}"
            )
        if self.scheme is ModulationScheme.OQPSK and sps % 2 != 0:
            raise ValueError(
                "OQPSK needs an even number of samples per symbol so the quadrature "
                f"arm can be delayed by exactly half a symbol, got {sps}"
            )
        # Anti-alias guards: power-law analysis multiplies the carrier and
        # fans symbol-rate lines around it, so the highest line must stay
        # below the sampling rate.
        fs = self.nyquist_rate_hz
        if not 4 * self.carrier_hz + 3 * self.symbol_rate_hz < fs:
            raise ValueError(
                "fourth-power analysis would alias: need 4*carrier + 3*symbol_rate < "
                f"nyquist_rate, got {4 * self.carrier_hz + 3 * self.symbol_rate_hz} >= {fs}"
            )
        if self.order8 and not 8 * self.carrier_hz + 3 * self.symbol_rate_hz <= fs:
            raise ValueError(
                "eighth-power analysis would alias: need 8*carrier + 3*symbol_rate <= "
                f"nyquist_rate, got {8 * self.carrier_hz + 3 * self.symbol_rate_hz} > {fs}"
            )

    @property
    def samples_per_symbol(self) -> int:
        return int(round(self.nyquist_rate_hz / self.symbol_rate_hz))

    @property
    def num_samples(self) -> int:
        return self.num_symbols * self.samples_per_symbol


@dataclass(frozen=True, eq=False)
class ComplexSignal:
    """A uniformly sampled complex signal with its sample rate."""

    samples: np.ndarray
    rate_hz: float

    def __post_init__(self) -> None:
        samples = np.ascontiguousarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a nonempty 1-D array")
        if not np.all(np.isfinite(samples.view(np.float64))):
            raise ValueError("samples must be finite")
        if not (self.rate_hz > 0 and math.isfinite(self.rate_hz)):
            raise ValueError(f"rate_hz must be finite and > 0, got {self.rate_hz}")
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)


def rrc_pulse(rolloff: float, span_symbols: int, samples_per_symbol: int) -> np.ndarray:
    """Root-raised-cosine taps, unit energy, symmetric about the center.

    Returns ``span_symbols * samples_per_symbol + 1`` taps.  The two
    removable singularities of the closed form (t = 0 and
    t = +-Ts/(4*rolloff)) are evaluated by their analytic limits.
    """
    if not (0.0 <= rolloff <= 1.0):
        raise ValueError(f"rolloff must lie in [0, 1], got {rolloff}")
    if not (isinstance(span_symbols, int) and span_symbols >= 1):
        raise ValueError(f"span_symbols must be a positive integer, got {span_symbols}")
    if not (isinstance(samples_per_symbol, int) and samples_per_symbol >= 1):
        raise ValueError(f"samples_per_symbol must be a positive integer, got {samples_per_symbol}")

    n = span_symbols * samples_per_symbol
    # Symbol-normalized time, symmetric about zero.
    t = (np.arange(n + 1) - n / 2.0) / samples_per_symbol
    a = rolloff
    h = np.empty_like(t)

    at_zero = np.isclose(t, 0.0, atol=1e-12)
    if a > 0:
        at_sing = np.isclose(np.abs(t), 1.0 / (4.0 * a), rtol=1e-12, atol=1e-12)
    else:
        at_sing = np.zeros_like(at_zero)
    regular = ~(at_zero | at_sing)

    tr = t[regular]
    num = np.sin(np.pi * tr * (1.0 - a)) + 4.0 * a * tr * np.cos(np.pi * tr * (1.0 + a))
    den = np.pi * tr * (1.0 - (4.0 * a * tr) ** 2)
    h[regular] = num / den
    h[at_zero] = 1.0 - a + 4.0 * a / np.pi
    if a > 0:
        h[at_sing] = (a / np.sqrt(2.0)) * (
            (1.0 + 2.0 / np.pi) * np.sin(np.pi / (4.0 * a))
            + (1.0 - 2.0 / np.pi) * np.cos(np.pi / (4.0 * a))
        )

    return h / np.sqrt(np.sum(h**2))


def _shaped_train(values: np.ndarray, taps: np.ndarray, sps: int, length: int, shift: int = 0) -> np.ndarray:
    """Pulse train sum_n values[n] * taps(t - n*sps - shift), truncated to `length`."""
    up = np.zeros(length, dtype=np.complex128)
    up[::sps] = values
    full = np.convolve(up, taps)
    start = (len(taps) - 1) // 2 - shift
    return full[start : start + length]


def _synthesize_mpsk(spec: SignalSpec, rng: np.random.Generator, symbols: np.ndarray | None) -> np.ndarray:
    m_ary = _MPSK_ORDER[spec.scheme]
    if symbols is None:
        symbols = rng.integers(1, m_ary + 1, size=spec.num_symbols)
    else:
        symbols = np.asarray(symbols)
        if symbols.shape != (spec.num_symbols,):
            raise ValueError(f"symbols must have shape ({spec.num_symbols},)")
        if symbols.min() < 1 or symbols.max() > m_ary:
            raise ValueError(f"symbols must lie in 1..{m_ary}")
    points = np.exp(2j * np.pi * (symbols - 1) / m_ary)
    sps = spec.samples_per_symbol
    taps = rrc_pulse(spec.rolloff, PULSE_SPAN_SYMBOLS, sps)
    # Unit-energy taps give the train mean power 1/sps; rescale to 1.
    return math.sqrt(sps) * _shaped_train(points, taps, sps, spec.num_samples)


def _synthesize_oqpsk(spec: SignalSpec, rng: np.random.Generator) -> np.ndarray:
    a = 2 * rng.integers(0, 2, size=spec.num_symbols) - 1
    b = 2 * rng.integers(0, 2, size=spec.num_symbols) - 1
    sps = spec.samples_per_symbol
    taps = rrc_pulse(spec.rolloff, PULSE_SPAN_SYMBOLS, sps)
    i_arm = _shaped_train(a.astype(np.complex128), taps, sps, spec.num_samples)
    q_arm = _shaped_train(b.astype(np.complex128), taps, sps, spec.num_samples, shift=sps // 2)
    return math.sqrt(sps / 2.0) * (i_arm + 1j * q_arm)


def _synthesize_msk(spec: SignalSpec, rng: np.random.Generator) -> np.ndarray:
    # Half-sine quadrature decomposition: each arm holds its bit for two
    # symbol periods under a half-cosine window, arms offset by one symbol
    # period, so bits alternate between arms at the symbol rate.  Window
    # edges coincide with the zeros of the weighting, making the phase
    # continuous and the envelope exactly constant.
    sps = spec.samples_per_symbol
    length = spec.num_samples
    k = np.arange(length)
    n_a = (length - 1 + sps) // (2 * sps) + 1
    n_b = (length - 1) // (2 * sps) + 1
    a = 2 * rng.integers(0, 2, size=n_a) - 1
    b = 2 * rng.integers(0, 2, size=n_b) - 1
    phase = np.pi * k / (2.0 * sps)
    i_arm = a[(k + sps) // (2 * sps)] * np.cos(phase)
    q_arm = b[k // (2 * sps)] * np.sin(phase)
    return i_arm + 1j * q_arm


def synthesize(spec: SignalSpec, symbols: np.ndarray | None = None) -> ComplexSignal:
    """Generate the analytic signal for `spec` at its Nyquist rate.

    `symbols` is a diagnostic hook for the linearly modulated schemes: an
    array of 1-based constellation indices replacing the random draw.
    Edge transients of the finite shaping filter are retained.
    """
    rng = np.random.default_rng(spec.seed)
    if spec.scheme in _MPSK_ORDER:
        baseband = _synthesize_mpsk(spec, rng, symbols)
    elif spec.scheme is ModulationScheme.OQPSK:
        if symbols is not None:
            raise ValueError("symbol override is only supported for BPSK/QPSK/8PSK")
        baseband = _synthesize_oqpsk(spec, rng)
    elif spec.scheme is ModulationScheme.MSK:
        if symbols is not None:
            raise ValueError("symbol override is only supported for BPSK/QPSK/8PSK")
        baseband = _synthesize_msk(spec, rng)
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unsupported scheme {spec.scheme}")

    k = np.arange(spec.num_samples)
    carrier = np.exp(2j * np.pi * spec.carrier_hz * k / spec.nyquist_rate_hz)
    return ComplexSignal(spec.amplitude * baseband * carrier, spec.nyquist_rate_hz)


def add_awgn(signal: ComplexSignal, snr_db: float, seed: int) -> ComplexSignal:
    """Add circularly symmetric complex white Gaussian noise at `snr_db`.

    ``snr_db = inf`` is the noiseless sentinel and returns the signal
    unchanged.  SNR is measured against the empirical mean power of
    `signal`; a zero signal with finite SNR is treated as noise-only
    (unit noise power).
    """
    if math.isinf(snr_db) and snr_db > 0:
        return ComplexSignal(signal.samples.copy(), signal.rate_hz)
    if not math.isfinite(snr_db):
        raise ValueError(f"snr_db must be finite or +inf, got {snr_db}")
    power = float(np.mean(np.abs(signal.samples) ** 2))
    if power == 0.0:
        power = 1.0
    sigma2 = power * 10.0 ** (-snr_db / 10.0)
    rng = np.random.default_rng(seed)
    parts = rng.standard_normal((2, len(signal)))
    noise = np.sqrt(sigma2 / 2.0) * (parts[0] + 1j * parts[1])
    return ComplexSignal(signal.samples + noise, signal.rate_hz)
