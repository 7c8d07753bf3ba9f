"""Shared helpers: small-scale signal construction at the default radio
parameters (500 Hz carrier, 800 Baud, 6400 Hz sampling)."""

import numpy as np
import pytest

from pskamr import ComplexSignal, ModulationScheme, SignalSpec, synthesize

DESK_SYMBOLS = 256  # 2048 samples: fast enough for per-test synthesis


def desk_spec(scheme, seed=0, **overrides):
    kwargs = dict(num_symbols=DESK_SYMBOLS, seed=seed)
    kwargs.update(overrides)
    return SignalSpec(scheme=scheme, **kwargs)


def desk_signal(scheme, seed=0, **overrides):
    return synthesize(desk_spec(scheme, seed=seed, **overrides))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_signal(seed, length=128, rate_hz=1.0):
    gen = np.random.default_rng(seed)
    samples = gen.standard_normal(length) + 1j * gen.standard_normal(length)
    return ComplexSignal(samples=samples, rate_hz=rate_hz)


ALL_SCHEMES = tuple(ModulationScheme)
