"""Modulation recognition from nonuniform compressive samples.

Pipeline: synthesize a PSK-family signal -> gather a random subset of
its Nyquist-grid samples -> raise the measurements to the 2nd/4th/8th
power -> reconstruct the sparse spectrum of the powered signal by l1
minimization -> count dominant spectral lines -> map the count pattern
to a modulation label and read carrier/symbol-rate estimates off the
line geometry.
"""

from .waveforms import (
    ModulationScheme,
    SignalSpec,
    ComplexSignal,
    rrc_pulse,
    synthesize,
    add_awgn,
)
from .nonlinear import SpectrumEstimate, npt, dense_spectrum, VALID_ORDERS
from .sensing import MeasurementPlan, make_plan, apply_plan, save_plan, load_plan
from .recovery import (
    SolverConfig,
    RecoveryReport,
    forward_operator,
    adjoint_operator,
    reconstruct,
)
from .features import (
    Peak,
    PeakSet,
    PeakCounts,
    PeakPolicy,
    SpectralFeatures,
    detect_peaks,
    extract_features,
    count_peaks,
)
from .classify import (
    ParameterEstimate,
    ClassificationResult,
    classify_counts,
    estimate_parameters,
    classify_features,
)
from .bench import (
    SamplingPath,
    TrialConfig,
    SweepConfig,
    CellResult,
    trial_seed,
    run_trial,
    run_sweep,
    sweep_to_csv,
    save_samples,
    load_samples,
    PRESETS,
)

__version__ = "0.1.0"
