"""Spectral line detection and peak counting.

The NPT spectrum of a PSK-family signal contains a small number of
narrow lines standing on broadband modulation humps (dense path) or on
reconstruction speckle (compressive path).  Peak detection here works on
two views of the same data: the spectrum being analysed supplies the
candidate locations, while a *reference* magnitude vector — the spectrum
itself on the dense path, the backprojected measurement spectrum on the
compressive path — supplies unshrunk amplitudes and local statistics.

A candidate survives if it sits above the deepest significant gap of the
reference-magnitude ranking, or if it dominates its local neighbourhood
outright; weak satellites are additionally required to appear as mirror
pairs around the dominant line, which is how NPT harmonics actually
present.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .nonlinear import SpectrumEstimate, VALID_ORDERS, dense_spectrum, npt
from .recovery import RecoveryReport, SolverConfig, reconstruct
from .sensing import MeasurementPlan
from .waveforms import ComplexSignal

__all__ = [
    "PeakPolicy",
    "Peak",
    "PeakSet",
    "PeakCounts",
    "SpectralFeatures",
    "detect_peaks",
    "extract_features",
    "count_peaks",
]

_CANDIDATE_SCAN = 200
_CANDIDATE_CAP = 64


@dataclass(frozen=True)
class PeakPolicy:
    """Knobs controlling how spectral lines are told apart from clutter.

    median_factor / dominance_ratio set the absolute candidate floor;
    gap_factor is the minimum magnitude ratio recognised as a ranking
    elbow; contrast_factor (admission) and contrast_floor (retention)
    act on the ratio of a peak to the local median of the reference
    spectrum; weak_fraction and strong_fraction split candidates into
    those that must justify themselves locally and those accepted on
    magnitude alone.
    """

    median_factor: float = 10.0
    dominance_ratio: float = 0.03
    cluster_width_bins: int = 2
    max_peaks: int = 5
    gap_factor: float = 1.5
    contrast_factor: float = 6.0
    contrast_floor: float = 5.0
    contrast_window_bins: int = 32
    weak_fraction: float = 0.08
    strong_fraction: float = 0.25

    def __post_init__(self) -> None:
        if self.median_factor <= 0 or self.dominance_ratio <= 0:
            raise ValueError("threshold factors must be positive")
        if not 0 < self.dominance_ratio < 1:
            raise ValueError("dominance_ratio must lie in (0, 1)")
        if self.cluster_width_bins < 1:
            raise ValueError("cluster_width_bins must be at least 1")
        if self.max_peaks < 1:
            raise ValueError("max_peaks must be at least 1")
        if self.gap_factor <= 1.0:
            raise ValueError("gap_factor must exceed 1")
        if self.contrast_factor < self.contrast_floor:
            raise ValueError("contrast_factor must be >= contrast_floor")
        if self.contrast_floor <= 1.0:
            raise ValueError("contrast_floor must exceed 1")
        if self.contrast_window_bins <= self.cluster_width_bins:
            raise ValueError("contrast window must exceed cluster width")
        if not 0 < self.weak_fraction <= self.strong_fraction < 1:
            raise ValueError("need 0 < weak_fraction <= strong_fraction < 1")


@dataclass(frozen=True)
class Peak:
    """One detected spectral line."""

    bin_index: int
    freq_hz: float
    magnitude: float


@dataclass(frozen=True)
class PeakSet:
    """Detected lines for one transform order, strongest first."""

    peaks: tuple[Peak, ...]
    order: int
    num_bins: int
    rate_hz: float

    @property
    def count(self) -> int:
        return len(self.peaks)

    def frequencies(self) -> np.ndarray:
        """Peak frequencies in Hz, ascending."""
        return np.sort(np.array([p.freq_hz for p in self.peaks]))


@dataclass(frozen=True)
class PeakCounts:
    """Line counts per transform order; None when an order was skipped."""

    order2: Optional[int] = None
    order4: Optional[int] = None
    order8: Optional[int] = None

    def as_dict(self) -> dict[int, Optional[int]]:
        return {2: self.order2, 4: self.order4, 8: self.order8}


@dataclass(frozen=True)
class SpectralFeatures:
    """Peak sets per transform order plus solver diagnostics."""

    peak_sets: Mapping[int, Optional[PeakSet]]
    rate_hz: float
    reports: Mapping[int, Optional[RecoveryReport]] = field(default_factory=dict)

    @property
    def counts(self) -> PeakCounts:
        def c(order: int) -> Optional[int]:
            ps = self.peak_sets.get(order)
            return None if ps is None else ps.count

        return PeakCounts(order2=c(2), order4=c(4), order8=c(8))


def _circular_window(center: int, half_width: int, length: int) -> np.ndarray:
    return (center + np.arange(-half_width, half_width + 1)) % length


def _candidate_bins(mags: np.ndarray, tau: float, width: int) -> list[int]:
    """Bins that are local maxima over +-width and clear the floor."""
    length = len(mags)
    out: list[int] = []
    for b in np.argsort(mags)[::-1][:_CANDIDATE_SCAN]:
        if mags[b] < tau or len(out) >= _CANDIDATE_CAP:
            break
        if mags[b] <= 0:
            break
        window = _circular_window(int(b), width, length)
        if mags[b] >= mags[window].max():
            out.append(int(b))
    return out


def _local_contrast(ref: np.ndarray, center: int, value: float,
                    window: int, guard: int) -> float:
    length = len(ref)
    offsets = np.concatenate(
        [np.arange(-window, -guard), np.arange(guard + 1, window + 1)]
    )
    floor = float(np.median(ref[(center + offsets) % length]))
    return value / max(floor, 1e-300)


def detect_peaks(
    spectrum: SpectrumEstimate,
    policy: Optional[PeakPolicy] = None,
    reference: Optional[np.ndarray] = None,
) -> PeakSet:
    """Find the dominant spectral lines of one NPT spectrum.

    ``reference`` supplies the magnitudes used for ranking, local
    contrast, and pairing decisions; it defaults to the spectrum itself,
    which is the right choice on the dense path.  On the compressive
    path pass the backprojected measurement spectrum so that candidate
    amplitudes are judged free of l1 shrinkage and speckle.
    """
    policy = policy or PeakPolicy()
    mags = np.abs(spectrum.coeffs)
    length = len(mags)
    if reference is None:
        ref = mags
    else:
        ref = np.abs(np.asarray(reference))
        if ref.shape != mags.shape:
            raise ValueError("reference must match the spectrum length")

    empty = PeakSet(peaks=(), order=spectrum.order,
                    num_bins=length, rate_hz=spectrum.rate_hz)
    peak_max = mags.max() if length else 0.0
    if peak_max <= 0 or not np.isfinite(peak_max):
        if not np.isfinite(peak_max):
            raise ValueError("spectrum contains non-finite magnitudes")
        return empty

    width = policy.cluster_width_bins
    tau = max(policy.median_factor * float(np.median(mags)),
              policy.dominance_ratio * float(peak_max))
    cand = _candidate_bins(mags, tau, width)
    if not cand:
        return empty

    cand_arr = np.array(cand)
    dval = np.array(
        [float(ref[_circular_window(b, width, length)].max()) for b in cand_arr]
    )
    order = np.lexsort((cand_arr, -dval))
    cand_arr, dval = cand_arr[order], dval[order]

    outside = np.ones(length, dtype=bool)
    for b in cand_arr:
        outside[_circular_window(int(b), width, length)] = False
    d_out = float(ref[outside].max()) if outside.any() else 0.0

    n = len(cand_arr)
    contrast = np.array(
        [
            _local_contrast(ref, int(cand_arr[i]), dval[i],
                            policy.contrast_window_bins, width)
            for i in range(n)
        ]
    )
    d_max = dval[0]

    # Deepest significant gap in the ranking.
    ks = 0
    for k in range(1, min(policy.max_peaks, n) + 1):
        denom = dval[k] if k < n else d_out
        if dval[k - 1] / max(denom, 1e-300) >= policy.gap_factor:
            ks = k
    # Weak low-contrast ranks at the bottom of the prefix are hump
    # shoulders, not lines; peel them off.
    while (
        ks > 0
        and dval[ks - 1] < policy.weak_fraction * d_max
        and contrast[ks - 1] < policy.contrast_floor
    ):
        ks -= 1

    accepted = set(range(ks))
    for i in range(n):
        if contrast[i] >= policy.contrast_factor:
            accepted.add(i)

    # Weak satellites must occur as mirror pairs around the dominant
    # line: complete the pair when the partner shows adequate contrast,
    # otherwise drop contrast-only admissions as unpaired clutter.
    b0 = int(cand_arr[0])

    def near(bin_a: int, bin_b: int) -> bool:
        delta = (bin_a - bin_b) % length
        return min(delta, length - delta) <= 2 * width

    for i in sorted(accepted, key=lambda i: -dval[i]):
        if i == 0 or dval[i] >= policy.strong_fraction * d_max:
            continue
        if near(int(cand_arr[i]), b0):
            continue
        mirror = (2 * b0 - int(cand_arr[i])) % length
        partner = next(
            (j for j in range(n) if j != i and near(int(cand_arr[j]), mirror)),
            None,
        )
        if partner is not None and contrast[partner] >= policy.contrast_floor:
            accepted.add(partner)
        elif partner is None or partner not in accepted:
            if i in accepted and contrast[i] >= policy.contrast_factor and i >= ks:
                accepted.discard(i)

    chosen = sorted(accepted, key=lambda i: (-dval[i], cand_arr[i]))
    chosen = chosen[: policy.max_peaks]
    peaks = tuple(
        Peak(
            bin_index=int(cand_arr[i]),
            freq_hz=float(cand_arr[i]) * spectrum.rate_hz / length,
            magnitude=float(mags[cand_arr[i]]),
        )
        for i in chosen
    )
    return PeakSet(peaks=peaks, order=spectrum.order,
                   num_bins=length, rate_hz=spectrum.rate_hz)


def _backprojection(measurements: np.ndarray, plan: MeasurementPlan) -> np.ndarray:
    full = np.zeros(plan.ambient_len, dtype=np.complex128)
    full[plan.indices] = measurements
    return np.abs(np.fft.fft(full))


def extract_features(
    signal: ComplexSignal,
    *,
    plan: Optional[MeasurementPlan] = None,
    policy: Optional[PeakPolicy] = None,
    solver: Optional[SolverConfig] = None,
    orders: Sequence[int] = (2, 4, 8),
    lazy_order8: bool = True,
) -> SpectralFeatures:
    """Compute NPT peak sets for each requested transform order.

    With ``plan`` set, ``signal`` must hold the nonuniform measurements
    gathered by that plan; each order is then raised to the Nth power in
    the measurement domain (power and gather commute) and the sparse
    spectrum is recovered by basis pursuit before peak detection.
    Order 8 is skipped when a lower order already shows lines, since the
    decision tree consults it only in the all-zero branch.
    """
    policy = policy or PeakPolicy()
    solver = solver or SolverConfig()
    for order in orders:
        if order not in VALID_ORDERS:
            raise ValueError(f"unsupported transform order: {order}")
    if plan is not None and len(signal.samples) != plan.num_measurements:
        raise ValueError(
            "signal length does not match the measurement plan"
        )

    peak_sets: dict[int, Optional[PeakSet]] = {}
    reports: dict[int, Optional[RecoveryReport]] = {}
    counts_so_far: dict[int, int] = {}
    for order in orders:
        lower = [counts_so_far[o] for o in (2, 4) if o in counts_so_far]
        if order == 8 and lazy_order8 and lower and any(c != 0 for c in lower):
            peak_sets[8] = None
            reports[8] = None
            continue
        powered = npt(signal, order)
        if plan is None:
            estimate = dense_spectrum(powered)
            reference = None
            reports[order] = None
        else:
            report = reconstruct(
                powered.samples, plan, solver,
                rate_hz=signal.rate_hz, order=order,
            )
            estimate = report.spectrum
            reference = _backprojection(powered.samples, plan)
            reports[order] = report
        ps = detect_peaks(estimate, policy, reference=reference)
        peak_sets[order] = ps
        counts_so_far[order] = ps.count
    return SpectralFeatures(peak_sets=peak_sets, rate_hz=signal.rate_hz,
                            reports=reports)


def count_peaks(
    signal: ComplexSignal,
    *,
    plan: Optional[MeasurementPlan] = None,
    policy: Optional[PeakPolicy] = None,
    solver: Optional[SolverConfig] = None,
    orders: Sequence[int] = (2, 4, 8),
    lazy_order8: bool = True,
) -> PeakCounts:
    """Count dominant spectral lines per transform order."""
    return extract_features(
        signal, plan=plan, policy=policy, solver=solver,
        orders=orders, lazy_order8=lazy_order8,
    ).counts
