"""Nonuniform compressive sampling: random sample-index selection.

A measurement plan picks M of the L Nyquist-grid sample instants
uniformly at random (without replacement).  Measuring is a pure gather,
so it commutes exactly with any elementwise transform of the samples.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .waveforms import ComplexSignal

__all__ = ["MeasurementPlan", "make_plan", "apply_plan", "save_plan", "load_plan"]


@dataclass(frozen=True, eq=False)
class MeasurementPlan:
    """Sorted, duplicate-free subset of the ambient sample grid."""

    indices: np.ndarray
    ambient_len: int
    seed: int

    def __post_init__(self) -> None:
        indices = np.ascontiguousarray(self.indices, dtype=np.int64)
        if indices.ndim != 1 or indices.size == 0:
            raise ValueError("indices must be a nonempty 1-D array")
        if not (isinstance(self.ambient_len, int) and self.ambient_len >= 1):
            raise ValueError(f"ambient_len must be a positive integer, got {self.ambient_len}")
        if indices[0] < 0 or indices[-1] >= self.ambient_len:
            raise ValueError("indices must lie in [0, ambient_len)")
        if np.any(np.diff(indices) <= 0):
            raise ValueError("indices must be strictly increasing")
        object.__setattr__(self, "indices", indices)

    @property
    def num_measurements(self) -> int:
        return len(self.indices)


def make_plan(ambient_len: int, num_measurements: int, seed: int) -> MeasurementPlan:
    """Draw `num_measurements` distinct indices from [0, ambient_len)."""
    if not (isinstance(ambient_len, int) and ambient_len >= 1):
        raise ValueError(f"ambient_len must be a positive integer, got {ambient_len}")
    if not (isinstance(num_measurements, int) and 1 <= num_measurements <= ambient_len):
        raise ValueError(
            f"num_measurements must lie in [1, {ambient_len}], got {num_measurements}"
        )
    rng = np.random.default_rng(seed)
    indices = np.sort(rng.choice(ambient_len, size=num_measurements, replace=False))
    return MeasurementPlan(indices, ambient_len, seed)


def apply_plan(plan: MeasurementPlan, signal: ComplexSignal) -> np.ndarray:
    """Gather the planned sample instants.  Pure selection, no arithmetic."""
    if len(signal) != plan.ambient_len:
        raise ValueError(
            f"signal length {len(signal)} does not match plan ambient_len {plan.ambient_len}"
        )
    return signal.samples[plan.indices]


def save_plan(plan: MeasurementPlan, path: str | os.PathLike) -> None:
    """Write a plan as text: header `ambient_len M seed`, one index per line."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{plan.ambient_len} {plan.num_measurements} {plan.seed}\n")
        for idx in plan.indices:
            fh.write(f"{int(idx)}\n")


def load_plan(path: str | os.PathLike) -> MeasurementPlan:
    """Read a plan written by save_plan."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 3:
            raise ValueError(f"{path}: expected header 'ambient_len M seed'")
        ambient_len, num_meas, seed = (int(tok) for tok in header)
        indices = np.array([int(line) for line in fh if line.strip()], dtype=np.int64)
    if len(indices) != num_meas:
        raise ValueError(f"{path}: header promises {num_meas} indices, found {len(indices)}")
    return MeasurementPlan(indices, ambient_len, seed)
