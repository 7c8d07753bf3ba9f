"""Sparse spectral recovery from gathered samples via l1 minimization.

Model: measurements y = gather(idft(f)) where f is the (unnormalized
forward-)DFT coefficient vector of the full-length signal and gather
selects the planned sample instants.  Recovery solves

    minimize ||f||_1  subject to  gather(idft(f)) = y
                       (or ||gather(idft(f)) - y||_2 <= noise_eps)

with a matrix-free alternating-direction (Douglas-Rachford family)
iteration.  Both operators cost one FFT each, and because the rows of
the measurement operator are orthogonal scaled DFT rows (A A^H = I/L),
the consistency projection is available in closed form, so every
iteration is O(L log L).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .nonlinear import SpectrumEstimate
from .sensing import MeasurementPlan

__all__ = [
    "SolverConfig",
    "RecoveryReport",
    "forward_operator",
    "adjoint_operator",
    "reconstruct",
]

_TINY = np.finfo(np.float64).tiny


@dataclass(frozen=True)
class SolverConfig:
    """Stopping and penalty policy for the splitting iteration.

    Tolerances are relative.  ``noise_eps`` is an absolute l2 slack on
    the measurement fit; 0 means equality-constrained.  ``penalty`` is
    the initial coupling weight; it is self-tuned during the run by
    primal/dual residual balancing (factor-2 steps, clamped to
    [1e-4, 1e4]).
    """

    max_iters: int = 2000
    primal_tol: float = 1e-6
    dual_tol: float = 1e-6
    noise_eps: float = 0.0
    penalty: float = 1.0

    def __post_init__(self) -> None:
        if not (isinstance(self.max_iters, int) and self.max_iters >= 1):
            raise ValueError(f"max_iters must be a positive integer, got {self.max_iters}")
        for name in ("primal_tol", "dual_tol"):
            val = getattr(self, name)
            if not (val > 0 and math.isfinite(val)):
                raise ValueError(f"{name} must be finite and > 0, got {val}")
        if not (self.noise_eps >= 0 and math.isfinite(self.noise_eps)):
            raise ValueError(f"noise_eps must be finite and >= 0, got {self.noise_eps}")
        if not (self.penalty > 0 and math.isfinite(self.penalty)):
            raise ValueError(f"penalty must be finite and > 0, got {self.penalty}")


@dataclass(frozen=True, eq=False)
class RecoveryReport:
    """Solution plus convergence diagnostics of one reconstruction."""

    spectrum: SpectrumEstimate
    iterations: int
    final_primal_residual: float
    final_dual_residual: float
    converged: bool
    primal_history: tuple[float, ...] | None = None
    dual_history: tuple[float, ...] | None = None


def forward_operator(coeffs: np.ndarray, plan: MeasurementPlan) -> np.ndarray:
    """Synthesize samples from DFT coefficients, then gather the plan."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.shape != (plan.ambient_len,):
        raise ValueError(f"coeffs must have shape ({plan.ambient_len},), got {coeffs.shape}")
    return np.fft.ifft(coeffs)[plan.indices]


def adjoint_operator(measurements: np.ndarray, plan: MeasurementPlan) -> np.ndarray:
    """Exact adjoint of forward_operator: scatter, forward DFT, 1/L."""
    measurements = np.asarray(measurements, dtype=np.complex128)
    if measurements.shape != (plan.num_measurements,):
        raise ValueError(
            f"measurements must have shape ({plan.num_measurements},), got {measurements.shape}"
        )
    full = np.zeros(plan.ambient_len, dtype=np.complex128)
    full[plan.indices] = measurements
    return np.fft.fft(full) / plan.ambient_len


def _soft_threshold(values: np.ndarray, amount: float) -> np.ndarray:
    """Shrink complex magnitudes by `amount`, preserving phases."""
    mags = np.abs(values)
    scale = np.maximum(1.0 - amount / np.maximum(mags, _TINY), 0.0)
    return values * scale


def reconstruct(
    measurements: np.ndarray,
    plan: MeasurementPlan,
    config: SolverConfig = SolverConfig(),
    *,
    rate_hz: float = 1.0,
    order: int = 1,
    keep_history: bool = False,
) -> RecoveryReport:
    """Solve the l1 program for the planned measurements.

    Splitting: f-update projects onto the measurement-consistency set
    (closed form because A A^H = I/L), z-update is the complex soft
    threshold, followed by the scaled dual ascent.  The returned
    spectrum is the projected (measurement-consistent) iterate.  The
    whole run is normalized by ||y||, making the result exactly
    equivariant under complex scaling of the input.

    Non-convergence within max_iters is reported, not raised.
    """
    y = np.asarray(measurements, dtype=np.complex128)
    if y.shape != (plan.num_measurements,):
        raise ValueError(
            f"measurements must have shape ({plan.num_measurements},), got {y.shape}"
        )
    if not np.all(np.isfinite(y.view(np.float64))):
        raise ValueError("measurements must be finite")

    ambient = plan.ambient_len
    idx = plan.indices
    scale = float(np.linalg.norm(y))
    if scale == 0.0:
        scale = 1.0
    y_unit = y / scale
    eps = config.noise_eps / scale
    rho = config.penalty

    def project(vec: np.ndarray) -> np.ndarray:
        residual = np.fft.ifft(vec)[idx] - y_unit
        if eps > 0.0:
            res_norm = float(np.linalg.norm(residual))
            if res_norm <= eps:
                return vec
            residual *= 1.0 - eps / res_norm
        scattered = np.zeros(ambient, dtype=np.complex128)
        scattered[idx] = residual
        # A^H (A A^H)^{-1} r == L * A^H r == fft(scatter(r))
        return vec - np.fft.fft(scattered)

    x = np.zeros(ambient, dtype=np.complex128)
    z = np.zeros(ambient, dtype=np.complex128)
    u = np.zeros(ambient, dtype=np.complex128)

    primal_hist: list[float] = []
    dual_hist: list[float] = []
    primal = math.inf
    dual = math.inf
    converged = False
    iterations = 0

    for iteration in range(1, config.max_iters + 1):
        iterations = iteration
        x = project(z - u)
        z_prev = z
        z = _soft_threshold(x + u, 1.0 / rho)
        u = u + x - z

        x_norm = float(np.linalg.norm(x))
        z_norm = float(np.linalg.norm(z))
        u_norm = float(np.linalg.norm(u))
        primal = float(np.linalg.norm(x - z)) / max(x_norm, z_norm, _TINY)
        dual = float(np.linalg.norm(z - z_prev)) / max(u_norm, _TINY)
        if keep_history:
            primal_hist.append(primal)
            dual_hist.append(dual)

        if primal <= config.primal_tol and dual <= config.dual_tol:
            converged = True
            break

        # Residual balancing keeps the two residuals within an order of
        # magnitude of each other; the scaled dual must shrink/grow with
        # the penalty.
        if iteration % 10 == 0:
            new_rho = rho
            if primal > 10.0 * dual:
                new_rho = min(2.0 * rho, 1e4)
            elif dual > 10.0 * primal:
                new_rho = max(rho / 2.0, 1e-4)
            if new_rho != rho:
                u = u * (rho / new_rho)
                rho = new_rho

    spectrum = SpectrumEstimate(scale * x, rate_hz, order)
    return RecoveryReport(
        spectrum=spectrum,
        iterations=iterations,
        final_primal_residual=primal,
        final_dual_residual=dual,
        converged=converged,
        primal_history=tuple(primal_hist) if keep_history else None,
        dual_history=tuple(dual_hist) if keep_history else None,
    )
