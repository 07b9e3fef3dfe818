"""Overlaps, mean position and time averages."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from .errors import DimensionMismatch, EmptySeriesError
from .fock import FockVector, position_momentum

__all__ = ["ObservableSeries", "squared_overlap", "squared_overlaps", "mean_x", "mean_x_columns", "time_average"]


def _pad_rows(a: np.ndarray, rows: int) -> np.ndarray:
    if a.shape[0] == rows:
        return a
    out = np.zeros((rows,) + a.shape[1:], dtype=complex)
    out[: a.shape[0]] = a
    return out


def squared_overlap(psi_exact: FockVector, psi_trial: FockVector) -> float:
    """|<exact|trial>|^2, zero-padding the shorter vector."""
    rows = max(psi_exact.n_max, psi_trial.n_max) + 1
    u, v = _pad_rows(psi_exact.amps, rows), _pad_rows(psi_trial.amps, rows)
    return float(abs(np.vdot(u, v)) ** 2)


def squared_overlaps(exact_cols: np.ndarray, trial_cols: np.ndarray) -> np.ndarray:
    """Column-wise |<exact_k|trial_k>|^2; the trial basis may be smaller."""
    if exact_cols.shape[1] != trial_cols.shape[1]:
        raise DimensionMismatch(f"{exact_cols.shape[1]} exact vs {trial_cols.shape[1]} trial samples")
    if trial_cols.shape[0] > exact_cols.shape[0]:
        raise DimensionMismatch("trial basis larger than exact basis")
    ov = np.einsum("nt,nt->t", exact_cols[: trial_cols.shape[0]].conj(), trial_cols)
    return ov.real**2 + ov.imag**2


def mean_x_columns(cols: np.ndarray) -> np.ndarray:
    x, _ = position_momentum(cols.shape[0] - 1)
    return np.einsum("nt,nt->t", cols.conj(), x.entries @ cols).real


def mean_x(psi: FockVector) -> float:
    return float(mean_x_columns(psi.amps[:, None])[0])


def time_average(series, times) -> float:
    """Trapezoidal mean of a uniformly sampled series over [t_0, t_end]."""
    series = np.asarray(series, dtype=float)
    times = np.asarray(times, dtype=float)
    if series.size == 0:
        raise EmptySeriesError("cannot average an empty series")
    if series.shape != times.shape:
        raise DimensionMismatch(f"{series.shape} values vs {times.shape} times")
    if series.size == 1:
        return float(series[0])
    span = times[-1] - times[0]
    return float(trapezoid(series, times) / span)


@dataclass
class ObservableSeries:
    times: np.ndarray
    W: dict[str, np.ndarray] = field(default_factory=dict)
    x_mean: dict[str, np.ndarray] = field(default_factory=dict)  # includes "exact"

    @property
    def W_bar(self) -> dict[str, float]:
        return {k: time_average(w, self.times) for k, w in self.W.items()}
