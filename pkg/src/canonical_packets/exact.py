"""Exact Schroedinger propagation by full diagonalization of the truncated H."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .fock import FockVector, check_converged
from .hamiltonian import QuarticModel

__all__ = ["SpectralPropagator", "diagonalize", "propagate"]


@dataclass(frozen=True)
class SpectralPropagator:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    model: QuarticModel

    @property
    def n_max(self) -> int:
        return self.eigenvalues.size - 1

    def reconstruction_error(self) -> float:
        V, E = self.eigenvectors, self.eigenvalues
        return float(np.max(np.abs((V * E) @ V.conj().T - self.model.H.entries)))


def diagonalize(model: QuarticModel) -> SpectralPropagator:
    E, V = np.linalg.eigh(model.H.entries)
    return SpectralPropagator(E, V, model)


def propagate(prop: SpectralPropagator, psi0: FockVector, t) -> np.ndarray | FockVector:
    """exp(-iHt) psi0.

    Returns a :class:`FockVector` for scalar ``t`` and an array of shape
    (n_max+1, len(t)) for an array of times.
    """
    if psi0.n_max > prop.n_max:
        raise DimensionMismatch(f"state n_max={psi0.n_max} exceeds propagator n_max={prop.n_max}")
    amps = psi0.padded(prop.n_max).amps
    check_converged(amps, what="initial state in the exact basis")
    V = prop.eigenvectors
    coeffs = V.conj().T @ amps
    ts = np.asarray(t, dtype=float)
    phases = np.exp(-1j * np.multiply.outer(prop.eigenvalues, np.atleast_1d(ts)))
    out = V @ (phases * coeffs[:, None])
    return FockVector(out[:, 0]) if ts.ndim == 0 else out
