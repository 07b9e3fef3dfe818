"""Single-mode truncated Fock-space linear algebra.

Vectors live on the number states |0>, ..., |n_max>.  Units are hbar = m =
omega = 1, so that ``x = (a + a^dag)/sqrt(2)`` and ``p = i(a^dag - a)/sqrt(2)``.

Displacement and squeezing are exponentials of the truncated generators.
Both generators are rotations of a fixed real antisymmetric matrix,

    alpha a^dag - alpha* a      = R(theta)   r (a^dag - a)        R(theta)^dag
    (beta a^dag^2 - beta* a^2)/2 = R(theta/2) r (a^dag^2 - a^2)/2 R(theta/2)^dag

with ``R(theta) = exp(i theta n)``, so one cached eigendecomposition per
cutoff gives the exact matrix exponential for every complex parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, TruncationError

__all__ = [
    "FockVector",
    "Operator",
    "TAIL_THRESHOLD",
    "N_GUARD",
    "ladder",
    "position_momentum",
    "displacement",
    "squeeze",
    "apply",
    "inner",
    "displace_columns",
    "squeeze_columns",
    "tail_norm",
    "check_converged",
]

TAIL_THRESHOLD = 1e-10
N_GUARD = 8


def tail_norm(amps: np.ndarray, n_guard: int = N_GUARD) -> np.ndarray:
    """Squared weight on the top ``n_guard`` levels (column-wise for 2-D input)."""
    amps = np.asarray(amps)
    return np.sum(np.abs(amps[-n_guard:]) ** 2, axis=0)


def check_converged(amps, threshold=TAIL_THRESHOLD, n_guard=N_GUARD, what="state"):
    tail = np.max(tail_norm(amps, n_guard))
    if not tail < threshold:
        n_max = np.shape(amps)[0] - 1
        raise TruncationError(
            f"{what}: tail norm {tail:.3e} above {threshold:.1e} at n_max={n_max}"
        )


@dataclass(frozen=True)
class FockVector:
    """Amplitudes over |0>..|n_max>."""

    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim != 1 or amps.size < 2:
            raise ValueError("FockVector needs a 1-D array with at least two levels")
        object.__setattr__(self, "amps", amps)

    @classmethod
    def basis(cls, n: int, n_max: int) -> FockVector:
        amps = np.zeros(n_max + 1, dtype=complex)
        amps[n] = 1.0
        return cls(amps)

    @classmethod
    def vacuum(cls, n_max: int) -> FockVector:
        return cls.basis(0, n_max)

    @property
    def n_max(self) -> int:
        return self.amps.size - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tail_norm(self, n_guard: int = N_GUARD) -> float:
        return float(tail_norm(self.amps, n_guard))

    def is_converged(self, threshold: float = TAIL_THRESHOLD, n_guard: int = N_GUARD) -> bool:
        return self.tail_norm(n_guard) < threshold

    def padded(self, n_max: int) -> FockVector:
        """Zero-pad to a larger cutoff."""
        if n_max < self.n_max:
            raise DimensionMismatch(f"cannot pad n_max={self.n_max} down to {n_max}")
        amps = np.zeros(n_max + 1, dtype=complex)
        amps[: self.amps.size] = self.amps
        return FockVector(amps)


@dataclass(frozen=True)
class Operator:
    """Dense (n_max+1) x (n_max+1) matrix with the properties its constructor guarantees."""

    entries: np.ndarray
    hermitian: bool = False
    unitary: bool = False

    @property
    def n_max(self) -> int:
        return self.entries.shape[0] - 1

    @property
    def dag(self) -> Operator:
        return Operator(self.entries.conj().T, self.hermitian, self.unitary)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            _require_same(self.n_max, other.n_max)
            return Operator(self.entries @ other.entries)
        if isinstance(other, FockVector):
            return apply(self, other)
        return NotImplemented


def _require_same(n1: int, n2: int):
    if n1 != n2:
        raise DimensionMismatch(f"n_max mismatch: {n1} vs {n2}")


@lru_cache(maxsize=None)
def _ladder_arrays(n_max: int) -> np.ndarray:
    a = np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)
    a.flags.writeable = False
    return a


def ladder(n_max: int) -> tuple[Operator, Operator]:
    """Annihilation and creation matrices, truncated at ``n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a = _ladder_arrays(n_max).astype(complex)
    return Operator(a), Operator(a.T.copy())


def position_momentum(n_max: int) -> tuple[Operator, Operator]:
    a, ad = ladder(n_max)
    x = (a.entries + ad.entries) / np.sqrt(2.0)
    p = 1j * (ad.entries - a.entries) / np.sqrt(2.0)
    return Operator(x, hermitian=True), Operator(p, hermitian=True)


@lru_cache(maxsize=None)
def _generator_spectrum(n_max: int, which: str) -> tuple[np.ndarray, np.ndarray]:
    # i*T is hermitian for real antisymmetric T; T = -i U diag(w) U^dag.
    a = _ladder_arrays(n_max)
    if which == "displace":
        t = a.T - a
    else:
        t = 0.5 * (a.T @ a.T - a @ a)
    w, u = np.linalg.eigh(1j * t)
    w.flags.writeable = False
    u.flags.writeable = False
    return w, u


def _rotated_exp_columns(vecs, r, theta, which):
    """Apply R(theta) exp(r T) R(theta)^dag to each column of ``vecs``."""
    vecs = np.asarray(vecs, dtype=complex)
    n_max = vecs.shape[0] - 1
    w, u = _generator_spectrum(n_max, which)
    n = np.arange(n_max + 1)[:, None]
    r = np.atleast_1d(np.asarray(r, dtype=float))
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    rot = np.exp(1j * n * theta)
    out = u.conj().T @ (rot.conj() * vecs)
    out = u @ (np.exp(-1j * np.multiply.outer(w, r)) * out)
    return rot * out


def displace_columns(alpha, vecs) -> np.ndarray:
    """D(alpha_k) applied to column k of ``vecs`` (alpha may be scalar)."""
    alpha = np.asarray(alpha, dtype=complex)
    return _rotated_exp_columns(vecs, np.abs(alpha), np.angle(alpha), "displace")


def squeeze_columns(beta, vecs) -> np.ndarray:
    """S(beta_k) applied to column k of ``vecs``."""
    beta = np.asarray(beta, dtype=complex)
    return _rotated_exp_columns(vecs, np.abs(beta), 0.5 * np.angle(beta), "squeeze")


def _unitary_from_columns(fn, param, n_max: int, what: str) -> Operator:
    eye = np.eye(n_max + 1, dtype=complex)
    u = fn(param, eye)
    check_converged(u[:, 0], what=f"{what}({param}) applied to vacuum")
    return Operator(u, unitary=True)


def displacement(alpha: complex, n_max: int) -> Operator:
    """D(alpha) = exp(alpha a^dag - alpha* a).

    Raises
    ------
    TruncationError
        If D(alpha)|0> is not converged at this cutoff.
    """
    return _unitary_from_columns(displace_columns, complex(alpha), n_max, "D")


def squeeze(beta: complex, n_max: int) -> Operator:
    """S(beta) = exp(beta a^dag^2 / 2 - beta* a^2 / 2)."""
    return _unitary_from_columns(squeeze_columns, complex(beta), n_max, "S")


def apply(op: Operator, v: FockVector) -> FockVector:
    _require_same(op.n_max, v.n_max)
    return FockVector(op.entries @ v.amps)


def inner(u: FockVector, v: FockVector) -> complex:
    """<u|v>, conjugate-linear in ``u``."""
    _require_same(u.n_max, v.n_max)
    return complex(np.vdot(u.amps, v.amps))
