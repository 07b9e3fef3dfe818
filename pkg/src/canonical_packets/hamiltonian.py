"""Quartic model H = p^2/2 + a x^2/2 + lambda x^4/4 and its classical counterpart.

The classical Hamiltonian of a trial family is the expectation value
<psi|H|psi> viewed as a function of the canonical coordinates.  Two
evaluation routes exist:

* :func:`evaluate` builds the full Fock vector and sandwiches the cached
  Hamiltonian matrix.  Slow, but obviously correct.
* :func:`energy_cartesian` works in the squeezed, displaced frame where
  ``a -> alpha + mu a + nu a^dag``; then ``<H> = |P xi|^2/2 + a|X xi|^2/2 +
  lambda|X^2 xi|^2/4`` on the short vector |xi>, with no truncation error.
  This is what the integrator uses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .fock import FockVector, Operator, position_momentum
from .trials import CanonicalPoint, build_state, frame_parameters

__all__ = ["QuarticModel", "evaluate", "energy_cartesian", "gradient", "hamiltonian_vector_field"]

GRADIENT_STEP = 1e-5
_PAD = 4


@dataclass(frozen=True)
class QuarticModel:
    a: float = -1.0
    lam: float = 1.0
    n_max: int = 127
    H: Operator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # Build in a slightly larger basis so x^4 is the exact projection of
        # the untruncated operator onto |0>..|n_max>.
        x, p = position_momentum(self.n_max + _PAD)
        x, p = x.entries, p.entries
        x2 = x @ x
        h = 0.5 * (p @ p) + 0.5 * self.a * x2 + 0.25 * self.lam * (x2 @ x2)
        h = h[: self.n_max + 1, : self.n_max + 1]
        h = 0.5 * (h + h.conj().T)
        h.flags.writeable = False
        object.__setattr__(self, "H", Operator(h, hermitian=True))

    def expectation(self, psi: FockVector) -> float:
        """<psi|H|psi> after padding ``psi`` to the model cutoff."""
        if psi.n_max < self.n_max:
            psi = psi.padded(self.n_max)
        value = np.vdot(psi.amps, self.H.entries @ psi.amps)
        assert abs(value.imag) < 1e-10, value
        return float(value.real)


def evaluate(model: QuarticModel, family, pt: CanonicalPoint) -> float:
    """Classical Hamiltonian by full Fock-space evaluation."""
    return model.expectation(build_state(family, pt, model.n_max))


def _lower(v, sq):
    out = np.zeros_like(v)
    out[:, :-1] = sq[1:] * v[:, 1:]
    return out


def _raise(v, sq):
    out = np.zeros_like(v)
    out[:, 1:] = sq[1:] * v[:, :-1]
    return out


def energy_cartesian(model: QuarticModel, family, y) -> np.ndarray | float:
    """Classical Hamiltonian at Cartesian point(s) ``y`` (shape (2n,) or (B, 2n))."""
    single = np.ndim(y) == 1
    frame = frame_parameters(family, y)
    batch, L = frame.xi.shape
    v = np.zeros((batch, L + _PAD), dtype=complex)
    v[:, :L] = frame.xi
    sq = np.sqrt(np.arange(L + _PAD, dtype=float))
    alpha = frame.alpha[:, None]
    mu = frame.mu[:, None]
    nu = frame.nu[:, None]
    s2 = math.sqrt(2.0)

    # X = (A + A^dag)/sqrt2,  P = i(A^dag - A)/sqrt2,  A = alpha + mu a + nu a^dag
    cx = (mu + nu.conj()) / s2
    x0 = s2 * alpha.real

    def X(w):
        return x0 * w + cx * _lower(w, sq) + cx.conj() * _raise(w, sq)

    lo, hi = _lower(v, sq), _raise(v, sq)
    Pv = 1j * ((alpha.conj() - alpha) * v + (nu.conj() - mu) * lo + (mu - nu) * hi) / s2
    Xv = x0 * v + cx * lo + cx.conj() * hi
    XXv = X(Xv)
    norm2 = lambda w: np.sum(w.real**2 + w.imag**2, axis=1)
    e = 0.5 * norm2(Pv) + 0.5 * model.a * norm2(Xv) + 0.25 * model.lam * norm2(XXv)
    return float(e[0]) if single else e


def gradient(model: QuarticModel, family, y, h: float = GRADIENT_STEP, order: int = 2) -> np.ndarray:
    """Central-difference gradient in the Cartesian chart, same layout as ``y``.

    Step for coordinate k is ``h * max(1, |y_k|)``.  ``order=4`` uses the
    five-point stencil (Richardson-extrapolated central difference).
    """
    y = np.asarray(y, dtype=float)
    steps = h * np.maximum(1.0, np.abs(y))
    eye = np.diag(steps)
    if order == 2:
        stencil = np.concatenate([y + eye, y - eye])
        e = energy_cartesian(model, family, stencil)
        n = y.size
        return (e[:n] - e[n:]) / (2.0 * steps)
    if order == 4:
        stencil = np.concatenate([y + 2 * eye, y + eye, y - eye, y - 2 * eye])
        e = energy_cartesian(model, family, stencil).reshape(4, y.size)
        return (-e[0] + 8.0 * e[1] - 8.0 * e[2] + e[3]) / (12.0 * steps)
    raise ValueError(f"unsupported order {order}")


def hamiltonian_vector_field(model: QuarticModel, family, y, h: float = GRADIENT_STEP) -> np.ndarray:
    """dy/dt for y = [Q, P]: dQ/dt = dH/dP, dP/dt = -dH/dQ."""
    g = gradient(model, family, y, h)
    n = g.size // 2
    return np.concatenate([g[n:], -g[:n]])

