"""Hamilton equations of the trial families, integrated in the Cartesian chart.

With canonical pairs (J_i, phi_i) obeying ``dphi/dt = -dH/dJ`` and
``dJ/dt = dH/dphi``, the chart ``Q + iP = sqrt(2J) exp(i phi)`` satisfies
``dQ/dt = dH/dP`` and ``dP/dt = -dH/dQ``.  The chart is regular at J = 0,
where every benchmark starts its non-Gaussian pairs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import NormalizationError, StepFailure
from .hamiltonian import GRADIENT_STEP, QuarticModel, energy_cartesian, gradient
from .trials import CanonicalPoint, Family, states_from_cartesian

__all__ = ["Trajectory", "integrate", "sample_times", "RTOL", "ATOL", "ENERGY_DRIFT_TOL"]

log = logging.getLogger(__name__)

RTOL = 1e-10
ATOL = 1e-10
ENERGY_DRIFT_TOL = 1e-6


def sample_times(t_end: float, dt_out: float) -> np.ndarray:
    n = int(round(t_end / dt_out))
    if n < 1 or not np.isclose(n * dt_out, t_end, rtol=0, atol=1e-9 * max(1.0, t_end)):
        raise ValueError(f"t_end={t_end} is not a multiple of dt_out={dt_out}")
    return np.linspace(0.0, t_end, n + 1)


@dataclass(frozen=True)
class Trajectory:
    family: Family
    times: np.ndarray
    y: np.ndarray  # (T, 2 dof) Cartesian samples, [Q..., P...]
    energies: np.ndarray
    nfev: int = 0

    @property
    def J(self) -> np.ndarray:
        n = self.family.dof
        return 0.5 * (self.y[:, :n] ** 2 + self.y[:, n:] ** 2)

    @property
    def phi(self) -> np.ndarray:
        """Angles, unwrapped along the trajectory."""
        n = self.family.dof
        return np.unwrap(np.arctan2(self.y[:, n:], self.y[:, :n]), axis=0)

    @property
    def points(self) -> list[CanonicalPoint]:
        return [CanonicalPoint(J, phi) for J, phi in zip(self.J, self.phi)]

    @property
    def energy_drift(self) -> float:
        e0 = self.energies[0]
        return float(np.max(np.abs(self.energies - e0)) / max(1.0, abs(e0)))

    def states(self, n_max: int) -> np.ndarray:
        """Fock amplitudes at every sample, shape (n_max+1, T)."""
        return states_from_cartesian(self.family, self.y, n_max)


def integrate(
    model: QuarticModel,
    family,
    initial: CanonicalPoint,
    t_end: float,
    dt_out: float,
    rtol: float = RTOL,
    atol: float = ATOL,
    frozen=(),
    h: float = GRADIENT_STEP,
) -> Trajectory:
    """Integrate the Hamilton equations with adaptive Dormand-Prince 5(4).

    Parameters
    ----------
    frozen : iterable of int
        Zero-based indices of canonical pairs held fixed (their time
        derivatives are set to zero).

    Raises
    ------
    NormalizationError
        An F2/F3 trajectory reached sum |c_m|^2 > 1.
    StepFailure
        The integrator failed to meet its tolerance.
    """
    family = Family.parse(family)
    if t_end <= 0 or dt_out <= 0:
        raise ValueError("t_end and dt_out must be positive")
    times = sample_times(t_end, dt_out)
    n = family.dof
    mask = np.ones(2 * n)
    for i in frozen:
        mask[i] = mask[n + i] = 0.0

    def rhs(_t, y):
        g = gradient(model, family, y, h)
        return mask * np.concatenate([g[n:], -g[:n]])

    y0 = initial.flat()
    try:
        sol = solve_ivp(rhs, (0.0, times[-1]), y0, method="RK45", t_eval=times, rtol=rtol, atol=atol)
    except NormalizationError as exc:
        raise NormalizationError(f"{family.value} trajectory left the normalizable region: {exc}") from exc
    if sol.status != 0:
        raise StepFailure(f"{family.value}: {sol.message}")
    y = sol.y.T.copy()
    y[0] = y0
    traj = Trajectory(family, times, y, energy_cartesian(model, family, y), sol.nfev)
    if traj.energy_drift > ENERGY_DRIFT_TOL:
        log.warning("%s: relative energy drift %.3e exceeds %.0e", family.value, traj.energy_drift, ENERGY_DRIFT_TOL)
    return traj
