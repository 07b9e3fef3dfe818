"""Trial wave packets D(alpha) S(beta) |xi> and their canonical coordinates.

Families
--------
G   |xi> = |0>                                        2 canonical pairs
F1  |xi> = exp(-|g|^2/2) sum_m g^m / sqrt(m!) |3m>     3 pairs
F2  |xi> = c0 |0> + c1 |3>                             3 pairs
F3  |xi> = c0 |0> + c1 |3> + c2 |6>                    4 pairs

Canonical actions/angles (hbar = 1)::

    J1 = |alpha|^2                          phi1 = arg alpha
    J2 = (2 <n>_xi + 1) sinh^2|beta| / 2    phi2 = arg beta
    J3 = |g|^2            (F1)              phi3 = arg g
    J_{m+2} = |c_m|^2     (F2, F3)          phi_{m+2} = arg c_m

where ``<n>_xi`` is the mean occupation of |xi>: ``3|g|^2`` for F1 and
``3 sum_m m |c_m|^2`` for F2/F3.  The dynamics is integrated in the
Cartesian chart ``Q = sqrt(2J) cos phi``, ``P = sqrt(2J) sin phi``; a flat
Cartesian vector is laid out as ``y = [Q_1..Q_n, P_1..P_n]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NegativeActionError, NormalizationError, SingularPointError
from .fock import FockVector, check_converged, displace_columns, squeeze_columns

__all__ = [
    "Family",
    "CanonicalPoint",
    "RawParameters",
    "Frame",
    "invert_coordinates",
    "canonical_point",
    "initial_point",
    "build_state",
    "build_state_raw",
    "frame_parameters",
    "states_from_cartesian",
    "CanonicityReport",
    "canonicity_check",
    "canonicity_order",
]

_F1_TERM_CUTOFF = 1e-22


class Family(enum.Enum):
    G = "G"
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"

    @property
    def dof(self) -> int:
        return {"G": 2, "F1": 3, "F2": 3, "F3": 4}[self.value]

    @property
    def n_superposed(self) -> int:
        """M, the number of free |3m> coefficients (F2/F3 only)."""
        return {"F2": 1, "F3": 2}.get(self.value, 0)

    @classmethod
    def parse(cls, value) -> Family:
        return value if isinstance(value, cls) else cls(str(value))


@dataclass(frozen=True)
class CanonicalPoint:
    """Action-angle coordinates of one point of the extended phase space."""

    J: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        J = np.atleast_1d(np.asarray(self.J, dtype=float))
        phi = np.atleast_1d(np.asarray(self.phi, dtype=float))
        if J.shape != phi.shape or J.ndim != 1:
            raise ValueError(f"J and phi shapes differ: {J.shape} vs {phi.shape}")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "phi", phi)

    @property
    def dof(self) -> int:
        return self.J.size

    @classmethod
    def from_cartesian(cls, Q, P) -> CanonicalPoint:
        Q = np.asarray(Q, dtype=float)
        P = np.asarray(P, dtype=float)
        return cls(0.5 * (Q**2 + P**2), np.arctan2(P, Q))

    @classmethod
    def from_flat(cls, y) -> CanonicalPoint:
        y = np.asarray(y, dtype=float)
        n = y.size // 2
        return cls.from_cartesian(y[:n], y[n:])

    def cartesian(self) -> tuple[np.ndarray, np.ndarray]:
        rho = np.sqrt(2.0 * self.J)
        return rho * np.cos(self.phi), rho * np.sin(self.phi)

    def flat(self) -> np.ndarray:
        return np.concatenate(self.cartesian())


@dataclass(frozen=True)
class RawParameters:
    """Parameters of D(alpha) S(beta) |xi>.

    ``gamma`` is set for F1 only; ``c`` holds c_1..c_M for F2/F3 (c_0 is
    real and fixed by normalization).
    """

    family: Family
    alpha: complex
    beta: complex
    gamma: complex | None = None
    c: np.ndarray | None = None

    @property
    def c0(self) -> float:
        return math.sqrt(max(0.0, 1.0 - float(np.sum(np.abs(self.c) ** 2))))

    @property
    def mean_occupation_xi(self) -> float:
        if self.family is Family.F1:
            return 3.0 * abs(self.gamma) ** 2
        if self.family in (Family.F2, Family.F3):
            m = np.arange(1, self.c.size + 1)
            return 3.0 * float(np.sum(m * np.abs(self.c) ** 2))
        return 0.0

    def xi_amplitudes(self, n_max: int) -> np.ndarray:
        amps = np.zeros(n_max + 1, dtype=complex)
        if self.family is Family.G:
            amps[0] = 1.0
        elif self.family is Family.F1:
            m = np.arange(n_max // 3 + 1)
            amps[::3][: m.size] = _poisson_series(self.gamma, m.size)
        else:
            if 3 * self.c.size > n_max:
                raise ValueError("n_max too small for the |3m> superposition")
            amps[0] = self.c0
            amps[3 : 3 * self.c.size + 1 : 3] = self.c
        return amps


def _poisson_series(gamma, n_terms: int) -> np.ndarray:
    """exp(-|g|^2/2) g^m / sqrt(m!) for m < n_terms (g may be an array)."""
    gamma = np.asarray(gamma, dtype=complex)
    m = np.arange(1, n_terms)
    ratios = gamma[..., None] / np.sqrt(m)
    terms = np.concatenate(
        [np.ones(gamma.shape + (1,), dtype=complex), np.cumprod(ratios, axis=-1)], axis=-1
    )
    return np.exp(-0.5 * np.abs(gamma) ** 2)[..., None] * terms


def _f1_terms_needed(j3_max: float) -> int:
    # Stop once the Poisson weights have decayed past the cutoff.
    m, log_w = 0, -j3_max
    log_cut = math.log(_F1_TERM_CUTOFF)
    while m <= j3_max or log_w > log_cut:
        m += 1
        log_w += math.log(j3_max) - math.log(m) if j3_max > 0 else -math.inf
    return max(m, 2)


def _check_point(family: Family, pt: CanonicalPoint):
    if pt.dof != family.dof:
        raise ValueError(f"{family.value} needs {family.dof} canonical pairs, got {pt.dof}")
    if np.any(pt.J < 0):
        raise NegativeActionError(f"negative action in {pt.J}")
    if family.n_superposed and np.sum(pt.J[2:]) > 1.0:
        raise NormalizationError(f"sum of |c_m|^2 = {np.sum(pt.J[2:]):.6g} exceeds 1")


def invert_coordinates(family, pt: CanonicalPoint) -> RawParameters:
    """Recover (alpha, beta, gamma / c_m) from canonical coordinates."""
    family = Family.parse(family)
    _check_point(family, pt)
    J, phi = pt.J, pt.phi
    alpha = math.sqrt(J[0]) * np.exp(1j * phi[0])
    gamma = c = None
    if family is Family.F1:
        gamma = complex(math.sqrt(J[2]) * np.exp(1j * phi[2]))
        n_xi = 3.0 * J[2]
    elif family.n_superposed:
        c = np.sqrt(J[2:]) * np.exp(1j * phi[2:])
        n_xi = 3.0 * float(np.sum(np.arange(1, c.size + 1) * J[2:]))
    else:
        n_xi = 0.0
    r2 = math.asinh(math.sqrt(2.0 * J[1] / (2.0 * n_xi + 1.0)))
    beta = r2 * np.exp(1j * phi[1])
    return RawParameters(family, complex(alpha), complex(beta), gamma, c)


def canonical_point(raw: RawParameters) -> CanonicalPoint:
    """Forward map: raw parameters to canonical coordinates."""
    fam = raw.family
    J = [abs(raw.alpha) ** 2, 0.5 * (2.0 * raw.mean_occupation_xi + 1.0) * math.sinh(abs(raw.beta)) ** 2]
    phi = [np.angle(raw.alpha), np.angle(raw.beta)]
    if fam is Family.F1:
        J.append(abs(raw.gamma) ** 2)
        phi.append(np.angle(raw.gamma))
    elif fam.n_superposed:
        J.extend(np.abs(raw.c) ** 2)
        phi.extend(np.angle(raw.c))
    return CanonicalPoint(J, phi)


def initial_point(family, alpha0: complex, beta0: complex) -> CanonicalPoint:
    """Canonical point of D(alpha0) S(beta0)|0> within ``family``.

    The non-Gaussian actions are zero, so the point sits at the origin of
    their Cartesian planes.
    """
    family = Family.parse(family)
    extra = family.dof - 2
    c = np.zeros(extra, dtype=complex) if family.n_superposed else None
    gamma = 0j if family is Family.F1 else None
    return canonical_point(RawParameters(family, complex(alpha0), complex(beta0), gamma, c))


def build_state_raw(raw: RawParameters, n_max: int) -> FockVector:
    xi = raw.xi_amplitudes(n_max)
    psi = displace_columns(raw.alpha, squeeze_columns(raw.beta, xi[:, None]))[:, 0]
    check_converged(psi, what=f"{raw.family.value} trial state")
    return FockVector(psi)


def build_state(family, pt: CanonicalPoint, n_max: int = 127) -> FockVector:
    """Normalized Fock vector D(alpha) S(beta)|xi> at a canonical point."""
    return build_state_raw(invert_coordinates(family, pt), n_max)


class Frame(NamedTuple):
    """Batched state parameters from the Cartesian chart.

    ``nu = exp(i arg beta) sinh|beta|``; the squeezed-frame ladder operator is
    ``S^dag D^dag a D S = alpha + mu a + nu a^dag`` with ``mu = sqrt(1 + |nu|^2)``.
    ``xi`` has shape (B, L) over levels 0..L-1.
    """

    alpha: np.ndarray
    beta: np.ndarray
    nu: np.ndarray
    xi: np.ndarray

    @property
    def mu(self) -> np.ndarray:
        return np.sqrt(1.0 + np.abs(self.nu) ** 2)


def _asinh_ratio(u: np.ndarray) -> np.ndarray:
    """asinh(sqrt(u)) / sqrt(u), smooth through u = 0."""
    small = u < 1e-8
    s = np.sqrt(np.where(small, 1.0, u))
    return np.where(small, 1.0 - u / 6.0 + 3.0 * u**2 / 40.0, np.arcsinh(s) / s)


def frame_parameters(family, y) -> Frame:
    """Map Cartesian coordinates (shape (2n,) or (B, 2n)) to state parameters.

    Smooth everywhere in the interior, including J_i = 0.

    Raises
    ------
    NormalizationError
        For F2/F3 points with sum |c_m|^2 > 1.
    """
    family = Family.parse(family)
    y = np.atleast_2d(np.asarray(y, dtype=float))
    n = family.dof
    if y.shape[1] != 2 * n:
        raise ValueError(f"{family.value} needs {2 * n} Cartesian coordinates, got {y.shape[1]}")
    z = (y[:, :n] + 1j * y[:, n:]) / math.sqrt(2.0)
    batch = y.shape[0]
    if family is Family.G:
        xi = np.ones((batch, 1), dtype=complex)
        n_xi = np.zeros(batch)
    elif family is Family.F1:
        gamma = z[:, 2]
        j3 = np.abs(gamma) ** 2
        terms = _f1_terms_needed(float(j3.max()))
        xi = np.zeros((batch, 3 * terms - 2), dtype=complex)
        xi[:, ::3] = _poisson_series(gamma, terms)
        n_xi = 3.0 * j3
    else:
        c = z[:, 2:]
        weights = np.abs(c) ** 2
        total = weights.sum(axis=1)
        if np.any(total > 1.0):
            raise NormalizationError(f"sum of |c_m|^2 = {total.max():.6g} exceeds 1")
        xi = np.zeros((batch, 3 * c.shape[1] + 1), dtype=complex)
        xi[:, 0] = np.sqrt(1.0 - total)
        xi[:, 3::3] = c
        n_xi = 3.0 * weights @ np.arange(1, c.shape[1] + 1)
    nu = z[:, 1] * np.sqrt(2.0 / (2.0 * n_xi + 1.0))
    beta = nu * _asinh_ratio(np.abs(nu) ** 2)
    return Frame(z[:, 0], beta, nu, xi)


def states_from_cartesian(family, ys, n_max: int) -> np.ndarray:
    """Fock amplitudes (shape (n_max+1, B)) for a batch of Cartesian points."""
    frame = frame_parameters(family, ys)
    L = frame.xi.shape[1]
    if L > n_max + 1:
        raise ValueError(f"n_max={n_max} cannot hold a |xi> reaching level {L - 1}")
    cols = np.zeros((n_max + 1, frame.xi.shape[0]), dtype=complex)
    cols[:L] = frame.xi.T
    psi = displace_columns(frame.alpha, squeeze_columns(frame.beta, cols))
    check_converged(psi, what=f"{Family.parse(family).value} trial states")
    return psi


# --- canonicity verification -------------------------------------------------


def _raw_names(family: Family) -> list[str]:
    names = ["r1", "phi1", "r2", "phi2"]
    if family is Family.F1:
        names += ["r3", "phi3"]
    for m in range(1, family.n_superposed + 1):
        names += [f"R{m}", f"phi_c{m}"]
    return names


def _raw_vector(raw: RawParameters) -> np.ndarray:
    theta = [abs(raw.alpha), np.angle(raw.alpha), abs(raw.beta), np.angle(raw.beta)]
    if raw.family is Family.F1:
        theta += [abs(raw.gamma), np.angle(raw.gamma)]
    elif raw.c is not None:
        for cm in raw.c:
            theta += [abs(cm), np.angle(cm)]
    return np.array(theta, dtype=float)


def _raw_from_vector(family: Family, theta: np.ndarray) -> RawParameters:
    polar = theta[0::2] * np.exp(1j * theta[1::2])
    alpha, beta = complex(polar[0]), complex(polar[1])
    if family is Family.F1:
        return RawParameters(family, alpha, beta, gamma=complex(polar[2]))
    if family.n_superposed:
        return RawParameters(family, alpha, beta, c=polar[2:].copy())
    return RawParameters(family, alpha, beta)


def _expected_connection(raw: RawParameters) -> np.ndarray:
    """Analytic <psi| d/dtheta |psi> for every raw parameter."""
    r1, r2 = abs(raw.alpha), abs(raw.beta)
    vals = [0.0, 1j * r1**2, 0.0, 0.5j * (2.0 * raw.mean_occupation_xi + 1.0) * math.sinh(r2) ** 2]
    if raw.family is Family.F1:
        vals += [0.0, 1j * abs(raw.gamma) ** 2]
    elif raw.c is not None:
        for cm in raw.c:
            vals += [0.0, 1j * abs(cm) ** 2]
    return np.array(vals, dtype=complex)


@dataclass(frozen=True)
class CanonicityReport:
    names: list[str]
    numeric: np.ndarray
    expected: np.ndarray

    @property
    def residuals(self) -> np.ndarray:
        return np.abs(self.numeric - self.expected)

    @property
    def max_residual(self) -> float:
        return float(self.residuals.max())

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.names, self.residuals.tolist()))


def _connection_fd(family: Family, raw: RawParameters, h: float, n_max: int) -> np.ndarray:
    theta = _raw_vector(raw)
    psi = build_state_raw(raw, n_max).amps
    out = np.empty(theta.size, dtype=complex)
    for k in range(theta.size):
        step = np.zeros_like(theta)
        step[k] = h
        plus = build_state_raw(_raw_from_vector(family, theta + step), n_max).amps
        minus = build_state_raw(_raw_from_vector(family, theta - step), n_max).amps
        out[k] = np.vdot(psi, plus - minus) / (2.0 * h)
    return out


def canonicity_check(family, pt: CanonicalPoint, h: float = 1e-5, n_max: int = 127) -> CanonicityReport:
    """Compare finite-difference <psi|d psi/d theta> with the analytic values.

    The analytic values are zero for every modulus (r1, r2, r3, R_m) and
    ``i r1^2``, ``(i/2)(2<n>_xi + 1) sinh^2 r2``, ``i |g|^2`` or ``i R_m^2``
    for the phases.

    Raises
    ------
    SingularPointError
        If any action is not larger than the step.
    """
    family = Family.parse(family)
    if np.any(pt.J <= h):
        raise SingularPointError(f"actions {pt.J} too close to zero for step {h}")
    raw = invert_coordinates(family, pt)
    numeric = _connection_fd(family, raw, h, n_max)
    return CanonicityReport(_raw_names(family), numeric, _expected_connection(raw))


def canonicity_order(family, pt: CanonicalPoint, h: float = 1e-2, n_max: int = 127) -> float:
    """Observed order of the finite-difference residuals under step halving.

    Uses a step large enough that truncation error dominates round-off.
    """
    coarse = canonicity_check(family, pt, h, n_max).residuals
    fine = canonicity_check(family, pt, h / 2, n_max).residuals
    return math.log2(np.linalg.norm(coarse) / np.linalg.norm(fine))
