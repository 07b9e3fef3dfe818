"""Hamiltonian (canonical-coordinate) dynamics of Gaussian and non-Gaussian wave packets."""

from .dynamics import Trajectory, integrate
from .exact import SpectralPropagator, diagonalize, propagate
from .experiment import ExperimentConfig, RunResult, run, sweep
from .fock import FockVector, Operator, apply, displacement, inner, ladder, position_momentum, squeeze
from .hamiltonian import QuarticModel, energy_cartesian, evaluate, gradient
from .observables import ObservableSeries, mean_x, squared_overlap, time_average
from .trials import (
    CanonicalPoint,
    Family,
    build_state,
    canonicity_check,
    initial_point,
    invert_coordinates,
)

__version__ = "0.1.0"
