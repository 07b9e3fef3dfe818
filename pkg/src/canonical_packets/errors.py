"""Exception hierarchy shared by all modules."""


class WavepacketError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(WavepacketError, ValueError):
    pass


class TruncationError(WavepacketError):
    """A Fock vector carries too much weight near the basis cutoff."""


class NormalizationError(WavepacketError, ValueError):
    """Superposition weights of the three-quantum states exceed unity."""


class NegativeActionError(WavepacketError, ValueError):
    pass


class SingularPointError(WavepacketError, ValueError):
    """Finite-difference stencil would cross the J = 0 coordinate singularity."""


class StepFailure(WavepacketError, RuntimeError):
    """The ODE integrator could not meet its tolerance."""


class EmptySeriesError(WavepacketError, ValueError):
    pass


class ConfigError(WavepacketError, ValueError):
    pass
