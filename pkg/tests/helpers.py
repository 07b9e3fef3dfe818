import math

from canonical_packets.trials import CanonicalPoint


def random_point(rng, family, j_lo=0.02):
    """Experiment-scale canonical point with every action above ``j_lo``."""
    J = rng.uniform(j_lo, 0.5, family.dof)
    if family.n_superposed:
        J[2:] = rng.uniform(j_lo, 0.45 / family.n_superposed, family.n_superposed)
    return CanonicalPoint(J, rng.uniform(-math.pi, math.pi, family.dof))
