import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canonical_packets.errors import NegativeActionError, NormalizationError, SingularPointError
from canonical_packets.fock import displace_columns, position_momentum, squeeze_columns
from canonical_packets.trials import (
    CanonicalPoint,
    Family,
    RawParameters,
    build_state,
    canonical_point,
    canonicity_check,
    canonicity_order,
    frame_parameters,
    initial_point,
    invert_coordinates,
    states_from_cartesian,
)

from .helpers import random_point

BENCH_J2 = 0.5 * math.sinh(0.1) ** 2


def test_family_sizes():
    assert [f.dof for f in Family] == [2, 3, 3, 4]
    assert Family.F2.n_superposed == 1 and Family.F3.n_superposed == 2


def test_invert_gaussian_benchmark_point():
    raw = invert_coordinates(Family.G, CanonicalPoint([0.5, BENCH_J2], [0.0, 0.0]))
    assert raw.alpha == pytest.approx(1 / math.sqrt(2), abs=1e-14)
    assert raw.beta == pytest.approx(0.1, abs=1e-14)


def test_invert_f1_zero_gamma():
    raw = invert_coordinates(Family.F1, CanonicalPoint([0.5, BENCH_J2, 0.0], [0.3, 0.2, 0.0]))
    assert raw.gamma == 0


def test_invert_f1_nonzero_gamma():
    # <n>_xi = 3 * 0.25 enters J2 through 2<n>_xi + 1
    J2 = 0.5 * (2 * 0.75 + 1) * math.sinh(0.3) ** 2
    raw = invert_coordinates(Family.F1, CanonicalPoint([0.2, J2, 0.25], [0.0, 0.0, 0.0]))
    assert abs(raw.beta) == pytest.approx(0.3, abs=1e-13)
    assert abs(raw.gamma) == pytest.approx(0.5, abs=1e-14)
    # forward map closes the loop
    back = canonical_point(raw)
    np.testing.assert_allclose(back.J, [0.2, J2, 0.25], atol=1e-14)


def test_invert_superposition_uses_weighted_occupation():
    J = [0.1, 0.02, 0.2, 0.1]
    raw = invert_coordinates(Family.F3, CanonicalPoint(J, [0.0, 0.0, 0.5, -0.5]))
    n_xi = 3 * (1 * 0.2 + 2 * 0.1)
    assert raw.mean_occupation_xi == pytest.approx(n_xi)
    assert abs(raw.beta) == pytest.approx(math.asinh(math.sqrt(2 * 0.02 / (2 * n_xi + 1))))
    assert raw.c0 == pytest.approx(math.sqrt(0.7))


def test_invalid_points():
    with pytest.raises(NegativeActionError):
        invert_coordinates(Family.G, CanonicalPoint([-0.1, 0.1], [0, 0]))
    with pytest.raises(NormalizationError):
        invert_coordinates(Family.F3, CanonicalPoint([0.1, 0.1, 0.6, 0.5], [0, 0, 0, 0]))
    with pytest.raises(ValueError):
        invert_coordinates(Family.F1, CanonicalPoint([0.1, 0.1], [0, 0]))


def test_gaussian_benchmark_state_moments():
    psi = build_state(Family.G, initial_point(Family.G, 1 / math.sqrt(2), 0.1), 127)
    x, p = position_momentum(127)
    assert np.vdot(psi.amps, x.entries @ psi.amps).real == pytest.approx(1.0, abs=1e-12)
    assert abs(np.vdot(psi.amps, p.entries @ psi.amps)) < 1e-12
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)


def test_f1_xi_mean_occupation_by_series():
    gamma = 0.5
    xi = RawParameters(Family.F1, 0j, 0j, gamma=gamma).xi_amplitudes(127)
    n = np.arange(128)
    oracle = sum(3 * m * gamma ** (2 * m) / math.factorial(m) for m in range(40)) * math.exp(-(gamma**2))
    assert oracle == pytest.approx(0.75, abs=1e-14)
    assert np.sum(n * np.abs(xi) ** 2) == pytest.approx(oracle, abs=1e-13)
    assert np.linalg.norm(xi) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("family", [Family.F1, Family.F2, Family.F3])
def test_reduction_to_gaussian(family):
    g = CanonicalPoint([0.4, 0.03], [0.7, -1.2])
    ext = family.dof - 2
    f = CanonicalPoint(np.r_[g.J, np.zeros(ext)], np.r_[g.phi, np.zeros(ext)])
    np.testing.assert_allclose(build_state(family, f).amps, build_state(Family.G, g).amps, atol=1e-10)


@pytest.mark.parametrize("family", list(Family))
def test_multiples_of_three_structure(family, rng):
    raw = invert_coordinates(family, random_point(rng, family))
    psi = build_state(family, canonical_point(raw)).amps
    back = squeeze_columns(-raw.beta, displace_columns(-raw.alpha, psi[:, None]))[:, 0]
    off = np.arange(back.size) % 3 != 0
    assert np.max(np.abs(back[off])) < 1e-10


@pytest.mark.parametrize("family", list(Family))
def test_cartesian_and_action_angle_routes_agree(family, rng):
    pts = [random_point(rng, family) for _ in range(3)]
    cols = states_from_cartesian(family, np.array([p.flat() for p in pts]), 127)
    for k, p in enumerate(pts):
        np.testing.assert_allclose(cols[:, k], build_state(family, p).amps, atol=1e-12)


@pytest.mark.parametrize("family", [Family.F1, Family.F3])
def test_chart_continuity_at_origin(family):
    base = np.zeros(2 * family.dof)
    base[0], base[1] = 1.0, 0.3
    n = family.dof
    eps = 1e-9
    along_q, along_p = base.copy(), base.copy()
    along_q[2], along_p[n + 2] = eps, eps
    a = states_from_cartesian(family, along_q, 127)[:, 0]
    b = states_from_cartesian(family, along_p, 127)[:, 0]
    assert np.max(np.abs(a - b)) < 1e-8


def test_frame_rejects_overfull_superposition():
    y = np.zeros(6)
    y[2] = math.sqrt(2 * 1.2)
    with pytest.raises(NormalizationError):
        frame_parameters(Family.F2, y)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(1e-3, 2.0), min_size=4, max_size=4),
    st.lists(st.floats(-3.1, 3.1), min_size=4, max_size=4),
)
def test_chart_round_trip(J, phi):
    pt = CanonicalPoint(J, phi)
    back = CanonicalPoint.from_cartesian(*pt.cartesian())
    np.testing.assert_allclose(back.J, pt.J, rtol=0, atol=1e-12)
    np.testing.assert_allclose(back.phi, pt.phi, rtol=0, atol=1e-12)


# --- canonicity relations -------------------------------------------------


def test_gaussian_phase_connection():
    rep = canonicity_check(Family.G, CanonicalPoint([0.25, 0.05], [0.4, 1.0]))
    d = dict(zip(rep.names, rep.numeric))
    assert d["phi1"] == pytest.approx(0.25j, abs=1e-7)
    assert abs(d["r1"]) < 1e-7 and abs(d["r2"]) < 1e-7


def test_gaussian_moduli_connection_vanishes(rng):
    for _ in range(3):
        rep = canonicity_check(Family.G, random_point(rng, Family.G))
        d = dict(zip(rep.names, rep.numeric))
        assert abs(d["r1"]) < 1e-7 and abs(d["r2"]) < 1e-7


def test_f1_squeeze_phase_connection():
    r2, r3 = 0.1, 0.5
    raw = RawParameters(Family.F1, 0.3 + 0.1j, r2 * np.exp(0.4j), gamma=r3 * np.exp(-0.7j))
    rep = canonicity_check(Family.F1, canonical_point(raw))
    d = dict(zip(rep.names, rep.numeric))
    assert d["phi2"] == pytest.approx(0.5j * (2 * 3 * r3**2 + 1) * math.sinh(r2) ** 2, abs=1e-7)
    assert d["phi3"] == pytest.approx(1j * r3**2, abs=1e-7)
    assert abs(d["r3"]) < 1e-7


@pytest.mark.parametrize("family", list(Family))
def test_canonicity_residuals_and_order(family, rng):
    pt = random_point(rng, family)
    assert canonicity_check(family, pt).max_residual < 1e-6
    assert canonicity_order(family, pt) >= 1.9


def test_canonicity_rejects_singular_point():
    with pytest.raises(SingularPointError):
        canonicity_check(Family.F1, CanonicalPoint([0.5, 0.1, 0.0], [0, 0, 0]))
