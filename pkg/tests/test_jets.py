"""Jet arithmetic against finite differences and known Taylor expansions."""
from __future__ import annotations

import cmath

import numpy as np
import pytest

from logharm.errors import PoleEncountered
from logharm.jets import Jet, zpow_jet, zpow_value

FD_STEP = 1e-5
FD_RTOL = 1e-6


def fd_check(make_jet, p: complex):
    """Each d_k must match a central difference of d_{k-1} across p."""
    at = lambda q: make_jet(q)
    center = at(p)
    for k in range(1, center.order + 1):
        lo = at(p - FD_STEP)
        hi = at(p + FD_STEP)
        approx = (getattr(hi, f"d{k-1}") - getattr(lo, f"d{k-1}")) / (2 * FD_STEP)
        exact = getattr(center, f"d{k}")
        assert abs(approx - exact) <= FD_RTOL * (1 + abs(exact)), (k, p)


def test_variable_jet_shape():
    j = Jet.variable(0.3 + 0.1j)
    assert j.d0 == 0.3 + 0.1j
    assert j.d1 == 1
    assert j.d2 == 0
    assert j.d3 == 0


def test_geometric_series_jet():
    # 1/(1-z) at 0.5: derivatives k!/(1-z)^(k+1)
    one = Jet.constant(1 + 0j)
    j = one / (one - Jet.variable(0.5 + 0j))
    assert j.d0 == pytest.approx(2)
    assert j.d1 == pytest.approx(4)
    assert j.d2 == pytest.approx(16)
    assert j.d3 == pytest.approx(96)


def test_exp_log_known_series():
    e = Jet.variable(0j).exp()
    assert [e.d0, e.d1, e.d2, e.d3] == pytest.approx([1, 1, 1, 1])
    l = (1 + Jet.variable(0j)).log()
    # log(1+z): derivatives 0, 1, -1, 2
    assert [l.d0, l.d1, l.d2, l.d3] == pytest.approx([0, 1, -1, 2])


def test_principal_branch():
    j = Jet.constant(complex(-1, 0)).log()
    assert j.d0 == pytest.approx(1j * cmath.pi)
    # conjugate point on the other side of the cut
    j2 = Jet.constant(complex(-1, -0.0)).log()
    assert j2.d0 == pytest.approx(-1j * cmath.pi)


@pytest.mark.parametrize(
    "p",
    [0.2 + 0j, -0.3 + 0.4j, 0.1 - 0.55j, 0.6 + 0.1j],
)
def test_fd_chain_rational(p):
    fd_check(lambda q: 1 / (1 - Jet.variable(q)), p)
    fd_check(lambda q: (2 - 3 * Jet.variable(q)) / (3 - 2 * Jet.variable(q)), p)
    fd_check(lambda q: Jet.variable(q) * Jet.variable(q) - Jet.variable(q) + 2j, p)


@pytest.mark.parametrize("p", [0.2 + 0j, -0.3 + 0.4j, 0.1 - 0.55j])
def test_fd_chain_transcendental(p):
    fd_check(lambda q: (Jet.variable(q) / (1 - Jet.variable(q))).exp(), p)
    fd_check(lambda q: (1 - Jet.variable(q)).log(), p)
    fd_check(lambda q: (1 - Jet.variable(q)) ** (-8 / 3), p)
    fd_check(lambda q: (1 + Jet.variable(q)) ** 0.5, p)
    fd_check(lambda q: (1 + Jet.variable(q)) ** (0.3 + 0.2j), p)


def test_integer_power_is_repeated_multiplication():
    z = Jet.variable(-0.5 + 0j)
    sq = z ** 2
    assert sq.coeffs == (z * z).coeffs
    assert (z ** 1) is z
    cube = z ** -3
    direct = 1 / (z * z * z)
    for a, b in zip(cube.coeffs, direct.coeffs):
        assert a == pytest.approx(b, rel=1e-14)


def test_division_pole_raises():
    with pytest.raises(PoleEncountered):
        Jet.constant(1 + 0j) / Jet.constant(0j)
    with pytest.raises(PoleEncountered):
        Jet.constant(0j).log()


def test_array_coefficients_broadcast():
    zs = np.array([0.1 + 0.2j, -0.4 + 0j, 0.3 - 0.3j])
    j = 1 / (1 - Jet.variable(zs))
    scalar = [1 / (1 - Jet.variable(complex(z))) for z in zs]
    for k in range(4):
        got = j.coeffs[k]
        want = np.array([s.coeffs[k] for s in scalar])
        assert np.allclose(got, want, rtol=1e-14)


def test_array_division_by_zero_masks_not_raises():
    zs = np.array([1.0 + 0j, 0.5 + 0j])
    with np.errstate(all="ignore"):
        j = 1 / (1 - Jet.variable(zs))
    assert not np.isfinite(j.coeffs[0][0])
    assert np.isfinite(j.coeffs[0][1])


def test_derivative_drops_order():
    j = (Jet.variable(0.3 + 0j) / (1 - Jet.variable(0.3 + 0j))).derivative()
    assert j.order == 2
    # derivative of z/(1-z) is 1/(1-z)^2
    assert j.d0 == pytest.approx(1 / 0.7 ** 2)
    assert j.d1 == pytest.approx(2 / 0.7 ** 3)
    assert j.d2 == pytest.approx(6 / 0.7 ** 4)


def test_zpow_jet_matches_expr_power():
    for w in (3, -1, 2.5, -8 / 3, 1.5 + 0.5j):
        for z in (0.4 + 0.3j, -0.2 + 0.5j, 0.7 + 0j):
            j = zpow_jet(z, w, order=2)
            ref = Jet.variable(z, 2) ** w
            for a, b in zip(j.coeffs, ref.coeffs):
                assert abs(a - b) <= 1e-12 * (1 + abs(b))


def test_zpow_value_origin_rules():
    assert zpow_value(0j, 2) == 0
    assert zpow_value(0j, 0.5 + 1j) == 0
    assert zpow_value(0j, 0) == 1
    with pytest.raises(PoleEncountered):
        zpow_value(0j, -1)
    with pytest.raises(PoleEncountered):
        zpow_value(0j, -0.5 + 2j)
    assert zpow_value(0.5 + 0j, 2) == pytest.approx(0.25)
