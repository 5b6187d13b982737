"""Tests for the two-spin density matrix and the Wootters concurrence."""

import math

import numpy as np
import pytest

from entanglement_engine.errors import NumericalConsistencyError
from entanglement_engine.models import ChainSpec, PairCorrelators, WoottersBranch
from entanglement_engine.solvers import (
    build_rdm,
    homogeneous_residual,
    pair_correlators,
    solve_chain,
    total_order,
    wootters,
)
from entanglement_engine.solvers.concurrence import closed_form_roots, spin_flip_roots


def _pair(xx=0.0, yy=0.0, zz=0.0, zi=0.0, zj=0.0):
    return PairCorrelators(i=1, j=2, xx=xx, yy=yy, zz=zz, zi=zi, zj=zj)


def test_bell_state_is_maximally_entangled():
    """(uu + dd)/sqrt(2) has concurrence one on the rho_plus branch."""
    rdm = build_rdm(_pair(xx=1.0, yy=-1.0, zz=1.0))
    result = wootters(rdm)

    assert rdm.rho1 == pytest.approx(0.5) and rdm.rho4 == pytest.approx(0.5)
    assert rdm.rho_plus == pytest.approx(0.5)
    assert result.c == pytest.approx(1.0, abs=1e-12)
    assert result.branch is WoottersBranch.RHO_PLUS
    assert result.shortcut == pytest.approx(1.0)


def test_product_state_has_no_entanglement():
    rdm = build_rdm(_pair(zz=1.0, zi=1.0, zj=1.0))
    result = wootters(rdm)

    assert result.c == 0.0
    assert result.c_star == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 0.2, 1.0 / 3.0, 0.6, 0.9, 1.0])
def test_werner_state(p):
    """Singlet mixed with white noise: C* = (3p - 1)/2 on the rho_minus branch."""
    rdm = build_rdm(_pair(xx=-p, yy=-p, zz=-p))
    result = wootters(rdm)

    assert result.c_star == pytest.approx((3.0 * p - 1.0) / 2.0, abs=1e-10)
    assert result.c == pytest.approx(max(0.0, (3.0 * p - 1.0) / 2.0), abs=1e-10)
    assert result.total_order == pytest.approx(3.0 * p)
    if p > 0.0:
        assert result.branch is WoottersBranch.RHO_MINUS
        assert result.shortcut is None


def test_spin_flip_roots_match_closed_form():
    """On X-shaped states the eigenvalue route reproduces the closed-form roots."""
    _, cm, _ = solve_chain(ChainSpec(n_sites=10, lam=1.2))
    for i, j in [(1, 2), (3, 5), (4, 7)]:
        rdm = build_rdm(pair_correlators(cm, i, j))
        generic = spin_flip_roots(rdm.to_matrix())
        closed = sorted((abs(v) for v in closed_form_roots(rdm)), reverse=True)
        np.testing.assert_allclose(generic, closed, atol=1e-10)


def test_two_site_concurrence_is_analytic():
    """C(1,2) = lambda / sqrt(4 + lambda^2) for the two-site chain."""
    for lam in [0.0, 0.2, 0.5, 0.8, 1.0, 1.1, 1.2, 1.5, 2.0]:
        _, cm, _ = solve_chain(ChainSpec(n_sites=2, lam=lam))
        result = wootters(build_rdm(pair_correlators(cm, 1, 2)))
        assert result.c == pytest.approx(lam / math.sqrt(4.0 + lam ** 2), abs=1e-10)


def test_rdm_is_a_state():
    """Trace one, entries non-negative, invariants follow from the entries."""
    _, cm, _ = solve_chain(ChainSpec(n_sites=9, lam=0.9))
    pc = pair_correlators(cm, 2, 3)
    rdm = build_rdm(pc)

    assert rdm.trace == pytest.approx(1.0, abs=1e-12)
    assert min(rdm.rho1, rdm.rho2, rdm.rho3, rdm.rho4) >= 0.0
    assert np.linalg.eigvalsh(rdm.to_matrix()).min() > -1e-12
    assert rdm.i1 == pytest.approx((pc.zz - pc.zi * pc.zj) / 4.0, abs=1e-12)
    assert rdm.i2 == pytest.approx(-pc.xx * pc.yy / 4.0, abs=1e-12)
    assert rdm.total_order == pytest.approx(total_order(pc), abs=1e-12)


def test_negative_diagonal_raises():
    with pytest.raises(NumericalConsistencyError) as excinfo:
        build_rdm(_pair(zz=1.0, zi=1.0, zj=-1.0))
    assert excinfo.value.quantity == "rho3"
    assert excinfo.value.exit_code == 2


def test_positivity_minor_raises():
    """Anti-diagonal entries too large for the diagonal break positivity."""
    with pytest.raises(NumericalConsistencyError) as excinfo:
        build_rdm(_pair(xx=1.0, yy=-1.0, zz=0.0))
    assert excinfo.value.value < 0.0


def test_roundoff_is_clamped():
    """Tiny negative entries from roundoff are set to zero."""
    rdm = build_rdm(_pair(zz=1.0, zi=1.0, zj=1.0 + 1e-12))
    assert rdm.rho2 == 0.0 or rdm.rho3 == 0.0


@pytest.mark.parametrize("lam", [0.5, 1.0, 1.5])
def test_homogeneous_identity_on_ring(lam):
    """(O - 1)/2 equals C* for nearest neighbours of the homogeneous ring."""
    _, cm, _ = solve_chain(ChainSpec(n_sites=16, lam=lam, kappa=lam))
    for i in (1, 5, 15):
        pc = pair_correlators(cm, i, i + 1)
        result = wootters(build_rdm(pc))
        assert homogeneous_residual(pc, result) == pytest.approx(0.0, abs=1e-10)


def test_concurrence_bounds_along_open_chain():
    """0 <= C <= 1 and C >= C* everywhere."""
    _, cm, _ = solve_chain(ChainSpec(n_sites=20, lam=1.0))
    for i in range(1, 18):
        for d in (1, 2, 3):
            result = wootters(build_rdm(pair_correlators(cm, i, i + d)))
            assert 0.0 <= result.c <= 1.0
            assert result.c >= result.c_star
