"""Test fixtures and configuration."""

import math

import pytest
from click.testing import CliRunner

from entanglement_engine.config import get_settings
from entanglement_engine.models import ChainSpec, ModelKind, Observable, ScanSpec, TLSModel


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Rebuild settings per test so environment overrides take effect."""
    monkeypatch.delenv("SPINRADAR_WORKERS", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def runner():
    """Create CLI test runner."""
    return CliRunner()


@pytest.fixture
def two_site_chain():
    """N = 2 chain at lambda = 1, solvable by hand."""
    return ChainSpec(n_sites=2, lam=1.0)


@pytest.fixture
def two_site_values():
    """Closed-form ground-state values of the N = 2 chain at lambda = 1."""
    root5 = math.sqrt(5.0)
    return {
        "energy": -root5,
        "xx": 1.0 / root5,
        "yy": -1.0 / root5,
        "zz": 1.0,
        "zi": 2.0 / root5,
        "c": 1.0 / root5,
    }


@pytest.fixture
def tls_model():
    """Two-level system in the weak-coupling regime."""
    return TLSModel(delta=1e-3, alpha=0.3, omega_c=1.0)


@pytest.fixture
def small_chain_scan():
    """Short chain scan that runs in well under a second."""
    return ScanSpec(
        model=ModelKind.CHAIN,
        grid=[0.2, 0.6, 1.0, 1.4, 1.8],
        n_sites=6,
        pairs=[(1, 2), (2, 4)],
        outputs=[Observable.C, Observable.C_STAR, Observable.XX],
    )


@pytest.fixture
def small_tls_scan():
    return ScanSpec(
        model=ModelKind.TLS,
        grid=[0.1, 0.3, 0.5, 0.7, 0.9, 1.1],
        delta=1e-3,
        outputs=[Observable.ENERGY, Observable.SIGMA_X, Observable.CONCURRENCE],
    )
