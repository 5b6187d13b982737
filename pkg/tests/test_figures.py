"""Tests for the figure presets and the published scan properties they reproduce."""

import numpy as np
import pandas as pd
import pytest

from entanglement_engine.errors import InputError, OutputError
from entanglement_engine.models import ChainSpec, ModelKind, Observable, ScanSpec
from entanglement_engine.scans import (
    FIGURES,
    ScanRunner,
    figure_specs,
    find_extremum,
    finite_size_summary,
    parse_grid,
    reproduce,
    to_frame,
)
from entanglement_engine.solvers import build_rdm, pair_correlators, solve_chain, wootters


def test_parse_grid():
    assert parse_grid("1.5") == [1.5]
    assert parse_grid("0:2.4:121")[60] == pytest.approx(1.2)
    assert len(parse_grid("0:2.4:121")) == 121
    with pytest.raises(InputError):
        parse_grid("1:2")
    with pytest.raises(InputError):
        parse_grid("a:b:3")


@pytest.mark.parametrize("name", sorted(FIGURES))
def test_presets_are_valid(name):
    """Every preset builds labelled specs on the default grids."""
    specs = figure_specs(name)
    labels = [spec.label for spec in specs]

    assert specs
    assert len(set(labels)) == len(labels)
    assert all(label.startswith(name) for label in labels)


def test_kopplung_presets_cover_boundary_bonds():
    specs = figure_specs("fig-kopplung")
    assert [spec.kappa for spec in specs] == [0.0, 0.5, 1.0, 1.5, 20.0]
    assert all(spec.kappa_relative and spec.n_sites == 101 for spec in specs)


def test_finite_size_preset_sizes():
    assert [spec.n_sites for spec in figure_specs("fig-finite-size")] == [51, 101, 151, 201, 231]


def test_unknown_preset():
    with pytest.raises(InputError):
        figure_specs("fig-unknown")


def test_finite_size_summary_columns():
    spec = ScanSpec(model=ModelKind.CHAIN, grid=list(np.linspace(0.6, 1.6, 11)), n_sites=12,
                    pairs=[(1, 2), (1, 3)], outputs=[Observable.C], derivative=True)
    series = ScanRunner(workers=1, richardson=False).run(spec)
    summary = finite_size_summary([series])

    assert list(summary.columns) == [
        "n_sites", "lambda_min", "d_c12_min", "lambda_max_c13", "c13_max"
    ]
    assert summary.loc[0, "n_sites"] == 12
    assert summary.loc[0, "c13_max"] == pytest.approx(max(series.columns["c@1-3"]), abs=5e-3)


def test_reproduce_writes_summary(tmp_path, monkeypatch):
    small = [
        ScanSpec(model=ModelKind.CHAIN, grid=[0.6, 0.9, 1.2, 1.5], n_sites=n,
                 pairs=[(1, 2), (1, 3)], outputs=[Observable.C], derivative=True,
                 label=f"fig-finite-size_N-{n}")
        for n in (6, 8)
    ]
    monkeypatch.setitem(FIGURES, "fig-finite-size", lambda: small)

    paths = reproduce("fig-finite-size", tmp_path, "csv", runner=ScanRunner(workers=1))
    names = sorted(path.name for path in paths)
    assert names == [
        "fig-finite-size_N-6.csv", "fig-finite-size_N-8.csv", "fig-finite-size_summary.csv"
    ]


def test_reproduce_summary_write_failure(tmp_path, monkeypatch, mocker):
    """An unwritable summary surfaces as an output error naming the file."""
    small = [
        ScanSpec(model=ModelKind.CHAIN, grid=[0.6, 0.9, 1.2, 1.5], n_sites=6,
                 pairs=[(1, 2), (1, 3)], outputs=[Observable.C], derivative=True,
                 label="fig-finite-size_N-6")
    ]
    monkeypatch.setitem(FIGURES, "fig-finite-size", lambda: small)
    mocker.patch.object(pd.DataFrame, "to_csv", side_effect=OSError(13, "Permission denied"))

    with pytest.raises(OutputError) as excinfo:
        reproduce("fig-finite-size", tmp_path, "json", runner=ScanRunner(workers=1))

    assert excinfo.value.exit_code == 3
    assert excinfo.value.path.endswith("fig-finite-size_summary.csv")
    assert "Permission denied" in str(excinfo.value)


def test_preset_grids_follow_settings(monkeypatch):
    monkeypatch.setenv("SPINRADAR_DEFAULT_LAMBDA_GRID", "0:1:3")
    monkeypatch.setenv("SPINRADAR_DEFAULT_ALPHA_GRID", "0.5:1.5:3")

    assert figure_specs("fig-boundary")[0].grid == [0.0, 0.5, 1.0]
    assert figure_specs("fig-tls")[0].grid == [0.5, 1.0, 1.5]


# ============================================================================
# Published properties of the open chain
# ============================================================================

def _nearest_neighbour_concurrence(cm, i):
    return wootters(build_rdm(pair_correlators(cm, i, i + 1))).c


@pytest.mark.parametrize("lam", [0.5, 1.5])
def test_bulk_is_reached_inside_the_chain(lam):
    """Away from the ends C(i,i+1) agrees with the chain centre."""
    _, cm, _ = solve_chain(ChainSpec(n_sites=101, lam=lam))
    centre = _nearest_neighbour_concurrence(cm, 50)
    for i in (10, 20, 30, 40):
        assert _nearest_neighbour_concurrence(cm, i) == pytest.approx(centre, abs=1e-3)


def test_boundary_differs_more_than_interior_at_criticality():
    _, cm, _ = solve_chain(ChainSpec(n_sites=101, lam=1.0))
    centre = _nearest_neighbour_concurrence(cm, 50)

    assert abs(centre - _nearest_neighbour_concurrence(cm, 2)) > abs(
        centre - _nearest_neighbour_concurrence(cm, 10)
    )


@pytest.fixture(scope="module")
def size_scans():
    """C(1,2) and C(1,3) with lambda derivatives around the critical point."""
    grid = [float(x) for x in np.linspace(0.8, 1.4, 13)]
    runner = ScanRunner(workers=1, richardson=False)
    return {
        n: runner.run(ScanSpec(model=ModelKind.CHAIN, grid=grid, n_sites=n,
                               pairs=[(1, 2), (1, 3)], outputs=[Observable.C],
                               derivative=True))
        for n in (51, 101, 231)
    }


@pytest.mark.slow
def test_boundary_derivative_minimum(size_scans):
    """dC(1,2)/dlambda has its broad minimum near lambda = 1.1."""
    found = find_extremum(size_scans[101], "d_c@1-2", kind="min")

    assert not found.boundary
    assert 1.05 <= found.parameter <= 1.15


@pytest.mark.slow
def test_boundary_derivative_is_converged(size_scans):
    """The N = 231 curve lies on top of the N = 101 curve."""
    large = size_scans[231].column("d_c@1-2")
    medium = size_scans[101].column("d_c@1-2")
    assert np.max(np.abs(large - medium)) < 1e-2


@pytest.mark.slow
def test_next_nearest_boundary_concurrence_saturates(size_scans):
    """The maximum of C(1,3) barely moves between N = 51 and N = 231."""
    small = np.max(size_scans[51].column("c@1-3"))
    large = np.max(size_scans[231].column("c@1-3"))
    assert abs(small - large) < 1e-3


@pytest.mark.slow
def test_boundary_preset_is_deterministic():
    """Serial and parallel runs of the boundary preset give identical payloads."""
    spec = figure_specs("fig-boundary")[0]
    spec = spec.model_copy(update={"grid": spec.grid[40:61]})

    serial = ScanRunner(workers=1).run(spec)
    parallel = ScanRunner(workers=2).run(spec)

    assert serial.fingerprint() == parallel.fingerprint()
    assert not to_frame(serial).isna().any().any()


@pytest.mark.slow
def test_next_nearest_sign_structure():
    """C*(1,3) stays positive while C*(2,4) and C*(3,5) dip below zero for lambda > 1."""
    grid = [float(x) for x in np.linspace(0.1, 2.4, 24)]
    spec = ScanSpec(model=ModelKind.CHAIN, grid=grid, n_sites=101,
                    pairs=[(1, 3), (2, 4), (3, 5)], outputs=[Observable.C_STAR])
    series = ScanRunner(workers=1).run(spec)
    ordered = np.array(grid) > 1.0

    assert np.all(series.column("c_star@1-3") > 0)
    assert np.min(series.column("c_star@2-4")[ordered]) < 0
    assert np.min(series.column("c_star@3-5")[ordered]) < 0


def test_bulk_approach_at_criticality():
    """At lambda = 1 the boundary correction decays slowly but monotonically into the chain."""
    _, cm, _ = solve_chain(ChainSpec(n_sites=101, lam=1.0))
    centre = _nearest_neighbour_concurrence(cm, 50)
    gaps = [abs(_nearest_neighbour_concurrence(cm, i) - centre) for i in (10, 20, 30, 40)]

    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    for i in range(35, 66):
        assert _nearest_neighbour_concurrence(cm, i) == pytest.approx(centre, abs=1e-3)


# ============================================================================
# Boundary bond kappa
# ============================================================================

KAPPA_GRID = np.array([float(x) for x in np.linspace(0.1, 2.4, 24)])


def _between(lo, hi):
    return (KAPPA_GRID >= lo - 1e-9) & (KAPPA_GRID <= hi + 1e-9)


@pytest.fixture(scope="module")
def kappa_scans():
    """C* of the boundary pairs for every kappa/lambda of the kopplung presets."""
    runner = ScanRunner(workers=1)
    return {
        factor: runner.run(ScanSpec(model=ModelKind.CHAIN, grid=list(KAPPA_GRID), n_sites=101,
                                    kappa=factor, kappa_relative=True,
                                    pairs=[(1, 2), (1, 3), (2, 4)],
                                    outputs=[Observable.C_STAR]))
        for factor in (0.0, 0.5, 1.0, 1.5, 20.0)
    }


@pytest.mark.slow
def test_strong_boundary_bond_nearest_neighbour_sign(kappa_scans):
    """At kappa = 20 lambda C*(1,2) is positive at small lambda and negative near lambda = 1."""
    values = kappa_scans[20.0].column("c_star@1-2")

    assert np.all(values[_between(0.1, 0.5)] > 0)
    assert np.min(values[_between(0.8, 1.2)]) < 0


@pytest.mark.slow
@pytest.mark.parametrize("factor", [0.0, 0.5, 1.0])
def test_next_nearest_boundary_positive_for_weak_bond(kappa_scans, factor):
    assert np.all(kappa_scans[factor].column("c_star@1-3") >= -1e-12)


@pytest.mark.slow
@pytest.mark.parametrize("factor", [1.5, 20.0])
def test_next_nearest_boundary_negative_for_strong_bond(kappa_scans, factor):
    assert np.all(kappa_scans[factor].column("c_star@1-3") < 0)


@pytest.mark.slow
@pytest.mark.parametrize("factor", [1.5, 20.0])
def test_second_pair_negative_below_criticality(kappa_scans, factor):
    """kappa >= 1.5 lambda pushes C*(2,4) below zero for lambda < 1."""
    assert np.all(kappa_scans[factor].column("c_star@2-4")[_between(0.2, 0.9)] < 0)


@pytest.mark.slow
def test_second_pair_stays_positive_for_half_bond(kappa_scans):
    """kappa = lambda/2 keeps C*(2,4) positive just above criticality."""
    assert np.all(kappa_scans[0.5].column("c_star@2-4")[_between(1.0, 1.3)] > 0)


@pytest.mark.slow
@pytest.mark.parametrize("factor", [0.0, 0.5, 1.0, 1.5, 20.0])
def test_second_pair_peaks_near_criticality(kappa_scans, factor):
    values = kappa_scans[factor].column("c_star@2-4")
    assert 0.8 - 1e-9 <= KAPPA_GRID[int(np.nanargmax(values))] <= 1.2 + 1e-9
