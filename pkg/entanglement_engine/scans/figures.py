"""Pinned scan presets that regenerate the published figure data.

Each preset is a list of scan specs; ``repro`` writes one file per spec.
"""

import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from entanglement_engine.config import get_settings
from entanglement_engine.errors import InputError, OutputError
from entanglement_engine.models import ModelKind, Observable, ScanSeries, ScanSpec
from entanglement_engine.scans.analysis import find_extremum
from entanglement_engine.scans.io import OutputFormat, emit
from entanglement_engine.scans.runner import ScanRunner

logger = logging.getLogger(__name__)

BULK_SITES = 101
FINITE_SIZES = (51, 101, 151, 201, 231)
# Boundary bond as a multiple of lambda
KAPPA_FACTORS = (0.0, 0.5, 1.0, 1.5, 20.0)


def parse_grid(text: str) -> List[float]:
    """``v`` or ``a:b:steps`` into a list of grid points."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 1 or (steps == 1 and start != stop) or (steps > 1 and stop <= start):
                raise InputError(f"grid {text!r} is not increasing")
            return [float(x) for x in np.linspace(start, stop, steps)]
    except ValueError as exc:
        raise InputError(f"cannot parse grid {text!r}: {exc}") from exc
    raise InputError(f"grid must be 'v' or 'a:b:steps', got {text!r}")


def lambda_grid() -> List[float]:
    """Default lambda grid from settings."""
    return parse_grid(get_settings().default_lambda_grid)


def alpha_grid() -> List[float]:
    return parse_grid(get_settings().default_alpha_grid)


def _kappa_series(pairs, outputs, label: str) -> List[ScanSpec]:
    return [
        ScanSpec(
            model=ModelKind.CHAIN,
            grid=lambda_grid(),
            n_sites=BULK_SITES,
            kappa=factor,
            kappa_relative=True,
            pairs=pairs,
            outputs=outputs,
            label=f"{label}_kappa-{factor:g}xLAMBDA",
        )
        for factor in KAPPA_FACTORS
    ]


def fig_boundary() -> List[ScanSpec]:
    """Nearest-neighbour concurrence near the open end and its lambda derivative."""
    return [ScanSpec(
        model=ModelKind.CHAIN,
        grid=lambda_grid(),
        n_sites=BULK_SITES,
        pairs=[(1, 2), (2, 3), (3, 4), (5, 6), (10, 11), (50, 51)],
        outputs=[Observable.C],
        derivative=True,
        label="fig-boundary",
    )]


def fig_next_nearest() -> List[ScanSpec]:
    return [ScanSpec(
        model=ModelKind.CHAIN,
        grid=lambda_grid(),
        n_sites=BULK_SITES,
        pairs=[(1, 3), (2, 4), (3, 5), (4, 6), (10, 12), (50, 52)],
        outputs=[Observable.C, Observable.C_STAR],
        label="fig-next-nearest",
    )]


def fig_kopplung() -> List[ScanSpec]:
    return _kappa_series([(1, 2), (2, 3), (50, 51)], [Observable.C, Observable.C_STAR],
                         "fig-kopplung")


def fig_kopplung2() -> List[ScanSpec]:
    return _kappa_series([(1, 3), (2, 4)], [Observable.C_STAR], "fig-kopplung2")


def fig_third_neighbor() -> List[ScanSpec]:
    return _kappa_series([(1, 4), (2, 5), (50, 53)], [Observable.C, Observable.C_STAR],
                         "fig-third-neighbor")


def fig_finite_size() -> List[ScanSpec]:
    return [
        ScanSpec(
            model=ModelKind.CHAIN,
            grid=lambda_grid(),
            n_sites=n,
            pairs=[(1, 2), (1, 3)],
            outputs=[Observable.C],
            derivative=True,
            label=f"fig-finite-size_N-{n}",
        )
        for n in FINITE_SIZES
    ]


def fig_tls() -> List[ScanSpec]:
    return [ScanSpec(
        model=ModelKind.TLS,
        grid=alpha_grid(),
        delta=1e-3,
        outputs=[Observable.ENERGY, Observable.SIGMA_X, Observable.CONCURRENCE],
        derivative=True,
        label="fig-tls",
    )]


FIGURES: Dict[str, Callable[[], List[ScanSpec]]] = {
    "fig-boundary": fig_boundary,
    "fig-next-nearest": fig_next_nearest,
    "fig-kopplung": fig_kopplung,
    "fig-kopplung2": fig_kopplung2,
    "fig-third-neighbor": fig_third_neighbor,
    "fig-finite-size": fig_finite_size,
    "fig-tls": fig_tls,
}


def figure_specs(name: str) -> List[ScanSpec]:
    if name not in FIGURES:
        raise InputError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    return FIGURES[name]()


def finite_size_summary(series_list: List[ScanSeries]) -> pd.DataFrame:
    """Refined lambda_min of dC(1,2)/dlambda and max of C(1,3) per chain length."""
    rows = []
    for series in series_list:
        minimum = find_extremum(series, "d_c@1-2", kind="min")
        maximum = find_extremum(series, "c@1-3", kind="max")
        rows.append({
            "n_sites": series.spec.n_sites,
            "lambda_min": minimum.parameter,
            "d_c12_min": minimum.value,
            "lambda_max_c13": maximum.parameter,
            "c13_max": maximum.value,
        })
    return pd.DataFrame(rows)


def reproduce(
    name: str,
    out_dir: Union[str, Path],
    fmt: Union[OutputFormat, str] = OutputFormat.JSON,
    runner: Optional[ScanRunner] = None,
) -> List[Path]:
    """Run every spec of a figure preset and write one file each."""
    fmt = OutputFormat(fmt)
    runner = runner or ScanRunner()
    out_dir = Path(out_dir)
    specs = figure_specs(name)
    logger.info(f"Reproducing {name}: {len(specs)} scan(s) into {out_dir}")

    written, series_list = [], []
    for spec in specs:
        series = runner.run(spec)
        series_list.append(series)
        written.append(emit(series, fmt, out_dir / f"{spec.label}.{fmt.value}"))

    if name == "fig-finite-size":
        summary_path = out_dir / "fig-finite-size_summary.csv"
        try:
            finite_size_summary(series_list).to_csv(summary_path, index=False)
        except OSError as exc:
            raise OutputError(f"cannot write summary ({exc.strerror or exc})", str(summary_path))
        written.append(summary_path)
    return written
