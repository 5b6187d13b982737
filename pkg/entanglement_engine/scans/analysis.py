"""Numerical differentiation and extremum location on scan series."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from entanglement_engine.errors import InputError
from entanglement_engine.models import Observable, ScanSeries, ScanSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Extremum:
    """Grid extremum and its quadratic refinement."""

    raw_parameter: float
    raw_value: float
    parameter: float
    value: float
    boundary: bool = False
    refined: bool = False


def observable_keys(series: ScanSeries, observable: Union[Observable, str]) -> List[str]:
    """Columns of a series that belong to one observable."""
    name = observable.value if isinstance(observable, Observable) else observable
    if name in series.columns:
        return [name]
    return [key for key in series.columns if key.startswith(f"{name}@")]


def refined_spec(spec: ScanSpec) -> ScanSpec:
    """Same scan with the grid midpoints inserted (half step)."""
    grid = np.asarray(spec.grid, dtype=float)
    fine = np.empty(2 * grid.size - 1)
    fine[0::2] = grid
    fine[1::2] = 0.5 * (grid[:-1] + grid[1:])
    return spec.model_copy(update={"grid": [float(x) for x in fine], "derivative": False})


def _to_optional(values: np.ndarray) -> List[Optional[float]]:
    return [None if not np.isfinite(v) else float(v) for v in values]


def derivative_series(
    series: ScanSeries,
    observable: Union[Observable, str],
    refined: Optional[ScanSeries] = None,
) -> ScanSeries:
    """d(observable)/d(parameter) for every matching column.

    Interior points use central differences and the ends second-order
    one-sided ones. When ``refined`` holds the same scan on the half-step
    grid the two estimates are Richardson-combined.

    Raises:
        InputError: fewer than three grid points, or no matching column.
    """
    x = np.asarray(series.parameter, dtype=float)
    if x.size < 3:
        raise InputError(f"derivative needs at least 3 grid points, got {x.size}")
    keys = observable_keys(series, observable)
    if not keys:
        raise InputError(f"series has no column for {observable!r}")

    columns = {}
    for key in keys:
        coarse = np.gradient(series.column(key), x, edge_order=2)
        if refined is not None:
            fine_x = np.asarray(refined.parameter, dtype=float)
            if fine_x.size != 2 * x.size - 1 or not np.allclose(fine_x[0::2], x, rtol=0, atol=0):
                raise InputError("refined series does not interleave the original grid")
            fine = np.gradient(refined.column(key), fine_x, edge_order=2)[0::2]
            coarse = (4.0 * fine - coarse) / 3.0
        columns[f"d_{key}"] = _to_optional(coarse)

    return ScanSeries(
        spec=series.spec,
        parameter=list(series.parameter),
        columns=columns,
        metadata=series.metadata.model_copy(deep=True),
    )


def find_extremum(series: ScanSeries, key: str, kind: str = "min") -> Extremum:
    """Grid minimum or maximum of a column, refined by a parabola through its neighbours.

    An extremum on the first or last grid point is flagged and not refined.
    """
    if kind not in ("min", "max"):
        raise InputError(f"kind must be 'min' or 'max', got {kind!r}")
    if key not in series.columns:
        matches = observable_keys(series, key)
        if len(matches) != 1:
            raise InputError(f"column {key!r} is ambiguous or missing: {matches}")
        key = matches[0]

    x = np.asarray(series.parameter, dtype=float)
    y = series.column(key)
    if np.all(np.isnan(y)):
        raise InputError(f"column {key!r} has no values")

    idx = int(np.nanargmin(y) if kind == "min" else np.nanargmax(y))
    raw_x, raw_y = float(x[idx]), float(y[idx])

    if idx == 0 or idx == x.size - 1:
        logger.warning(f"{kind} of {key} sits on the grid boundary at {raw_x:g}")
        return Extremum(raw_x, raw_y, raw_x, raw_y, boundary=True)

    xs, ys = x[idx - 1:idx + 2], y[idx - 1:idx + 2]
    if np.any(np.isnan(ys)):
        return Extremum(raw_x, raw_y, raw_x, raw_y)

    curvature, slope, offset = np.polyfit(xs, ys, 2)
    if (kind == "min" and curvature <= 0.0) or (kind == "max" and curvature >= 0.0):
        return Extremum(raw_x, raw_y, raw_x, raw_y)

    vertex = float(np.clip(-slope / (2.0 * curvature), xs[0], xs[-1]))
    value = float(np.polyval([curvature, slope, offset], vertex))
    return Extremum(raw_x, raw_y, vertex, value, refined=True)
