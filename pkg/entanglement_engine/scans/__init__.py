"""Parameter scans, derivatives, file output and figure presets."""

from entanglement_engine.scans.analysis import (
    Extremum,
    derivative_series,
    find_extremum,
    refined_spec,
)
from entanglement_engine.scans.runner import ScanRunner, run_scan
from entanglement_engine.scans.io import (
    SCHEMA_VERSION,
    OutputFormat,
    emit,
    read_csv_frame,
    read_series,
    to_frame,
)
from entanglement_engine.scans.figures import (
    FIGURES,
    figure_specs,
    finite_size_summary,
    parse_grid,
    reproduce,
)

__all__ = [
    # Analysis
    "Extremum",
    "derivative_series",
    "find_extremum",
    "refined_spec",
    # Running
    "ScanRunner",
    "run_scan",
    # Files
    "SCHEMA_VERSION",
    "OutputFormat",
    "emit",
    "read_csv_frame",
    "read_series",
    "to_frame",
    # Figure presets
    "FIGURES",
    "figure_specs",
    "finite_size_summary",
    "parse_grid",
    "reproduce",
]
