"""CSV and JSON files for scan series."""

import enum
import json
import logging
from pathlib import Path
from typing import Union

import pandas as pd
from pydantic import ValidationError

from entanglement_engine.errors import InputError, OutputError
from entanglement_engine.models import ScanSeries

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "spinradar.scan/1"


class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


def to_frame(series: ScanSeries) -> pd.DataFrame:
    """One row per grid point: ``param`` followed by the observable columns."""
    data = {"param": series.parameter}
    data.update(series.columns)
    return pd.DataFrame(data, columns=["param", *series.columns]).astype(float)


def to_payload(series: ScanSeries) -> dict:
    return {"schema": SCHEMA_VERSION, "series": series.model_dump(mode="json")}


def emit(
    series: ScanSeries,
    fmt: Union[OutputFormat, str],
    path: Union[str, Path],
) -> Path:
    """Write a series as CSV or versioned JSON.

    Raises:
        OutputError: the file could not be written.
    """
    fmt = OutputFormat(fmt)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt is OutputFormat.CSV:
            if not series.columns:
                path.write_text("param\n", encoding="utf-8")
            else:
                to_frame(series).to_csv(path, index=False)
        else:
            text = json.dumps(to_payload(series), indent=2)
            path.write_text(text + "\n", encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot write {fmt.value} output ({exc.strerror or exc})", str(path))

    logger.info(f"Wrote {fmt.value} series ({len(series.parameter)} points) to {path}")
    return path


def read_series(path: Union[str, Path]) -> ScanSeries:
    """Rebuild a series from its JSON file.

    Raises:
        OutputError: the file could not be read.
        InputError: the file is not a SpinRadar scan.
    """
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise OutputError(f"cannot read series ({exc.strerror or exc})", str(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc

    if payload.get("schema") != SCHEMA_VERSION:
        raise InputError(f"{path}: unsupported schema {payload.get('schema')!r}")
    try:
        return ScanSeries.model_validate(payload["series"])
    except (KeyError, ValidationError) as exc:
        raise InputError(f"{path}: malformed series: {exc}") from exc


def read_csv_frame(path: Union[str, Path]) -> pd.DataFrame:
    """Read an emitted CSV back with exact float parsing."""
    path = Path(path)
    try:
        return pd.read_csv(path, float_precision="round_trip")
    except OSError as exc:
        raise OutputError(f"cannot read CSV ({exc.strerror or exc})", str(path))
