"""Logging configuration for SpinRadar.

Log records go to stderr so that tables and CSV written to stdout stay clean.
"""

import logging
import sys
from typing import Any, MutableMapping, Optional, Tuple

from entanglement_engine.config import get_settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(level: Optional[str] = None) -> None:
    """
    Configure logging for the application.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL).
               If None, the ``SPINRADAR_LOG_LEVEL`` setting is used.
    """
    if level is None:
        level = get_settings().log_level

    numeric_level = getattr(logging, level.upper(), logging.INFO)

    logging.basicConfig(
        level=numeric_level,
        format=LOG_FORMAT,
        datefmt=DATE_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    # numpy/scipy RuntimeWarnings end up in the same stream
    logging.captureWarnings(True)

    logging.getLogger('numexpr').setLevel(logging.WARNING)
    logging.getLogger('concurrent.futures').setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    logger.debug(f"Logging configured at {level} level")


class ScanLogAdapter(logging.LoggerAdapter):
    """Prefixes every message with the scan label."""

    def process(
        self, msg: Any, kwargs: MutableMapping[str, Any]
    ) -> Tuple[Any, MutableMapping[str, Any]]:
        return f"[{self.extra['scan']}] {msg}", kwargs


def scan_logger(name: str, label: str) -> ScanLogAdapter:
    """Logger for one scan, tagged with its label."""
    return ScanLogAdapter(logging.getLogger(name), {"scan": label})
