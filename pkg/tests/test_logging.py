"""Tests for logging setup."""

import logging

from entanglement_engine.logging_config import scan_logger, setup_logging


def test_setup_logging_uses_settings_level(monkeypatch):
    monkeypatch.setenv("SPINRADAR_LOG_LEVEL", "WARNING")
    setup_logging()
    assert logging.getLogger().level == logging.WARNING

    setup_logging("DEBUG")
    assert logging.getLogger().level == logging.DEBUG


def test_scan_logger_prefixes_label(caplog):
    log = scan_logger("entanglement_engine.scans.runner", "fig-boundary")
    with caplog.at_level(logging.INFO, logger="entanglement_engine.scans.runner"):
        log.info("Running chain scan")

    assert "[fig-boundary] Running chain scan" in caplog.text
