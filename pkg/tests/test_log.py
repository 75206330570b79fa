import logging

import pytest

from qotp.utils.log import LOGGER_NAME, LoggerManager, log


@pytest.fixture
def debug_logging():
    LoggerManager.debug_mode()
    yield
    LoggerManager.plain_mode()


def test_logger_exists():
    """Test that the package logger can be imported and used."""
    assert log is not None
    assert log.name == LOGGER_NAME
    assert log is LoggerManager.get_logger()
    log.info("Test package logger.")


def test_set_log_level():
    """Test setting the log level."""
    LoggerManager.set_level("debug")
    assert log.level == logging.DEBUG
    LoggerManager.set_level("WARNING")
    assert log.level == logging.WARNING
    LoggerManager.set_level("INFO")


def test_logs_go_to_stderr(capsys, debug_logging):
    """Test that log output never mixes into stdout."""
    log.debug("This is a debug message.")
    captured = capsys.readouterr()
    assert "This is a debug message." in captured.err
    assert "This is a debug message." not in captured.out


def test_plain_mode_hides_debug(capsys):
    """Test that plain mode shows INFO and above only."""
    LoggerManager.plain_mode(level="DEBUG")
    try:
        log.debug("Hidden debug message.")
        captured = capsys.readouterr()
        assert "Hidden debug message." not in captured.err
    finally:
        LoggerManager.plain_mode()
