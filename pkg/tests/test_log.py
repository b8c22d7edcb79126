import logging

from mirw import log


def test_package_logger():
    logger = log.get_logger()
    assert logger is logging.getLogger("MIRW")
    assert logger is log.get_logger()


def test_init_logger_file(tmp_path):
    log_fn = tmp_path / "log.txt"
    try:
        log.init_logger(log_fn, quiet=True)
        assert log.CONSOLE.level == logging.WARNING
        log.get_logger().debug("written to file only")
    finally:
        log.init_logger()
    assert log.CONSOLE.level == logging.INFO
    assert "written to file only" in log_fn.read_text()
