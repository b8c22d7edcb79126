"""
Test coding standards via black and flake8
"""

from subprocess import Popen, STDOUT

import pytest

CHECKED_PATHS = ["src", "tests"]


@pytest.mark.format
@pytest.mark.parametrize(
    "cmd",
    [["black", "--check", "--diff"], ["flake8"]],
    ids=["black", "flake8"],
)
def test_coding_standards(cmd):
    p = Popen(cmd + CHECKED_PATHS, stderr=STDOUT)
    p.communicate()
    if p.returncode:
        raise RuntimeError(f"{cmd[0]} coding standards failed.")


if __name__ == "__main__":
    pytest.main(["-m", "format", "--no-cov", "-s"])
