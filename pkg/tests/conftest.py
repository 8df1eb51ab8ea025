from __future__ import annotations

import sys

import pytest

from crl.partitions import parse_partition


@pytest.fixture
def lam():
    """Build a partition from a comma string: ``lam("3,2")``."""
    return parse_partition


def pytest_terminal_summary(terminalreporter):
    results = []
    for name, module in list(sys.modules.items()):
        if name.rpartition(".")[2] == "test_acceptance":
            results = getattr(module, "RESULTS", []) or results
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, line in results:
        terminalreporter.write_line(line)
    passed = sum(ok for _, ok, _ in results)
    terminalreporter.write_line(f"{passed}/{len(results)} acceptance checks passed")
