from __future__ import annotations

import numpy as np
import pytest

# acceptance tests append their PASS/FAIL lines here; printed in the
# terminal summary so they are visible without -s
CRITERION_LINES: list[str] = []


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
