"""Shared fixtures: session-scoped prime tables at the sizes tests reuse,
plus a terminal-summary section echoing the acceptance criterion lines."""

import pytest

from rmflab import ntcore

# test_acceptance appends one "[PASS]/[FAIL] name: detail" line per criterion;
# echoing them in the summary keeps them visible under output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def table_1k():
    return ntcore.build_prime_table(10**3)


@pytest.fixture(scope="session")
def table_10k():
    return ntcore.build_prime_table(10**4)


@pytest.fixture(scope="session")
def table_100k():
    return ntcore.build_prime_table(10**5)


@pytest.fixture(scope="session")
def table_1m():
    return ntcore.build_prime_table(10**6)
